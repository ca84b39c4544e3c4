"""Evaluating expression trees: over points, over jets, and symbolically.

Jet evaluation dispatches each division node to one of three routes with
identical contracts:

    recursion   the quotient-series sweep (default production path)
    cramer      build the triangular system, solve by Cramer's rule
    reciprocal  multiply the numerator by the reciprocal jet

Symbolic differentiation applies the classical rules once per call,
producing a DAG that shares subtrees; repeated application (see
:mod:`taylorjet.oracle`) reuses one builder so structurally identical
nodes are created only once.  Simplification is deliberately minimal:
only the identity rules 0*e, e+0, e*1, 0/e (and mirrors, plus e-0).
"""

import math

from . import jet as jetops
from .errors import (
    DomainError,
    NonFiniteError,
    PoleError,
    SizeLimitError,
    TaylorJetError,
)
from .expr import Binary, Const, Unary, Var
from .trisolve import (
    CRAMER_MAX_ORDER,
    back_substitute,
    build_quotient_system,
    cramer_solve,
)

__all__ = [
    "DIVISION_METHODS",
    "eval_point",
    "eval_jet",
    "symbolic_derivative",
    "DerivativeBuilder",
]

DIVISION_METHODS = ("recursion", "cramer", "reciprocal")


def _annotate(err, node):
    """Re-raise a jet error with the source position of the node."""
    if err.position is None and node.pos >= 0:
        raise type(err)(f"{err} (at byte {node.pos})", position=node.pos) from err
    raise err


def eval_point(e, x, _memo=None):
    """Plain numeric evaluation of a tree at the point x.

    Results are memoized per node identity, so shared-subtree DAGs (as
    produced by repeated differentiation) cost one visit per unique node.
    Domain violations raise DomainError/PoleError; non-finite results
    raise NonFiniteError.
    """
    memo = {} if _memo is None else _memo
    return _eval_point(e, float(x), memo)


def _eval_point(e, x, memo):
    key = id(e)
    got = memo.get(key)
    if got is not None:
        return got
    if isinstance(e, Const):
        val = e.value
    elif isinstance(e, Var):
        val = x
    elif isinstance(e, Unary):
        child = _eval_point(e.child, x, memo)
        val = _apply_unary(e, child)
    else:
        val = _apply_binary(e, x, memo)
    if not math.isfinite(val):
        raise NonFiniteError("evaluation produced a non-finite value",
                             position=e.pos if e.pos >= 0 else None)
    memo[key] = val
    return val


def _apply_unary(e, child):
    op = e.op
    pos = e.pos if e.pos >= 0 else None
    if op == "neg":
        return -child
    if op == "sin":
        return math.sin(child)
    if op == "cos":
        return math.cos(child)
    if op == "exp":
        try:
            return math.exp(child)
        except OverflowError:
            raise NonFiniteError("exp overflow", position=pos) from None
    if op == "ln":
        if child <= 0.0:
            raise DomainError("ln of a non-positive value", position=pos)
        return math.log(child)
    if op == "sqrt":
        if child < 0.0:
            raise DomainError("sqrt of a negative value", position=pos)
        return math.sqrt(child)
    raise ValueError(f"unknown unary op {op!r}")


def _apply_binary(e, x, memo):
    left = _eval_point(e.left, x, memo)
    right = _eval_point(e.right, x, memo)
    op = e.op
    pos = e.pos if e.pos >= 0 else None
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0.0:
            raise PoleError("division by zero", position=pos)
        return left / right
    if op == "^":
        if not float(right).is_integer():
            raise DomainError("non-integer exponent", position=pos)
        try:
            return left ** int(right)
        except ZeroDivisionError:
            raise PoleError("zero base with negative exponent", position=pos) from None
        except OverflowError:
            raise NonFiniteError("power overflow", position=pos) from None
    raise ValueError(f"unknown binary op {op!r}")


def eval_jet(e, x0, n, method="recursion", compensated=False):
    """Jet of the expression at x0, truncated at order n.

    ``method`` picks the route for division nodes (see DIVISION_METHODS);
    everything else evaluates through the jet-arithmetic operations.
    Errors raised inside an operation are re-raised with the byte offset
    of the offending node attached.
    """
    if method not in DIVISION_METHODS:
        raise ValueError(f"unknown division method {method!r}")
    if method == "cramer" and n > CRAMER_MAX_ORDER:
        raise SizeLimitError(
            f"cramer division is capped at order {CRAMER_MAX_ORDER}"
        )
    return _eval_jet(e, float(x0), n, method, compensated, {})


def _eval_jet(e, x0, n, method, compensated, memo):
    key = id(e)
    got = memo.get(key)
    if got is not None:
        return got
    try:
        if isinstance(e, Const):
            out = jetops.jet_const(e.value, x0, n)
        elif isinstance(e, Var):
            out = jetops.jet_var(x0, n)
        elif isinstance(e, Unary):
            child = _eval_jet(e.child, x0, n, method, compensated, memo)
            if e.op == "neg":
                out = jetops.linear_combine(child, child, -1.0, 0.0)
            else:
                out = jetops.lift_elementary(e.op, child)
        elif e.op == "/":
            u = _eval_jet(e.left, x0, n, method, compensated, memo)
            v = _eval_jet(e.right, x0, n, method, compensated, memo)
            out = _divide(u, v, method, compensated)
        else:
            left = _eval_jet(e.left, x0, n, method, compensated, memo)
            if e.op == "^":
                out = jetops.pow_int(left, int(e.right.value))
            else:
                right = _eval_jet(e.right, x0, n, method, compensated, memo)
                if e.op == "+":
                    out = jetops.linear_combine(left, right, 1.0, 1.0)
                elif e.op == "-":
                    out = jetops.linear_combine(left, right, 1.0, -1.0)
                else:
                    out = jetops.mul(left, right, compensated=compensated)
    except TaylorJetError as err:
        _annotate(err, e)
    memo[key] = out
    return out


def _divide(u, v, method, compensated):
    if method == "recursion":
        return jetops.div(u, v, compensated=compensated)
    if method == "reciprocal":
        return jetops.mul(
            u, jetops.reciprocal(v, compensated=compensated),
            compensated=compensated,
        )
    # cramer: realize the triangular system and solve it densely
    if abs(float(v.coeffs[0])) <= jetops.POLE_THRESHOLD:
        raise PoleError("denominator vanishes at the expansion point")
    system, rhs = build_quotient_system(u, v)
    result = cramer_solve(system, rhs)
    return jetops.Jet(u.x0, result.solution)


def quotient_by_back_substitution(u, v):
    """Quotient jet via the explicit triangular system (oracle path).

    Bitwise identical to jetops.div because both run the same kernel.
    """
    system, rhs = build_quotient_system(u, v)
    return jetops.Jet(u.x0, back_substitute(system, rhs).solution)


# --- symbolic differentiation ----------------------------------------------


class DerivativeBuilder:
    """Builds derivative trees with hash-consing and light simplification.

    One builder can be reused across repeated differentiation of the same
    expression; the cons table then unifies structurally identical nodes
    across steps, which keeps the k-th derivative DAG polynomially sized
    instead of exponentially.
    """

    def __init__(self):
        self._cons = {}
        self._var = Var()

    def const(self, value):
        key = ("const", value)
        node = self._cons.get(key)
        if node is None:
            node = Const(value)
            self._cons[key] = node
        return node

    def _node(self, kind, op, a, b=None):
        key = (kind, op, id(a), id(b))
        node = self._cons.get(key)
        if node is None:
            node = Unary(op, a) if kind == "u" else Binary(op, a, b)
            self._cons[key] = node
        return node

    def unary(self, op, child):
        return self._node("u", op, child)

    def add(self, a, b):
        if _is_const(a, 0.0):
            return b
        if _is_const(b, 0.0):
            return a
        return self._node("b", "+", a, b)

    def sub(self, a, b):
        if _is_const(b, 0.0):
            return a
        return self._node("b", "-", a, b)

    def mul(self, a, b):
        if _is_const(a, 0.0) or _is_const(b, 0.0):
            return self.const(0.0)
        if _is_const(a, 1.0):
            return b
        if _is_const(b, 1.0):
            return a
        return self._node("b", "*", a, b)

    def div(self, a, b):
        if _is_const(a, 0.0):
            return self.const(0.0)
        return self._node("b", "/", a, b)

    def pow(self, base, exponent):
        return self._node("b", "^", base, self.const(float(exponent)))

    def derivative(self, e):
        """One differentiation pass over e (fresh memo, shared cons)."""
        return self._derivative(e, {})

    def _derivative(self, e, memo):
        key = id(e)
        got = memo.get(key)
        if got is not None:
            return got
        out = self._rule(e, memo)
        memo[key] = out
        return out

    def _rule(self, e, memo):
        if isinstance(e, Const):
            return self.const(0.0)
        if isinstance(e, Var):
            return self.const(1.0)
        if isinstance(e, Unary):
            du = self._derivative(e.child, memo)
            op = e.op
            if op == "neg":
                return self.unary("neg", du)
            if op == "sin":
                return self.mul(self.unary("cos", e.child), du)
            if op == "cos":
                return self.mul(self.unary("neg", self.unary("sin", e.child)), du)
            if op == "exp":
                return self.mul(e, du)
            if op == "ln":
                return self.div(du, e.child)
            if op == "sqrt":
                return self.div(du, self.mul(self.const(2.0), e))
            raise ValueError(f"unknown unary op {op!r}")
        op = e.op
        if op == "^":
            k = int(e.right.value)
            du = self._derivative(e.left, memo)
            if k == 0:
                return self.const(0.0)
            if k == 1:
                return du
            base = e.left if k == 2 else self.pow(e.left, k - 1)
            return self.mul(self.mul(self.const(float(k)), base), du)
        da = self._derivative(e.left, memo)
        db = self._derivative(e.right, memo)
        if op == "+":
            return self.add(da, db)
        if op == "-":
            return self.sub(da, db)
        if op == "*":
            return self.add(self.mul(da, e.right), self.mul(e.left, db))
        if op == "/":
            # classical quotient rule: (u'v - uv') / v^2
            num = self.sub(self.mul(da, e.right), self.mul(e.left, db))
            return self.div(num, self.pow(e.right, 2))
        raise ValueError(f"unknown binary op {op!r}")


def _is_const(e, value):
    return isinstance(e, Const) and e.value == value


def symbolic_derivative(e):
    """Exact first-derivative tree of e, lightly simplified."""
    return DerivativeBuilder().derivative(e)
