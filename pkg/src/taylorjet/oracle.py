"""Independent verification paths and the golden corpus.

Two oracles cross-check the jet recursion: repeated symbolic
differentiation (exact rules, evaluated at the point) and central finite
differences with one Richardson step.  Finite differences are capped at
k = 4 -- beyond that, subtractive cancellation makes them meaningless in
double precision -- so the symbolic route is the reference for higher
orders, itself capped at k = 12 by an expression-swell guard.

Corpus files are UTF-8 JSON lines; see docs/corpus.md for the schema.
"""

import json
import math
from dataclasses import dataclass
from importlib import resources

from .errors import ParseError, SizeLimitError, TaylorJetError
from .evaluate import DerivativeBuilder, eval_jet, eval_point
from .expr import parse_text
from .jet import derivatives

__all__ = [
    "SYMBOLIC_MAX_ORDER",
    "FD_MAX_ORDER",
    "FD_DEFAULT_STEP",
    "CorpusCase",
    "OrderCheck",
    "OracleVerdict",
    "symbolic_nth",
    "symbolic_derivatives_upto",
    "finite_difference",
    "run_case",
    "load_corpus",
    "default_corpus_path",
    "deviation_ok",
]

SYMBOLIC_MAX_ORDER = 12
FD_MAX_ORDER = 4
# Step size per difference order; higher orders need a coarser h to stay
# above the cancellation floor.
FD_DEFAULT_STEP = {1: 1e-5, 2: 1e-4, 3: 1e-3, 4: 1e-2}

# Comparisons are relative, except against near-zero oracle values where
# an absolute floor applies.
_NEAR_ZERO = 1e-8
_ABS_FLOOR = 1e-12


def deviation_ok(computed, oracle, rel_tol):
    """Relative comparison with an absolute floor near zero."""
    if abs(oracle) < _NEAR_ZERO:
        return abs(computed - oracle) <= _ABS_FLOOR
    return abs(computed - oracle) <= rel_tol * abs(oracle)


@dataclass(frozen=True)
class CorpusCase:
    """One golden test: an expression, a point, an order, a tolerance."""

    expr_text: str
    x0: float
    order: int
    expected: tuple | None = None
    rel_tol: float = 1e-9
    case_id: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.expected is not None:
            expected = tuple(float(v) for v in self.expected)
            if len(expected) != self.order + 1:
                raise ValueError(
                    f"expected has {len(expected)} entries for order {self.order}"
                )
            object.__setattr__(self, "expected", expected)


@dataclass(frozen=True)
class OrderCheck:
    k: int
    computed: float
    oracle: float
    abs_dev: float
    rel_dev: float
    passed: bool


@dataclass(frozen=True)
class OracleVerdict:
    """Per-order comparison of a computed derivative table to its oracle."""

    case_id: int
    method: str
    checks: tuple = ()
    worst_rel: float = 0.0
    error: str | None = None

    @property
    def passed(self):
        return self.error is None and all(c.passed for c in self.checks)


def symbolic_nth(e, k, x0):
    """k-th derivative at x0 by k exact differentiation passes.

    Capped at k = 12: beyond that the derivative DAG grows too large to
    be a trustworthy oracle.
    """
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k > SYMBOLIC_MAX_ORDER:
        raise SizeLimitError(
            f"symbolic oracle capped at order {SYMBOLIC_MAX_ORDER}"
        )
    builder = DerivativeBuilder()
    for _ in range(k):
        e = builder.derivative(e)
    return eval_point(e, x0)


def symbolic_derivatives_upto(e, kmax, x0):
    """Derivative values for k = 0..kmax, reusing one differentiation chain.

    The evaluation memo persists across steps, so each shared node is
    evaluated once for the whole chain.
    """
    if kmax > SYMBOLIC_MAX_ORDER:
        raise SizeLimitError(
            f"symbolic oracle capped at order {SYMBOLIC_MAX_ORDER}"
        )
    builder = DerivativeBuilder()
    memo = {}
    values = [eval_point(e, x0, _memo=memo)]
    for _ in range(kmax):
        e = builder.derivative(e)
        values.append(eval_point(e, x0, _memo=memo))
    return values


def _central_difference(e, k, x0, h):
    # k-fold central stencil with binomial weights, O(h^2) accurate
    acc = 0.0
    for i in range(k + 1):
        weight = (-1) ** i * math.comb(k, i)
        offset = (k / 2.0 - i) * h
        acc += weight * eval_point(e, x0 + offset)
    return acc / h**k


def finite_difference(e, k, x0, h=None):
    """Central-difference estimate of the k-th derivative at x0.

    Uses the binomial-weight central stencil at steps h and h/2 and one
    Richardson extrapolation, upgrading the O(h^2) error to O(h^4).
    Only k = 1..4 are supported; h defaults per k (FD_DEFAULT_STEP).
    """
    if not 1 <= k <= FD_MAX_ORDER:
        raise ValueError(f"finite differences support k = 1..{FD_MAX_ORDER}")
    if h is None:
        h = FD_DEFAULT_STEP[k]
    if h <= 0:
        raise ValueError("step size must be positive")
    coarse = _central_difference(e, k, x0, h)
    fine = _central_difference(e, k, x0, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def run_case(case, method="recursion"):
    """Evaluate one corpus case and compare against its oracle.

    The derivative table is computed by the chosen division route; the
    reference is the frozen ``expected`` array when present, else the
    symbolic oracle.  Computation errors become a failing verdict (with
    the message recorded), never an exception.
    """
    if method not in ("recursion", "cramer", "reciprocal"):
        raise ValueError(f"unknown method {method!r}")
    try:
        tree = parse_text(case.expr_text)
        jet = eval_jet(tree, case.x0, case.order, method=method)
        computed = derivatives(jet)
        if case.expected is not None:
            oracle = list(case.expected)
        else:
            oracle = symbolic_derivatives_upto(tree, case.order, case.x0)
    except (ParseError, TaylorJetError) as err:
        return OracleVerdict(case.case_id, method, error=str(err))
    checks = []
    worst = 0.0
    for k, (got, want) in enumerate(zip(computed, oracle)):
        abs_dev = abs(got - want)
        rel_dev = abs_dev / abs(want) if want != 0.0 else math.inf
        if abs_dev == 0.0:
            rel_dev = 0.0
        ok = deviation_ok(got, want, case.rel_tol)
        if ok and abs(want) >= _NEAR_ZERO:
            worst = max(worst, rel_dev)
        checks.append(OrderCheck(k, float(got), float(want), abs_dev, rel_dev, ok))
    return OracleVerdict(case.case_id, method, tuple(checks), worst)


_CORPUS_KEYS = {"expr", "x0", "order", "expected", "rel_tol"}


def load_corpus(path):
    """Read a JSON-lines corpus file into CorpusCase records.

    Blank lines are skipped.  Unknown keys, malformed JSON and
    inconsistent fields raise ValueError naming the line.
    """
    cases = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                raise ValueError(f"{path}:{lineno}: bad JSON: {err}") from None
            if not isinstance(obj, dict):
                raise ValueError(f"{path}:{lineno}: expected an object")
            unknown = set(obj) - _CORPUS_KEYS
            if unknown:
                raise ValueError(
                    f"{path}:{lineno}: unknown keys {sorted(unknown)}"
                )
            for key in ("expr", "x0", "order"):
                if key not in obj:
                    raise ValueError(f"{path}:{lineno}: missing key {key!r}")
            try:
                case = CorpusCase(
                    expr_text=obj["expr"],
                    x0=float(obj["x0"]),
                    order=int(obj["order"]),
                    expected=obj.get("expected"),
                    rel_tol=float(obj.get("rel_tol", 1e-9)),
                    case_id=lineno,
                )
            except (TypeError, ValueError) as err:
                raise ValueError(f"{path}:{lineno}: {err}") from None
            cases.append(case)
    return cases


def default_corpus_path():
    """Filesystem path of the corpus shipped inside the package."""
    return str(resources.files("taylorjet").joinpath("data/corpus.jsonl"))
