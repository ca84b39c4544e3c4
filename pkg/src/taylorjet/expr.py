"""One-variable expression trees: lexing, parsing and printing.

Grammar (precedence climbing, tightest first):

    ^        integer-constant exponent, right associative
    unary -  binds looser than ^, so "-x^2" is -(x^2)
    * /      left associative
    + -      left associative

Atoms are decimal number literals, the variable ``x``, parenthesized
expressions, and calls of the fixed function set sin, cos, exp, ln, sqrt.
Division nodes are kept exactly as written; nothing rewrites a/b into a
reciprocal product.  The full grammar is spelled out in docs/grammar.md.
"""

import re
from dataclasses import dataclass, field

from .errors import ParseError

__all__ = [
    "Token",
    "Const",
    "Var",
    "Unary",
    "Binary",
    "FUNCTIONS",
    "tokenize",
    "parse",
    "parse_text",
    "to_text",
    "structural_eq",
    "normal_form",
]

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPERATORS = "+-*/^"


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "identifier" | "operator" | "paren" | "end"
    text: str
    position: int  # byte offset into the source


# --- expression nodes ------------------------------------------------------
#
# Nodes compare by identity (derivative machinery shares subtrees as a DAG
# and keys caches on id); use structural_eq for tree comparison.  ``pos``
# is the source byte offset, or -1 for synthesized nodes.


@dataclass(eq=False)
class Const:
    value: float
    pos: int = field(default=-1, compare=False)


@dataclass(eq=False)
class Var:
    pos: int = field(default=-1, compare=False)


@dataclass(eq=False)
class Unary:
    op: str  # "neg" or a FUNCTIONS tag
    child: object
    pos: int = field(default=-1, compare=False)


@dataclass(eq=False)
class Binary:
    op: str  # one of + - * / ^
    left: object
    right: object
    pos: int = field(default=-1, compare=False)


def structural_eq(a, b):
    """Tree equality by shape and values, ignoring source positions."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Const):
        return a.value == b.value
    if isinstance(a, Var):
        return True
    if isinstance(a, Unary):
        return a.op == b.op and structural_eq(a.child, b.child)
    return (
        a.op == b.op
        and structural_eq(a.left, b.left)
        and structural_eq(a.right, b.right)
    )


def tokenize(text):
    """Lex the source into tokens; positions are byte offsets.

    Nonempty input gets a trailing "end" sentinel carrying the offset one
    past the last byte; empty (or all-whitespace) input yields no tokens.
    Unknown characters raise ParseError at their byte offset.
    """
    tokens = []
    i = 0
    bpos = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            bpos += len(ch.encode("utf-8"))
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER.match(text, i)
            if not m:
                raise ParseError(f"malformed number at byte {bpos}", bpos)
            tokens.append(Token("number", m.group(), bpos))
            bpos += m.end() - i
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT.match(text, i)
            tokens.append(Token("identifier", m.group(), bpos))
            bpos += m.end() - i
            i = m.end()
            continue
        if ch in _OPERATORS:
            tokens.append(Token("operator", ch, bpos))
            i += 1
            bpos += 1
            continue
        if ch in "()":
            tokens.append(Token("paren", ch, bpos))
            i += 1
            bpos += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at byte {bpos}", bpos)
    if tokens:
        tokens.append(Token("end", "", bpos))
    return tokens


_BINARY_PREC = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY_PREC = 30
_RIGHT_ASSOC = {"^"}


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{message} at byte {tok.position}", tok.position)

    def expect(self, kind, text):
        tok = self.peek()
        if tok.kind != kind or tok.text != text:
            got = tok.text or "end of input"
            self.fail(f"expected {text!r}, found {got!r}")
        return self.advance()

    def parse_expression(self, min_prec=0):
        left = self.parse_prefix()
        while True:
            tok = self.peek()
            if tok.kind != "operator":
                break
            prec = _BINARY_PREC[tok.text]
            if prec < min_prec:
                break
            self.advance()
            if tok.text in _RIGHT_ASSOC:
                right = self.parse_expression(prec)
            else:
                right = self.parse_expression(prec + 1)
            if tok.text == "^":
                right = self.validate_exponent(right, tok)
            left = Binary(tok.text, left, right, pos=tok.position)
        return left

    def parse_prefix(self):
        tok = self.peek()
        if tok.kind == "operator" and tok.text == "-":
            self.advance()
            child = self.parse_expression(_UNARY_PREC)
            return Unary("neg", child, pos=tok.position)
        return self.parse_atom()

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text), pos=tok.position)
        if tok.kind == "identifier":
            self.advance()
            if tok.text == "x":
                return Var(pos=tok.position)
            if tok.text in FUNCTIONS:
                self.expect("paren", "(")
                arg = self.parse_expression(0)
                self.expect("paren", ")")
                return Unary(tok.text, arg, pos=tok.position)
            self.fail(f"unknown identifier {tok.text!r}", tok)
        if tok.kind == "paren" and tok.text == "(":
            self.advance()
            inner = self.parse_expression(0)
            self.expect("paren", ")")
            return inner
        got = tok.text or "end of input"
        self.fail(f"expected a value, found {got!r}")

    def validate_exponent(self, right, op_tok):
        """Exponents must be integer constants, optionally negated."""
        node = right
        negate = False
        if isinstance(node, Unary) and node.op == "neg":
            negate = True
            node = node.child
        if isinstance(node, Const) and float(node.value).is_integer():
            value = -node.value if negate else node.value
            return Const(float(value), pos=node.pos)
        self.fail("exponent must be an integer constant", op_tok)


def parse(tokens):
    """Parse a token sequence (as from tokenize) into an expression tree."""
    if not tokens:
        raise ParseError("empty expression at byte 0", 0)
    p = _Parser(tokens)
    tree = p.parse_expression(0)
    tok = p.peek()
    if tok.kind != "end":
        p.fail(f"unexpected {tok.text!r}")
    return tree


def parse_text(text):
    """Tokenize and parse in one step."""
    return parse(tokenize(text))


def _prec(e):
    if isinstance(e, Const):
        # negative literals render with a leading minus, so they bind
        # like a unary minus
        return 100 if e.value >= 0 else _UNARY_PREC
    if isinstance(e, Var):
        return 100
    if isinstance(e, Unary):
        return 100 if e.op != "neg" else _UNARY_PREC
    return _BINARY_PREC[e.op]


def _maybe_paren(text, need):
    return f"({text})" if need else text


def to_text(e):
    """Render a tree with minimal parentheses.

    Round trip: parse(to_text(e)) is structurally equal to normal_form(e).
    """
    if isinstance(e, Const):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Unary):
        if e.op == "neg":
            child = to_text(e.child)
            return "-" + _maybe_paren(child, _prec(e.child) < _UNARY_PREC)
        return f"{e.op}({to_text(e.child)})"
    op = e.op
    prec = _BINARY_PREC[op]
    if op == "^":
        left = _maybe_paren(to_text(e.left), _prec(e.left) <= prec)
        return f"{left}^{to_text(e.right)}"
    left = _maybe_paren(to_text(e.left), _prec(e.left) < prec)
    right = _maybe_paren(to_text(e.right), _prec(e.right) <= prec)
    return f"{left}{op}{right}"


def normal_form(e):
    """Rewrite a tree into the shape the parser itself would produce.

    The grammar has no negative literals, so Const(-c) becomes
    neg(Const(c)) except in exponent position, where the parser folds the
    sign into the constant.
    """
    if isinstance(e, Const):
        if e.value < 0:
            return Unary("neg", Const(-e.value))
        return Const(e.value)
    if isinstance(e, Var):
        return Var()
    if isinstance(e, Unary):
        return Unary(e.op, normal_form(e.child))
    if e.op == "^" and isinstance(e.right, Const):
        return Binary("^", normal_form(e.left), Const(e.right.value))
    return Binary(e.op, normal_form(e.left), normal_form(e.right))
