"""Univariate truncated-Taylor (jet) arithmetic and derivative tooling.

The package computes the first n derivatives of one-variable expressions
at a point by propagating scaled Taylor coefficients (c[j] = y_j/j!)
through the expression tree.  Division uses the back-substitution sweep
of the lower-triangular Toeplitz system that links quotient coefficients
to those of numerator and denominator; the same system can be solved by
Cramer's rule as a slow independent oracle, and symbolic/finite-difference
oracles cross-check the whole pipeline.

See README.md for the CLI (``deriv eval | check | bench``) and
docs/ for the expression grammar, corpus format and JSON schemas.
"""

from ._kernels import ENV_VAR as BACKEND_ENV_VAR
from ._kernels import active_backend, available_backends
from .errors import (
    AlignmentError,
    ConditioningWarning,
    DomainError,
    NonFiniteError,
    ParseError,
    PoleError,
    SingularMatrixError,
    SizeLimitError,
    TaylorJetError,
)
from .evaluate import (
    DIVISION_METHODS,
    eval_jet,
    eval_point,
    symbolic_derivative,
)
from .expr import (
    Binary,
    Const,
    FUNCTIONS,
    Token,
    Unary,
    Var,
    parse,
    parse_text,
    structural_eq,
    to_text,
    tokenize,
)
from .jet import (
    CONDITIONING_THRESHOLD,
    ELEMENTARY_TAGS,
    POLE_THRESHOLD,
    Jet,
    derivatives,
    div,
    jet_const,
    jet_var,
    lift_elementary,
    linear_combine,
    mul,
    pow_int,
    reciprocal,
    truncate,
)
from .oracle import (
    CorpusCase,
    OracleVerdict,
    OrderCheck,
    default_corpus_path,
    finite_difference,
    load_corpus,
    run_case,
    symbolic_nth,
)
from .trisolve import (
    CRAMER_MAX_ORDER,
    LowerToeplitz,
    SolveResult,
    back_substitute,
    build_quotient_system,
    cramer_solve,
    determinant,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BACKEND_ENV_VAR",
    "Binary",
    "CONDITIONING_THRESHOLD",
    "CRAMER_MAX_ORDER",
    "ConditioningWarning",
    "Const",
    "CorpusCase",
    "DIVISION_METHODS",
    "DomainError",
    "ELEMENTARY_TAGS",
    "FUNCTIONS",
    "Jet",
    "LowerToeplitz",
    "NonFiniteError",
    "OracleVerdict",
    "OrderCheck",
    "POLE_THRESHOLD",
    "ParseError",
    "PoleError",
    "SingularMatrixError",
    "SizeLimitError",
    "SolveResult",
    "TaylorJetError",
    "Token",
    "Unary",
    "Var",
    "active_backend",
    "available_backends",
    "back_substitute",
    "build_quotient_system",
    "cramer_solve",
    "default_corpus_path",
    "derivatives",
    "determinant",
    "div",
    "eval_jet",
    "eval_point",
    "finite_difference",
    "jet_const",
    "jet_var",
    "lift_elementary",
    "linear_combine",
    "load_corpus",
    "mul",
    "parse",
    "parse_text",
    "pow_int",
    "reciprocal",
    "run_case",
    "structural_eq",
    "symbolic_derivative",
    "symbolic_nth",
    "to_text",
    "tokenize",
    "truncate",
]
