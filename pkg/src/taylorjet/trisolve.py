"""The lower-triangular Toeplitz system behind the quotient recursion.

A quotient jet y = u/v solves L y = u where L is lower triangular and
Toeplitz with first column equal to v's scaled coefficients.  This module
realizes that system explicitly and solves it by two independent routes:
the forward sweep (the same recursion the jet division kernel runs) and
Cramer's rule over dense determinants.  The two act as mutual oracles;
Cramer is O(n^4) and capped at order 12.

Every solve reports its infinity-norm residual; silent solves are not
allowed here because the whole point of this module is self-diagnosis.
"""

from dataclasses import dataclass, field

import numpy as np

from ._kernels import kernels
from .errors import (
    AlignmentError,
    NonFiniteError,
    SingularMatrixError,
    SizeLimitError,
)

__all__ = [
    "CRAMER_MAX_ORDER",
    "LowerToeplitz",
    "SolveResult",
    "build_quotient_system",
    "back_substitute",
    "cramer_solve",
    "determinant",
]

# Largest system order n the Cramer route accepts (size n+1 <= 13).
CRAMER_MAX_ORDER = 12


@dataclass(frozen=True, eq=False)
class LowerToeplitz:
    """Lower-triangular Toeplitz matrix stored as its first column.

    entry(i, j) = col[i - j] for i >= j, else 0.  The matrix is
    nonsingular exactly when col[0] != 0 (its determinant is
    col[0] ** size).
    """

    col: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.col, dtype=np.float64, order="C")
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise ValueError("col must be a non-empty 1-d sequence")
        if not np.isfinite(arr).all():
            raise ValueError("col entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "col", arr)

    @property
    def size(self):
        return self.col.shape[0]

    def entry(self, i, j):
        n = self.size
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError("index out of range")
        return float(self.col[i - j]) if i >= j else 0.0

    def to_dense(self):
        n = self.size
        m = np.zeros((n, n))
        for i in range(n):
            m[i, : i + 1] = self.col[i::-1]
        return m

    def __repr__(self):
        col = np.array2string(self.col, separator=", ", threshold=8)
        return f"LowerToeplitz(col={col})"


@dataclass(frozen=True)
class SolveResult:
    """Solution vector plus the method tag and the measured residual."""

    solution: np.ndarray = field(repr=False)
    method: str
    residual_inf: float


def build_quotient_system(u, v):
    """System (L, rhs) whose solution is the scaled coefficients of u/v.

    L's first column is v's coefficients; the right-hand side is u's.
    """
    if u.x0 != v.x0:
        raise AlignmentError(
            f"jets expanded at different points ({u.x0} vs {v.x0})"
        )
    if u.order != v.order:
        raise AlignmentError(
            f"jets truncated at different orders ({u.order} vs {v.order})"
        )
    return LowerToeplitz(v.coeffs), np.array(u.coeffs)


def _finish(x, method, col, b):
    if not np.isfinite(x).all():
        raise NonFiniteError(f"{method} produced a non-finite solution")
    # L @ x is exactly the truncated convolution of col with x.
    lx = kernels.conv_trunc(col, x)
    return SolveResult(x, method, float(np.max(np.abs(lx - b))))


def _check_rhs(L, b):
    b = np.ascontiguousarray(b, dtype=np.float64)
    if b.shape != (L.size,):
        raise ValueError(
            f"right-hand side length {b.shape} does not match size {L.size}"
        )
    return b


def back_substitute(L, b):
    """Solve L x = b by the sequential sweep in increasing index order.

    x[r] = (b[r] - sum_{k<r} col[r-k] * x[k]) / col[0]; identical, term
    for term, to the jet division recursion.
    """
    b = _check_rhs(L, b)
    if L.col[0] == 0.0:
        raise SingularMatrixError("triangular system has zero diagonal")
    x = kernels.quotient_series(b, L.col)
    return _finish(x, "back-substitution", L.col, b)


def cramer_solve(L, b):
    """Solve L x = b by Cramer's rule: x[k] = det(L_k) / det(L).

    L_k is L with column k replaced by b; column replacement destroys
    triangularity, so each determinant runs dense partial-pivot
    elimination.  Capped at order CRAMER_MAX_ORDER.
    """
    b = _check_rhs(L, b)
    if L.size > CRAMER_MAX_ORDER + 1:
        raise SizeLimitError(
            f"Cramer oracle capped at order {CRAMER_MAX_ORDER} "
            f"(got size {L.size})"
        )
    if L.col[0] == 0.0:
        raise SingularMatrixError("triangular system has zero diagonal")
    dense = L.to_dense()
    d = kernels.det_partial_pivot(dense)
    x = np.empty(L.size)
    for k in range(L.size):
        replaced = dense.copy()
        replaced[:, k] = b
        x[k] = kernels.det_partial_pivot(replaced) / d
    return _finish(x, "cramer", L.col, b)


def determinant(m):
    """Determinant of a small dense matrix by partial-pivot elimination.

    Singular input returns 0.0; row-swap signs are tracked exactly.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.shape[0] > CRAMER_MAX_ORDER + 1:
        raise SizeLimitError(
            f"determinant capped at size {CRAMER_MAX_ORDER + 1} "
            f"(got {m.shape[0]})"
        )
    if m.shape[0] == 0:
        return 1.0
    return float(kernels.det_partial_pivot(m))
