"""Truncated Taylor expansions ("jets") and arithmetic on them.

A jet stores the scaled coefficients c[j] = y_j(x0)/j! of a function's
expansion at x0, truncated at a fixed order.  In these variables the
product of two functions is a finite convolution and the quotient is the
forward sweep of a lower-triangular Toeplitz system; both kernels live in
:mod:`taylorjet._kernels`.

Jets are immutable values and every operation is a pure function, so they
are safe to share across threads.  Operations never broadcast mismatched
expansion points or orders (that raises :class:`AlignmentError`), and any
operation whose result would contain NaN or infinity raises
:class:`NonFiniteError` instead of storing it.
"""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from ._kernels import kernels
from .errors import (
    AlignmentError,
    ConditioningWarning,
    DomainError,
    NonFiniteError,
    PoleError,
)

__all__ = [
    "Jet",
    "POLE_THRESHOLD",
    "CONDITIONING_THRESHOLD",
    "ELEMENTARY_TAGS",
    "jet_const",
    "jet_var",
    "linear_combine",
    "mul",
    "div",
    "reciprocal",
    "pow_int",
    "derivatives",
    "lift_elementary",
    "truncate",
]

# Division errors out only at this subnormal guard; above it, small
# denominators are allowed but trigger a ConditioningWarning.
POLE_THRESHOLD = 1e-300
CONDITIONING_THRESHOLD = 1e-8

ELEMENTARY_TAGS = ("exp", "ln", "sin", "cos", "sqrt", "pow-int")


def _as_coeffs(values):
    arr = np.array(values, dtype=np.float64, order="C")
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise ValueError("coefficients must be a non-empty 1-d sequence")
    if not np.isfinite(arr).all():
        raise NonFiniteError("jet coefficients must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Jet:
    """Scaled Taylor coefficients of one function at one expansion point.

    ``coeffs[j]`` is the j-th derivative divided by j!; ``coeffs[0]`` is
    the function value at ``x0``.  Length is always ``order + 1``.
    """

    x0: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        x0 = float(self.x0)
        if not math.isfinite(x0):
            raise NonFiniteError("expansion point must be finite")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def order(self):
        return self.coeffs.shape[0] - 1

    @property
    def value(self):
        """Function value at the expansion point (the order-0 coefficient)."""
        return float(self.coeffs[0])

    def __repr__(self):
        coeffs = np.array2string(self.coeffs, separator=", ", threshold=8)
        return f"Jet(x0={self.x0}, coeffs={coeffs})"

    # Operator sugar.  Scalars are promoted to constant jets at the same
    # point and order; jet operands must already be aligned.
    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, Real):
            return jet_const(float(other), self.x0, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combine(self, other, 1.0, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combine(self, other, 1.0, -1.0)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combine(other, self, 1.0, -1.0)

    def __neg__(self):
        return linear_combine(self, self, -1.0, 0.0)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return div(other, self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        return pow_int(self, exponent)


def _check_aligned(a, b):
    if a.x0 != b.x0:
        raise AlignmentError(
            f"jets expanded at different points ({a.x0} vs {b.x0})"
        )
    if a.order != b.order:
        raise AlignmentError(
            f"jets truncated at different orders ({a.order} vs {b.order})"
        )


def _finish(x0, raw, what):
    if not np.isfinite(raw).all():
        raise NonFiniteError(f"{what} produced a non-finite coefficient")
    return Jet(x0, raw)


def jet_const(c, x0, n):
    """Jet of the constant function c, truncated at order n."""
    if n < 0:
        raise ValueError("order must be non-negative")
    coeffs = np.zeros(n + 1)
    coeffs[0] = c
    return Jet(x0, coeffs)


def jet_var(x0, n):
    """Jet of the identity f(x) = x at x0, truncated at order n."""
    if n < 0:
        raise ValueError("order must be non-negative")
    coeffs = np.zeros(n + 1)
    coeffs[0] = x0
    if n >= 1:
        coeffs[1] = 1.0
    return Jet(x0, coeffs)


def linear_combine(a, b, alpha, beta):
    """Componentwise alpha*a + beta*b; covers add, subtract and scale."""
    _check_aligned(a, b)
    raw = alpha * a.coeffs + beta * b.coeffs
    return _finish(a.x0, raw, "linear combination")


def mul(u, v, compensated=False):
    """Product jet via the truncated Cauchy convolution.

    The operands are put in a canonical order (by coefficient bytes)
    before convolving, so mul(u, v) and mul(v, u) run the identical
    summation and agree bitwise.
    """
    _check_aligned(u, v)
    a, b = u.coeffs, v.coeffs
    if b.tobytes() < a.tobytes():
        a, b = b, a
    kernel = kernels.conv_trunc_kahan if compensated else kernels.conv_trunc
    return _finish(u.x0, kernel(a, b), "multiplication")


def div(u, v, compensated=False):
    """Quotient jet y = u/v via the forward back-substitution sweep.

    y[r] = (u[r] - sum_{j=1..r} v[r+1-j]*y[j-1]) / v[0] for r = 0..n.
    Raises PoleError when |v[0]| is at the subnormal guard, and warns when
    it is merely small (|v[0]| < 1e-8).
    """
    _check_aligned(u, v)
    v0 = abs(float(v.coeffs[0]))
    if v0 <= POLE_THRESHOLD:
        raise PoleError("denominator vanishes at the expansion point")
    if v0 < CONDITIONING_THRESHOLD:
        warnings.warn(
            f"denominator constant term is {v.coeffs[0]:.3e}; quotient "
            "coefficients may be inaccurate",
            ConditioningWarning,
            stacklevel=2,
        )
    kernel = (
        kernels.quotient_series_kahan if compensated else kernels.quotient_series
    )
    return _finish(u.x0, kernel(u.coeffs, v.coeffs), "division")


def reciprocal(v, compensated=False):
    """Jet of 1/v: the quotient with the constant-one numerator."""
    return div(jet_const(1.0, v.x0, v.order), v, compensated=compensated)


def pow_int(v, exponent):
    """Integer power of a jet by binary exponentiation.

    Negative exponents go through ``reciprocal`` and therefore require a
    nonzero constant term; ``v ** 0`` is the constant-one jet.
    """
    if not isinstance(exponent, int):
        raise TypeError("exponent must be an integer")
    if exponent == 0:
        return jet_const(1.0, v.x0, v.order)
    if exponent < 0:
        return reciprocal(pow_int(v, -exponent))
    result = None
    base = v
    k = exponent
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def derivatives(j):
    """Unscale a jet back to raw derivative values: result[k] = k! * c[k].

    The products are computed exactly (integer factorial times the exact
    binary fraction of the coefficient) and rounded once, so the result is
    correctly rounded; values outside the double range raise
    NonFiniteError.
    """
    out = np.empty(j.order + 1)
    factorial = 1
    for k, c in enumerate(j.coeffs):
        if k > 1:
            factorial *= k
        try:
            out[k] = float(Fraction(float(c)) * factorial)
        except OverflowError:
            raise NonFiniteError(
                f"derivative of order {k} overflows double precision"
            ) from None
    return out


def truncate(j, m):
    """Drop coefficients above order m (m must not exceed j.order)."""
    if m < 0 or m > j.order:
        raise ValueError("truncation order must be in [0, order]")
    return Jet(j.x0, j.coeffs[: m + 1])


def _lift_exp(v):
    return kernels.exp_series(v.coeffs)


def _lift_ln(v):
    if v.coeffs[0] <= 0.0:
        raise DomainError("ln requires a positive value at the expansion point")
    return kernels.log_series(v.coeffs)


def _lift_sin(v):
    return kernels.sin_cos_series(v.coeffs)[0]


def _lift_cos(v):
    return kernels.sin_cos_series(v.coeffs)[1]


def _lift_sqrt(v):
    if v.coeffs[0] <= 0.0:
        raise DomainError(
            "sqrt requires a positive value at the expansion point"
        )
    return kernels.sqrt_series(v.coeffs)


_LIFTS = {
    "exp": _lift_exp,
    "ln": _lift_ln,
    "sin": _lift_sin,
    "cos": _lift_cos,
    "sqrt": _lift_sqrt,
}


def lift_elementary(tag, v, exponent=None):
    """Jet of f(v) for an elementary f named by tag.

    Tags: exp, ln, sin, cos, sqrt, pow-int ("pow-int" needs ``exponent``).
    sin and cos are computed as a coupled pair; each tag checks its domain
    at the expansion point and raises DomainError when violated.
    """
    if tag == "pow-int":
        if exponent is None:
            raise ValueError("pow-int lift requires an exponent")
        return pow_int(v, exponent)
    try:
        lift = _LIFTS[tag]
    except KeyError:
        raise ValueError(f"unknown elementary tag {tag!r}") from None
    if exponent is not None:
        raise ValueError(f"{tag} lift takes no exponent")
    return _finish(v.x0, lift(v), tag)
