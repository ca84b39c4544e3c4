"""Vectorized numpy implementations of the numeric kernels.

This is the fallback backend: no JIT, inner sums go through BLAS dot
products.  Results agree with the numba backend to roundoff (the sums are
reassociated by BLAS), except for the Kahan variants, which use the same
sequential loops in both backends and match bitwise.
"""

import math

import numpy as np

NAME = "numpy"


def conv_trunc(a, b):
    """Truncated Cauchy product: out[r] = sum_{j<=r} a[j]*b[r-j]."""
    return np.convolve(a, b)[: a.shape[0]]


def conv_trunc_kahan(a, b):
    """conv_trunc with Kahan-compensated inner sums."""
    n = a.shape[0]
    out = np.empty(n)
    for r in range(n):
        acc = 0.0
        comp = 0.0
        for j in range(r + 1):
            term = a[j] * b[r - j] - comp
            total = acc + term
            comp = (total - acc) - term
            acc = total
        out[r] = acc
    return out


def quotient_series(u, v):
    """Coefficients of u/v by the forward sweep of the triangular system.

    y[r] = (u[r] - sum_{j=1..r} v[r+1-j]*y[j-1]) / v[0], r increasing.
    """
    n = u.shape[0]
    y = np.empty(n)
    v0 = v[0]
    y[0] = u[0] / v0
    for r in range(1, n):
        acc = np.dot(v[r:0:-1], y[:r])
        y[r] = (u[r] - acc) / v0
    return y


def quotient_series_kahan(u, v):
    """quotient_series with a Kahan-compensated inner sum."""
    n = u.shape[0]
    y = np.empty(n)
    v0 = v[0]
    for r in range(n):
        acc = 0.0
        comp = 0.0
        for j in range(1, r + 1):
            term = v[r + 1 - j] * y[j - 1] - comp
            total = acc + term
            comp = (total - acc) - term
            acc = total
        y[r] = (u[r] - acc) / v0
    return y


def exp_series(v):
    """exp of a series: e[r] = (1/r) * sum_{j=1..r} j*v[j]*e[r-j]."""
    n = v.shape[0]
    e = np.empty(n)
    e[0] = math.exp(v[0])
    jv = np.arange(n) * v
    for r in range(1, n):
        e[r] = np.dot(jv[1 : r + 1], e[r - 1 :: -1]) / r
    return e


def log_series(v):
    """ln of a series: l[r] = (v[r] - (1/r)*sum_{j<r} j*l[j]*v[r-j]) / v[0]."""
    n = v.shape[0]
    ln = np.empty(n)
    ln[0] = math.log(v[0])
    v0 = v[0]
    for r in range(1, n):
        jl = np.arange(1, r) * ln[1:r]
        acc = np.dot(jl, v[r - 1 : 0 : -1]) / r if r > 1 else 0.0
        ln[r] = (v[r] - acc) / v0
    return ln


def sin_cos_series(v):
    """sin and cos of a series, computed as the usual coupled pair."""
    n = v.shape[0]
    s = np.empty(n)
    c = np.empty(n)
    s[0] = math.sin(v[0])
    c[0] = math.cos(v[0])
    jv = np.arange(n) * v
    for r in range(1, n):
        s[r] = np.dot(jv[1 : r + 1], c[r - 1 :: -1]) / r
        c[r] = -np.dot(jv[1 : r + 1], s[r - 1 :: -1]) / r
    return s, c


def sqrt_series(v):
    """sqrt of a series: q[r] = (v[r] - sum_{0<j<r} q[j]*q[r-j]) / (2*q[0])."""
    n = v.shape[0]
    q = np.empty(n)
    q[0] = math.sqrt(v[0])
    for r in range(1, n):
        acc = np.dot(q[1:r], q[r - 1 : 0 : -1]) if r > 1 else 0.0
        q[r] = (v[r] - acc) / (2.0 * q[0])
    return q


def det_partial_pivot(m):
    """Determinant by Gaussian elimination with partial pivoting.

    Returns 0.0 for singular input; the sign of row swaps is tracked
    exactly.
    """
    a = np.array(m, dtype=np.float64)
    n = a.shape[0]
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            return 0.0
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k] / a[k, k], a[k, k + 1 :])
    d = sign
    for k in range(n):
        d *= a[k, k]
    return d
