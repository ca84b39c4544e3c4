"""Numba-jitted implementations of the numeric kernels (default backend).

Every inner sum accumulates in increasing j with a single accumulator, so
repeated runs are bitwise reproducible.  Kernels are cached to disk, so
compilation is paid once per machine.
"""

import math

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def conv_trunc(a, b):
    n = a.shape[0]
    out = np.empty(n)
    for r in range(n):
        acc = 0.0
        for j in range(r + 1):
            acc += a[j] * b[r - j]
        out[r] = acc
    return out


@njit(cache=True)
def conv_trunc_kahan(a, b):
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


@njit(cache=True)
def quotient_series(u, v):
    n = u.shape[0]
    y = np.empty(n)
    v0 = v[0]
    for r in range(n):
        acc = 0.0
        for j in range(1, r + 1):
            acc += v[r + 1 - j] * y[j - 1]
        y[r] = (u[r] - acc) / v0
    return y


@njit(cache=True)
def quotient_series_kahan(u, v):
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


@njit(cache=True)
def exp_series(v):
    n = v.shape[0]
    e = np.empty(n)
    e[0] = math.exp(v[0])
    for r in range(1, n):
        acc = 0.0
        for j in range(1, r + 1):
            acc += j * v[j] * e[r - j]
        e[r] = acc / r
    return e


@njit(cache=True)
def log_series(v):
    n = v.shape[0]
    ln = np.empty(n)
    ln[0] = math.log(v[0])
    v0 = v[0]
    for r in range(1, n):
        acc = 0.0
        for j in range(1, r):
            acc += j * ln[j] * v[r - j]
        ln[r] = (v[r] - acc / r) / v0
    return ln


@njit(cache=True)
def sin_cos_series(v):
    n = v.shape[0]
    s = np.empty(n)
    c = np.empty(n)
    s[0] = math.sin(v[0])
    c[0] = math.cos(v[0])
    for r in range(1, n):
        acc_s = 0.0
        acc_c = 0.0
        for j in range(1, r + 1):
            acc_s += j * v[j] * c[r - j]
            acc_c += j * v[j] * s[r - j]
        s[r] = acc_s / r
        c[r] = -acc_c / r
    return s, c


@njit(cache=True)
def sqrt_series(v):
    n = v.shape[0]
    q = np.empty(n)
    q[0] = math.sqrt(v[0])
    for r in range(1, n):
        acc = 0.0
        for j in range(1, r):
            acc += q[j] * q[r - j]
        q[r] = (v[r] - acc) / (2.0 * q[0])
    return q


@njit(cache=True)
def det_partial_pivot(m):
    a = m.copy()
    n = a.shape[0]
    sign = 1.0
    for k in range(n):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            mag = abs(a[i, k])
            if mag > best:
                best = mag
                p = i
        if a[p, k] == 0.0:
            return 0.0
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            sign = -sign
        pivot = a[k, k]
        for i in range(k + 1, n):
            factor = a[i, k] / pivot
            for j in range(k + 1, n):
                a[i, j] -= factor * a[k, j]
    d = sign
    for k in range(n):
        d *= a[k, k]
    return d
