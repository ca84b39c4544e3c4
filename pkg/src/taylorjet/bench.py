"""Timing harness: the quotient recursion versus the Cramer route.

The recursion is O(n^2) and is measured on both kernel backends (numba
and the pure-numpy fallback) so their costs can be compared directly;
Cramer is O(n^4) and only exists as an oracle, so it is measured on the
active backend and only up to its size cap.

Inputs are synthetic geometric series (u = 0.9^k, v = 0.5^k), which keep
the quotient bounded at any order; the flop count of the kernels does not
depend on the values, so the timings are representative.
"""

import time
from dataclasses import dataclass

import numpy as np

from ._kernels import active_backend, available_backends, get_backend
from .trisolve import CRAMER_MAX_ORDER

__all__ = ["BenchRow", "DEFAULT_ORDERS", "synthetic_inputs", "run_bench"]

DEFAULT_ORDERS = (12, 64, 256, 1024, 4096)


@dataclass(frozen=True)
class BenchRow:
    method: str  # "recursion" | "cramer"
    backend: str
    order: int
    reps: int
    median_ms: float


def synthetic_inputs(order):
    k = np.arange(order + 1)
    return 0.9**k, 0.5**k


def _median_ms(fn, reps):
    fn()  # warm-up: JIT compile / cache load happens outside the timings
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    samples.sort()
    return 1e3 * samples[len(samples) // 2]


def _dense_toeplitz(col):
    n = col.shape[0]
    m = np.zeros((n, n))
    for i in range(n):
        m[i, : i + 1] = col[i::-1]
    return m


def _cramer_once(kernels, dense, b):
    d = kernels.det_partial_pivot(dense)
    x = np.empty(dense.shape[0])
    for k in range(dense.shape[0]):
        replaced = dense.copy()
        replaced[:, k] = b
        x[k] = kernels.det_partial_pivot(replaced) / d
    return x


def run_bench(orders=DEFAULT_ORDERS, reps=11, backends=None):
    """Median kernel wall times per (method, backend, order).

    Recursion rows appear for every requested order and backend; Cramer
    rows only for orders within its cap, on the active backend.
    """
    if reps < 1:
        raise ValueError("need at least one repetition")
    if backends is None:
        backends = available_backends()
    rows = []
    for order in orders:
        if order < 0:
            raise ValueError("orders must be non-negative")
        u, v = synthetic_inputs(order)
        for name in backends:
            kernels = get_backend(name)
            rows.append(
                BenchRow(
                    "recursion",
                    name,
                    order,
                    reps,
                    _median_ms(lambda: kernels.quotient_series(u, v), reps),
                )
            )
        if order <= CRAMER_MAX_ORDER:
            kernels = get_backend(active_backend())
            dense = _dense_toeplitz(v)
            rows.append(
                BenchRow(
                    "cramer",
                    active_backend(),
                    order,
                    reps,
                    _median_ms(lambda: _cramer_once(kernels, dense, u), reps),
                )
            )
    return rows
