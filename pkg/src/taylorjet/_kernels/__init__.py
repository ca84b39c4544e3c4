"""Kernel backend selection.

Hot numeric loops (truncated convolution, the quotient recursion, the
elementary-series recurrences, dense determinants) exist twice: a
numba-jitted version and a vectorized pure-numpy fallback.  The
environment variable ``TAYLORJET_BACKEND`` picks one at import time:

    auto   use numba when importable, else numpy       (default)
    numba  require the jitted kernels, fail if missing
    numpy  force the pure-numpy fallback

Both backends implement identical contracts; non-Kahan kernels agree to
roundoff, Kahan kernels agree bitwise.  The selection never changes any
documented behavior, only how the same sums are executed.
"""

import os
import warnings

ENV_VAR = "TAYLORJET_BACKEND"

from . import numpy_backend


def _load_numba():
    from . import numba_backend

    return numba_backend


def get_backend(name):
    """Return the kernel module for ``name`` ("numba" or "numpy")."""
    if name == "numpy":
        return numpy_backend
    if name == "numba":
        return _load_numba()
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["numpy"]
    try:
        _load_numba()
        names.insert(0, "numba")
    except ImportError:
        pass
    return names


def _select():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        warnings.warn(
            f"{ENV_VAR}={choice!r} is not one of auto/numba/numpy; using auto",
            stacklevel=2,
        )
        choice = "auto"
    if choice == "numpy":
        return numpy_backend
    if choice == "numba":
        return _load_numba()
    try:
        return _load_numba()
    except ImportError:
        return numpy_backend


kernels = _select()


def active_backend():
    """Name of the backend the package-level operations dispatch to."""
    return kernels.NAME
