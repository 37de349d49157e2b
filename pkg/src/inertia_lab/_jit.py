"""Numba switch.

Set ``INERTIA_LAB_NUMBA=0`` to run every kernel as plain Python/numpy.
The flag is read once, at import time.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("INERTIA_LAB_NUMBA", "1").strip().lower()
USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def py_func(kernel):
    """Return the uncompiled Python source function behind ``kernel``."""
    return getattr(kernel, "py_func", kernel)
