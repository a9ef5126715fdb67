"""Elimination kernels with a compiled fast path.

The compiled extension ``delsarte.kernels._fast`` is used when it imports and
``DELSARTE_PURE`` is unset; otherwise everything runs on the pure-Python
kernels in ``_pure``.  The compiled kernels work in 64-bit integers and signal
overflow with ``OverflowError``; the call is then repeated on the
arbitrary-precision implementation, so results never depend on which backend
is active.
"""

import os

from . import _pure

try:
    if os.environ.get("DELSARTE_PURE"):
        raise ImportError("pure backend requested")
    from . import _fast
except ImportError:
    _fast = None

BACKEND = "compiled" if _fast is not None else "python"


def _dispatch(name, *args):
    if _fast is not None:
        try:
            return getattr(_fast, name)(*args)
        except OverflowError:
            pass
    return getattr(_pure, name)(*args)


def eliminate_unit_pivots(rows, n_active):
    return _dispatch("eliminate_unit_pivots", rows, n_active)


def diagonalize(rows, ncols):
    return _dispatch("diagonalize", rows, ncols)


def hermite_rows(rows, ncols):
    return _dispatch("hermite_rows", rows, ncols)
