"""Select the rank kernel at import time.

The compiled kernel is used when it was built; ``CONFBETTI_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _rank_py

try:
    if os.environ.get("CONFBETTI_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel forced")
    from . import _rank_ext
except ImportError:
    _rank_ext = None

BACKEND = "cython" if _rank_ext is not None else "python"


def rank_int_rows(rows, ncols):
    if _rank_ext is not None:
        try:
            return _rank_ext.rank_int_rows(rows, ncols)
        except OverflowError:
            pass
    return _rank_py.rank_int_rows(rows, ncols)
