"""Backend selection for the elimination kernel.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Set ``SO3EIGHT_PURE=1`` to force the fallback.
"""
import os

from so3eight import _kernels_py

if os.environ.get("SO3EIGHT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from so3eight import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

rref_int = _impl.rref_int
rank_int = _impl.rank_int

__all__ = ["BACKEND", "rref_int", "rank_int"]
