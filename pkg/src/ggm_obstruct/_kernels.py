"""Backend selection for the elimination kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python reference in ``_kernels_py`` is loaded.  Setting
``GGM_OBSTRUCT_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py

try:
    if os.environ.get("GGM_OBSTRUCT_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

bareiss_rank = _impl.bareiss_rank
row_hermite = _impl.row_hermite

__all__ = ["BACKEND", "bareiss_rank", "row_hermite"]
