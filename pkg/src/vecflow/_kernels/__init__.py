"""Search kernel backend selection.

The compiled Cython kernel is used when available; the pure-Python fallback
is semantically identical (same candidate order, same node counts).  Set
``VECFLOW_PURE_PYTHON=1`` to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

STATUS_FOUND = 0
STATUS_NONE = 1
STATUS_BUDGET = 2

if os.environ.get("VECFLOW_PURE_PYTHON"):
    from vecflow._kernels import _search_py as _impl

    BACKEND = "python"
else:
    try:
        from vecflow._kernels import _search_c as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        from vecflow._kernels import _search_py as _impl

        BACKEND = "python"

search_cover = _impl.search_cover

__all__ = [
    "search_cover",
    "BACKEND",
    "STATUS_FOUND",
    "STATUS_NONE",
    "STATUS_BUDGET",
]
