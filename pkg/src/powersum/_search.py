"""Search-kernel backend selection.

The compiled Cython kernel is preferred when its extension module built;
otherwise the pure-Python twin is used.  Setting POWERSUM_PURE=1 forces the
pure kernel (useful for benchmarking and for exercising the fallback path).
"""

import os

if os.environ.get("POWERSUM_PURE", "0") not in ("", "0"):
    from . import _search_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _search_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _search_py as _impl

        BACKEND = "pure"

FOUND = _impl.FOUND
EXHAUSTED = _impl.EXHAUSTED
BUDGET = _impl.BUDGET
subtree_first = _impl.subtree_first
subtree_all = _impl.subtree_all
