"""Graph kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``EXPUNIFY_PURE_PYTHON=1`` is set, the pure-Python twin is used. Both return
identical results, including which cycle is reported.
"""

import os

from . import _graphkern_py

if os.environ.get("EXPUNIFY_PURE_PYTHON") == "1":
    _impl = _graphkern_py
else:
    try:
        from . import _graphkern as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _graphkern_py

BACKEND = "compiled" if _impl is not _graphkern_py else "python"
find_cycle = _impl.find_cycle
components = _impl.components

__all__ = ["BACKEND", "find_cycle", "components"]
