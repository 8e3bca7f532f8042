"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``CLUSTERKIT_PURE_PYTHON=1`` to force the pure lane even when the
compiled extension is importable. ``implementation()`` reports which lane
is active.
"""

from __future__ import annotations

import os

from clusterkit import _pykernels

if os.environ.get("CLUSTERKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from clusterkit import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

ffgj_inverse = _impl.ffgj_inverse
lu_inverse = _impl.lu_inverse
union_find_sizes = _impl.union_find_sizes


def implementation() -> str:
    """Name of the active kernel lane: ``"compiled"`` or ``"python"``."""
    return _impl.IMPLEMENTATION
