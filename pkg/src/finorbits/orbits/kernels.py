"""Kernel selection: the compiled BFS when built, otherwise pure Python.

Set FINORBITS_PURE_PYTHON=1 to force the Python kernel.
"""

from __future__ import annotations

import os

from . import _pycore

PURE_ENV = "FINORBITS_PURE_PYTHON"


def _load():
    if os.environ.get(PURE_ENV, "").strip() not in ("", "0"):
        return _pycore, "python"
    try:
        from . import _core  # type: ignore[attr-defined]
    except ImportError:
        return _pycore, "python"
    return _core, "cython"


_impl, BACKEND = _load()
labeled_bfs = _impl.labeled_bfs
python_labeled_bfs = _pycore.labeled_bfs


def compiled_labeled_bfs():
    """The compiled kernel, or None if the extension was not built."""
    try:
        from . import _core  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _core.labeled_bfs


class_bfs = _impl.class_bfs
python_class_bfs = _pycore.class_bfs
