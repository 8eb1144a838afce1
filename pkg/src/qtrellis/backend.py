"""Kernel backend selection: compiled extension if importable, else Python.

Set QTRELLIS_FORCE_PY=1 to force the pure-Python kernels."""

from __future__ import annotations

import os

from . import kernels_py

if os.environ.get("QTRELLIS_FORCE_PY"):
    kernels = kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
        COMPILED = True
    except ImportError:
        kernels = kernels_py
        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "python"
