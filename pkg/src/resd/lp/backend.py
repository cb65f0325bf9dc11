"""Selects the pivot kernel: compiled extension if importable, else Python.

Override with RESD_KERNEL=py|cy (cy raises if the extension is missing).
"""
from __future__ import annotations

import os

from . import _simplex_py

_choice = os.environ.get("RESD_KERNEL", "auto").lower()

if _choice == "py":
    kernel = _simplex_py
elif _choice == "cy":
    from . import _simplex_cy as kernel  # type: ignore[no-redef]
else:
    try:
        from . import _simplex_cy as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _simplex_py


def kernel_backend() -> str:
    return kernel.BACKEND
