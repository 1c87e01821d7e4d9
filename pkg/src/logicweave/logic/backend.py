"""Kernel backend selection.

Prefers the compiled extension when it was built, with the pure-Python
kernel as the import-time fallback. ``LOGICWEAVE_PURE_PYTHON=1`` forces the
fallback. The compiled kernel packs masks into 64-bit words, so callers
route universes above 64 symbols to the pure backend regardless.
"""

from __future__ import annotations

import os

from logicweave.logic import _kernel_py

COMPILED_MAX_SYMBOLS = 64

if os.environ.get("LOGICWEAVE_PURE_PYTHON") == "1":
    kernel = _kernel_py
else:
    try:
        from logicweave.logic import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _kernel_py

BACKEND_NAME: str = kernel.BACKEND_NAME


def kernel_for(n_symbols: int):
    """Kernel module able to handle a universe of ``n_symbols``."""
    if n_symbols > COMPILED_MAX_SYMBOLS:
        return _kernel_py
    return kernel
