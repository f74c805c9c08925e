"""Kernel backend selection.

The compiled Cython kernel is used when it was built; otherwise the pure
Python implementation with identical semantics takes over. Set
FFLAT_PURE_PYTHON=1 to force the fallback (used by the benchmark and to
reproduce results without a compiler).
"""

import os

if os.environ.get("FFLAT_PURE_PYTHON"):
    from . import _pykernel as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernel as kernel  # type: ignore[no-redef]

BACKEND = kernel.BACKEND

__all__ = ["kernel", "BACKEND"]
