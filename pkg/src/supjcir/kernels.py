"""Backend selection for the inner jump integral.

The compiled extension is used when it imports; setting
``SUPJCIR_PURE_PYTHON=1`` forces the numpy reference implementation.
"""

import os

from . import _kernels_py

BACKEND = "python"
jump_term = _kernels_py.jump_term

if os.environ.get("SUPJCIR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        jump_term = _compiled.jump_term

__all__ = ["BACKEND", "jump_term"]
