"""Backend selection for the arithmetic kernels.

The compiled extension is used when it imports; setting
``DRINLEVEL_PURE_PYTHON=1`` forces the reference implementation.
"""

import os

if os.environ.get("DRINLEVEL_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
