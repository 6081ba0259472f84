"""Kernel dispatch: the compiled extension when importable, else the reference code.

Set ``SOWDIST_PURE=1`` in the environment to force the reference kernels.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("SOWDIST_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

sow_keys = _impl.sow_keys
poly_mul = _impl.poly_mul
