"""Kernel backend selection.

The hot numerical kernels exist twice: a Cython extension (``_core``) and
a pure NumPy/Python fallback (``_kernels_py``) with identical call
surfaces.  The extension is used when importable; set the environment
variable DIHEDRAL_BESSEL_BACKEND to ``python`` or ``cython`` to force one.
"""

import os

_requested = os.environ.get("DIHEDRAL_BESSEL_BACKEND", "auto").lower()
if _requested not in ("auto", "python", "cython"):
    raise ValueError(
        f"DIHEDRAL_BESSEL_BACKEND must be auto, python or cython, got {_requested!r}")

if _requested in ("auto", "cython"):
    try:
        from . import _core as kernels
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _kernels_py as kernels
        BACKEND = "python"
else:
    from . import _kernels_py as kernels
    BACKEND = "python"


def backend_name() -> str:
    return BACKEND
