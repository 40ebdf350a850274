"""Kernel backend selection.

The compiled extension is preferred; set ``WORMHOLE_METROLOGY_PURE=1`` to
force the numpy fallback.
"""
import os

from . import _kernels_py

if os.environ.get("WORMHOLE_METROLOGY_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_ext as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

squeezed_vacuum = _impl.squeezed_vacuum
displaced_squeezed = _impl.displaced_squeezed
hermite_functions = _impl.hermite_functions
wavefunction = _impl.wavefunction


def backends():
    """Return every importable kernel module keyed by name."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels_ext
    except ImportError:
        pass
    else:
        found["compiled"] = _kernels_ext
    return found
