"""Distance kernels, compiled when available.

The Cython module ``_ckernels`` is used if it was built; otherwise the numpy
implementation in ``_pykernels`` is selected. Set ``VOXCURVE_PURE_PYTHON=1``
to force the fallback, or call :func:`set_backend` at runtime.
"""
from __future__ import annotations

import os

from voxcurve import _pykernels

try:
    from voxcurve import _ckernels
except ImportError:  # extension not built
    _ckernels = None

COMPILED_AVAILABLE = _ckernels is not None

_EXPORTS = ("cyl_sqdist", "cyl_sqdist1", "cyl_scan_min")

backend = "python"
cyl_sqdist = _pykernels.cyl_sqdist
cyl_sqdist1 = _pykernels.cyl_sqdist1
cyl_scan_min = _pykernels.cyl_scan_min
sample_params = _pykernels.sample_params
scan_min = _pykernels.scan_min


def set_backend(name: str) -> None:
    """Switch between ``"compiled"`` and ``"python"`` kernels."""
    global backend
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    g = globals()
    for fn in _EXPORTS:
        g[fn] = getattr(mod, fn)
    backend = name


if COMPILED_AVAILABLE and os.environ.get("VOXCURVE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    set_backend("compiled")
