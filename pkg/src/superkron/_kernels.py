"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure NumPy versions.
Set SUPERKRON_PURE_PYTHON=1 to force the fallback (used by the kernel
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("SUPERKRON_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

theta_series = _impl.theta_series
jet_mul = _impl.jet_mul
BACKEND = _impl.BACKEND
