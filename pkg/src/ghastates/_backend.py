"""Kernel backend selection.

The compiled extension is preferred when the build produced it; otherwise
the numpy fallback is used transparently.  Both expose the same functions
and agree to round-off.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl
    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _kernels_py as _impl
    BACKEND = "python"

weighted_trig_sums = _impl.weighted_trig_sums


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return BACKEND
