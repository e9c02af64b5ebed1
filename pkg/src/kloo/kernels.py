"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
reference versions are used.  Setting KLOO_BACKEND=python forces the
fallback (handy for benchmarking and for testing both paths).
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if os.environ.get("KLOO_BACKEND", "").lower() == "python" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_active = BACKENDS[BACKEND]
basis_points = _active.basis_points
trace_power_table = _active.trace_power_table
count_traces = _active.count_traces


def get_backend(name=None):
    """Kernel module by name; None means the active one."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
