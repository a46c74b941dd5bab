"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python module is used.  Setting ``SIMUORB_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels

if os.environ.get("SIMUORB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND

EXT_SIMPLE = _pykernels.EXT_SIMPLE
EXT_COMPLEX_A = _pykernels.EXT_COMPLEX_A
EXT_COMPLEX_B = _pykernels.EXT_COMPLEX_B
INT_A = _pykernels.INT_A
INT_B = _pykernels.INT_B

generate = _impl.generate
generate_many = _impl.generate_many
radius_sq = _impl.radius_sq
radius_key = _impl.radius_key
has_duplicates = _impl.has_duplicates
anchor_points = _impl.anchor_points
union_links = _impl.union_links
match_roots = _impl.match_roots


def backend_module(name):
    """Return the kernel module for ``name`` ("python" or "cython")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
