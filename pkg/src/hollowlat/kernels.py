"""Kernel selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy versions in ``_pykernels`` are used. Setting ``HOLLOWLAT_PURE=1`` forces
the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("HOLLOWLAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

first_assoc_violation = _impl.first_assoc_violation
first_distrib_violation = _impl.first_distrib_violation
strongly_hollow_mask = _impl.strongly_hollow_mask
residual_table = _impl.residual_table
principal_masks = _impl.principal_masks

__all__ = [
    "BACKEND",
    "first_assoc_violation",
    "first_distrib_violation",
    "strongly_hollow_mask",
    "residual_table",
    "principal_masks",
]
