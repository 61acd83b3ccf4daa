"""Kernel selection: compiled extension when available, pure Python otherwise.

Set QUANTCURVE_PURE=1 to force the pure-Python kernel (used by the benchmark
and by tests that compare the two backends).
"""

from __future__ import annotations

import os

if os.environ.get("QUANTCURVE_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms

__all__ = ["BACKEND", "add_terms", "sub_terms", "scale_terms", "mul_terms"]
