"""Kernel selection: compiled extension if available, pure Python otherwise.

Set HOWE3_PURE=1 to force the pure-Python implementations.
"""

from __future__ import annotations

import os

from . import pure as _pure

if os.environ.get("HOWE3_PURE") == "1":
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

IMPL = _impl.IMPL

poly_mul_flat = _impl.poly_mul_flat
poly_pow_coeffs = _impl.poly_pow_coeffs
square_table = _impl.square_table
count_hyperelliptic = _impl.count_hyperelliptic
count_ciani_quartic = _impl.count_ciani_quartic
rosenhain_superspecial_scan = _impl.rosenhain_superspecial_scan
