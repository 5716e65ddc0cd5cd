"""Hot-loop kernels with a compiled core and a pure-Python fallback.

Import preference: the Cython extension ``_ckernels`` if it was built,
otherwise ``_pykernels``.  Set REFMOD_PURE_PYTHON=1 to force the fallback
(used by the benchmark and the kernel-parity tests).
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("REFMOD_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

mixed_radix_coords = _pykernels.mixed_radix_coords
norm_half_exponents = _impl.norm_half_exponents
pair_matrix = _impl.pair_matrix
s_apply = _impl.s_apply
series_conv_int = _impl.series_conv_int
cyclo_reduce_int = _impl.cyclo_reduce_int
cyclo_mul_reduce = _impl.cyclo_mul_reduce
reduce_entries = _impl.reduce_entries


def backend_name() -> str:
    return _impl.BACKEND
