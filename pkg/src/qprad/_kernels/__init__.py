"""Kernel backend selection.

The compiled extension is preferred; the pure NumPy implementation is a
drop-in fallback. Set ``QPRAD_PURE_PYTHON=1`` to force the fallback
(used by the benchmarks and the backend-equivalence tests).
"""

import os

from . import pure

if os.environ.get("QPRAD_PURE_PYTHON"):
    _impl = pure
    BACKEND = "python"
else:
    try:
        from . import _fastpath as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "python"

rk4_constant_g = _impl.rk4_constant_g
signed_rank_counts = _impl.signed_rank_counts
