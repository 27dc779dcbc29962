"""Hot-kernel backend selection.

The compiled Cython extension is used when importable; setting
``POLYCONVEX_PURE=1`` (or a failed build) selects the numpy/scipy fallback.
Both backends implement the same contracts; ``benchmarks/bench_kernels.py``
compares them.
"""

import os

from . import pure

if os.environ.get("POLYCONVEX_PURE") == "1":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

flood_from_border = _impl.flood_from_border
aberth_iterate = _impl.aberth_iterate
