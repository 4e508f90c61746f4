"""Kernel backend selection.

The compiled extension is preferred when it was built; the numpy fallback is
used otherwise.  Set ``SOCKETLAB_PURE_KERNELS=1`` to force the fallback (used
by the benchmark and the test matrix).
"""

import os

if os.environ.get("SOCKETLAB_PURE_KERNELS", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND
moving_mean_core = kernels.moving_mean_core
interp_core = kernels.interp_core
pearson_core = kernels.pearson_core
