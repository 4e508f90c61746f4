"""Pure-Python (numpy) signal kernels.

Reference implementation and import-time fallback for the compiled core in
``_ckernels``.  Both backends expose the same three functions with identical
semantics; the dispatcher in ``_backend`` picks one at import.
"""

import numpy as np

BACKEND = "python"


def moving_mean_core(values, window):
    """Centered moving mean with the window truncated at both edges.

    ``window`` must be an odd positive int; output has the input's length.
    """
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(v)))
    idx = np.arange(n)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def interp_core(t, v, tq):
    """Piecewise-linear interpolation of (t, v) at query times tq.

    ``t`` must be strictly increasing; queries outside [t[0], t[-1]] clamp
    to the endpoint values.
    """
    return np.interp(tq, t, v)


def pearson_core(a, b):
    """Sample Pearson correlation of two equal-length arrays.

    Returns NaN when either input has zero variance; the caller decides how
    to report that.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    da = a - a.mean()
    db = b - b.mean()
    denom = np.sqrt(np.dot(da, da) * np.dot(db, db))
    if denom == 0.0:
        return float("nan")
    return float(np.dot(da, db) / denom)
