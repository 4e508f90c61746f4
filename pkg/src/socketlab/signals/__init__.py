"""Shared signal-processing kernel.

Time series with a strictly increasing time base, percent-of-cycle curves
(101 samples, 0..100%), moving-mean smoothing, least-squares line fits,
Pearson correlation, and peak extraction.  The inner loops live in a
compiled extension with a numpy fallback (see ``_backend``).
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._backend import BACKEND, interp_core, moving_mean_core, pearson_core

__all__ = [
    "BACKEND",
    "CYCLE_SAMPLES",
    "CycleCurve",
    "FitResult",
    "PeakResult",
    "Series",
    "linear_fit",
    "moving_mean",
    "pearson",
    "peak",
    "resample_cycle",
    "smoothing_window",
    "window_indices",
]

CYCLE_SAMPLES = 101  # 0..100% inclusive, one sample per percent


@dataclass
class Series:
    """A sampled signal: values over a strictly increasing time base."""

    t: np.ndarray
    v: np.ndarray
    units: str = ""

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=np.float64)
        self.v = np.asarray(self.v, dtype=np.float64)
        if self.t.ndim != 1 or self.v.ndim != 1:
            raise ValueError("series t and v must be one-dimensional")
        if self.t.shape[0] != self.v.shape[0]:
            raise ValueError("series t and v must have equal length")
        if self.t.shape[0] < 1:
            raise ValueError("series must contain at least one sample")
        if self.t.shape[0] > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("series time base must be strictly increasing")

    def __len__(self):
        return int(self.t.shape[0])


@dataclass
class CycleCurve:
    """One value per percent of a normalized cycle (101 samples)."""

    values: np.ndarray
    units: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (CYCLE_SAMPLES,):
            raise ValueError(f"cycle curve must hold exactly {CYCLE_SAMPLES} samples")

    @property
    def percent(self) -> np.ndarray:
        return np.arange(CYCLE_SAMPLES, dtype=np.float64)


class PeakResult(NamedTuple):
    value: float
    percent: float


class FitResult(NamedTuple):
    slope: float
    intercept: float
    r_squared: float


def smoothing_window(smoothing_factor: float, n: int) -> int:
    """Window length for :func:`moving_mean`.

    The odd integer nearest to ``smoothing_factor * n / 10`` (midpoints take
    the wider window), never below 3.
    """
    target = smoothing_factor * n / 10.0
    window = 2 * int(math.floor((target - 1.0) / 2.0 + 0.5)) + 1
    return max(3, window)


def moving_mean(series: Series, smoothing_factor: float) -> Series:
    """Centered moving mean with edge truncation.

    The window grows with the smoothing factor (see :func:`smoothing_window`);
    output length equals input length.
    """
    if not 0.0 < smoothing_factor <= 1.0:
        raise ValueError("smoothing_factor must be in (0, 1]")
    if len(series) == 0:
        raise ValueError("cannot smooth an empty series")
    window = smoothing_window(smoothing_factor, len(series))
    return Series(series.t, moving_mean_core(series.v, window), units=series.units)


def resample_cycle(series: Series, t_start: float, t_end: float, units: str | None = None) -> CycleCurve:
    """Linearly resample one cycle onto the 101-point percent grid."""
    if not t_start < t_end:
        raise ValueError("t_start must be earlier than t_end")
    if t_start < series.t[0] or t_end > series.t[-1]:
        raise ValueError("cycle bounds fall outside the series time span")
    tq = np.linspace(t_start, t_end, CYCLE_SAMPLES)
    return CycleCurve(interp_core(series.t, series.v, tq), units=series.units if units is None else units)


def window_indices(window: tuple[float, float]) -> np.ndarray:
    """Integer percent samples covered by a (lo, hi) percent window."""

    lo, hi = window
    if not lo <= hi:
        raise ValueError("window must satisfy lo <= hi")
    # Integer percent samples inside [lo, hi]; a hair of slack so that e.g.
    # a bound computed as 62.999999999 still includes sample 63.
    first = int(math.ceil(lo - 1e-9))
    last = int(math.floor(hi + 1e-9))
    first = max(first, 0)
    last = min(last, CYCLE_SAMPLES - 1)
    if last < first:
        raise ValueError("window contains no cycle samples")
    return np.arange(first, last + 1)


def pearson(a: CycleCurve, b: CycleCurve, window: tuple[float, float] = (0.0, 100.0)) -> float:
    """Sample Pearson correlation of two cycle curves over a percent window."""
    idx = window_indices(window)
    if idx.shape[0] < 2:
        raise ValueError("window must contain at least two samples")
    r = pearson_core(a.values[idx], b.values[idx])
    if math.isnan(r):
        raise ValueError("pearson undefined: an input has zero variance over the window")
    return r


def peak(curve: CycleCurve) -> PeakResult:
    """Maximum value and the percent where it first occurs."""
    i = int(np.argmax(curve.values))
    return PeakResult(float(curve.values[i]), float(i))


def linear_fit(x: Sequence[float], y: Sequence[float]) -> FitResult:
    """Ordinary least-squares line ``y = slope * x + intercept`` plus r^2."""
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("x and y must be one-dimensional and equally long")
    if xa.shape[0] < 2:
        raise ValueError("need at least two points for a line fit")
    dx = xa - xa.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise ValueError("all x values are equal; slope is undefined")
    dy = ya - ya.mean()
    slope = float(np.dot(dx, dy)) / sxx
    intercept = float(ya.mean() - slope * xa.mean())
    residuals = ya - (slope * xa + intercept)
    ss_res = float(np.dot(residuals, residuals))
    ss_tot = float(np.dot(dy, dy))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, r_squared)
