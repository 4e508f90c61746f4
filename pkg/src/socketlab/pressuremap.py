"""Pressure-grid analytics for walking and static bench tests.

Walking data is a time-ordered sequence of sensor-grid frames (kPa) with
named region masks; static bench data is a set of single-point pressure
traces (MPa).  Both feed reduction and normalization metrics:

* per-region gait-cycle pressure curves and their peaks,
* peak / mean reduction of a candidate socket against a reference,
* velocity-normalized reduction (pressure per unit walking speed),
* body-weight normalization (MPa/BW) and comparison against published maps,
* the static-test target force (supported share of body weight x safety).
"""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import signals
from .errors import FileFormatError
from .ppt import LinearCalibration

STANDARD_GRAVITY = 9.81  # m/s^2


@dataclass
class PressureSequence:
    """Frames of a pressure grid plus named cell masks."""

    t_s: np.ndarray  # (F,)
    grids_kpa: np.ndarray  # (F, rows, cols)
    region_masks: dict = field(default_factory=dict)  # region -> ((row, col), ...)

    def __post_init__(self):
        self.t_s = np.asarray(self.t_s, dtype=np.float64)
        self.grids_kpa = np.asarray(self.grids_kpa, dtype=np.float64)
        if self.grids_kpa.ndim != 3 or self.t_s.ndim != 1:
            raise ValueError("expected t (F,) and grids (F, rows, cols)")
        if self.t_s.shape[0] != self.grids_kpa.shape[0]:
            raise ValueError("one grid per timestamp required")
        if self.t_s.shape[0] == 0:
            raise ValueError("sequence must contain at least one frame")
        if self.t_s.shape[0] > 1 and not np.all(np.diff(self.t_s) > 0):
            raise ValueError("frame timestamps must be strictly increasing")
        if np.any(self.grids_kpa < 0):
            raise ValueError("pressures must be >= 0 kPa")
        rows, cols = self.grids_kpa.shape[1:]
        for region, cells in self.region_masks.items():
            for r, c in cells:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"mask {region!r} cell ({r}, {c}) outside {rows}x{cols} grid")

    @property
    def shape(self):
        return self.grids_kpa.shape[1:]


def two_point_calibration(readings, masses_kg, g: float = STANDARD_GRAVITY) -> LinearCalibration:
    """Line through two (raw reading, mass * g) points, newtons per raw unit."""
    raw1, raw2 = readings
    kg1, kg2 = masses_kg
    if raw1 == raw2:
        raise ValueError("calibration readings must be distinct")
    if kg1 == kg2:
        raise ValueError("calibration masses must be distinct")
    f1, f2 = kg1 * g, kg2 * g
    slope = (f2 - f1) / (raw2 - raw1)
    if slope <= 0:
        raise ValueError("calibration slope must be positive (readings must increase with load)")
    return LinearCalibration(slope=slope, intercept=f1 - slope * raw1, r_squared=1.0)


def region_curve(seq: PressureSequence, region: str, cycle_bounds,
                 statistic: str = "mean") -> signals.CycleCurve:
    """Per-frame statistic over a region's cells, resampled to the cycle grid."""
    if region not in seq.region_masks or not seq.region_masks[region]:
        raise ValueError(f"region {region!r} has an empty or missing mask")
    if statistic not in ("mean", "peak_cell"):
        raise ValueError("statistic must be 'mean' or 'peak_cell'")
    cells = seq.region_masks[region]
    rows = np.array([r for r, _ in cells])
    cols = np.array([c for _, c in cells])
    values = seq.grids_kpa[:, rows, cols]  # (F, n_cells)
    trace = values.mean(axis=1) if statistic == "mean" else values.max(axis=1)
    series = signals.Series(seq.t_s, trace, units="kPa")
    t0, t1 = cycle_bounds
    return signals.resample_cycle(series, t0, t1)


def peak_reduction(reference: signals.CycleCurve, candidate: signals.CycleCurve) -> float:
    """Drop of the candidate's peak below the reference's peak, percent."""
    ref_peak = signals.peak(reference).value
    if ref_peak == 0:
        raise ValueError("reference curve peaks at zero; reduction undefined")
    return 100.0 * (ref_peak - signals.peak(candidate).value) / ref_peak


def mean_reduction(reference: signals.CycleCurve, candidate: signals.CycleCurve) -> float:
    """Drop of the candidate's curve mean below the reference's, percent."""
    ref_mean = float(reference.values.mean())
    if ref_mean == 0:
        raise ValueError("reference curve mean is zero; reduction undefined")
    return 100.0 * (ref_mean - float(candidate.values.mean())) / ref_mean


def velocity_normalized_reduction(ref_peak_kpa: float, ref_v_mps: float,
                                  cand_peak_kpa: float, cand_v_mps: float) -> float:
    """Peak reduction after normalizing each peak by its walking speed."""
    if ref_v_mps <= 0 or cand_v_mps <= 0:
        raise ValueError("velocities must be > 0")
    ref_norm = ref_peak_kpa / ref_v_mps
    if ref_norm == 0:
        raise ValueError("reference normalized peak is zero; reduction undefined")
    return 100.0 * (ref_norm - cand_peak_kpa / cand_v_mps) / ref_norm


def bw_normalize(pressure_mpa: float, body_mass_kg: float, g: float = STANDARD_GRAVITY) -> float:
    """Pressure divided by body weight, in MPa/BW (BW = mass * g, newtons)."""
    if body_mass_kg <= 0:
        raise ValueError("body mass must be > 0")
    return pressure_mpa / (body_mass_kg * g)


def normalized_comparison(ours_mpa_per_bw: float, literature_mpa_per_bw: float) -> float:
    """How far below the published normalized pressure ours sits, percent."""
    if literature_mpa_per_bw <= 0:
        raise ValueError("literature value must be > 0")
    return 100.0 * (literature_mpa_per_bw - ours_mpa_per_bw) / literature_mpa_per_bw


@dataclass(frozen=True)
class StaticTestConfig:
    body_mass_kg: float
    load_fraction: float = 0.45  # share of body weight carried by the prosthetic limb
    safety_factor: float = 1.5
    g: float = STANDARD_GRAVITY

    def __post_init__(self):
        if min(self.body_mass_kg, self.load_fraction, self.safety_factor, self.g) <= 0:
            raise ValueError("all static-test parameters must be > 0")
        if self.load_fraction > 1:
            raise ValueError("load_fraction cannot exceed 1")


def static_target_force(cfg: StaticTestConfig) -> float:
    """Force to apply in the static bench test, newtons."""
    return cfg.body_mass_kg * cfg.g * cfg.load_fraction * cfg.safety_factor


def static_plateau(trace: signals.Series, smoothing_factor: float = 0.45,
                   dwell_threshold: float = 0.95) -> float:
    """Held-load pressure of a static-test trace.

    The trace is moving-mean filtered, the dwell is every sample at or above
    ``dwell_threshold`` of the filtered maximum, and the plateau is the dwell
    median (robust to ramp edges riding above the threshold).
    """
    if not 0 < dwell_threshold <= 1:
        raise ValueError("dwell_threshold must be in (0, 1]")
    smoothed = signals.moving_mean(trace, smoothing_factor)
    top = float(np.max(smoothed.v))
    if top <= 0:
        raise ValueError("trace never rises above zero; no loaded dwell")
    dwell = smoothed.v[smoothed.v >= dwell_threshold * top]
    return float(np.median(dwell))


# --- file formats -------------------------------------------------------------

def load_sequence(data_path, masks_path=None) -> PressureSequence:
    """Long-form frames file plus an optional region-mask file.

    Frames: a `# rows=R cols=C` header line, then `t_s,row,col,kpa` rows.
    Cells omitted from a frame default to 0 kPa.  Masks: `region,row,col`.
    """
    text = Path(data_path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].lstrip().startswith("#"):
        raise FileFormatError("sequence file must start with a '# rows=R cols=C' header line")
    m = dict(part.split("=") for part in lines[0].lstrip("# ").split())
    try:
        rows, cols = int(m["rows"]), int(m["cols"])
    except (KeyError, ValueError) as exc:
        raise FileFormatError("sequence header must declare rows= and cols=") from exc

    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["t_s", "row", "col", "kpa"]:
        raise FileFormatError("sequence data must start with header t_s,row,col,kpa")

    frames = {}
    for line, row in enumerate(reader, start=3):
        if not row:
            continue
        if len(row) != 4:
            raise FileFormatError(f"sequence line {line}: expected 4 fields")
        try:
            t, r, c, kpa = float(row[0]), int(row[1]), int(row[2]), float(row[3])
        except ValueError as exc:
            raise FileFormatError(f"sequence line {line}: {exc}") from exc
        if not (0 <= r < rows and 0 <= c < cols):
            raise FileFormatError(f"sequence line {line}: cell ({r}, {c}) outside {rows}x{cols} grid")
        frames.setdefault(t, np.zeros((rows, cols)))[r, c] = kpa
    if not frames:
        raise FileFormatError("sequence file has no frames")

    times = sorted(frames)
    grids = np.stack([frames[t] for t in times])
    masks = load_masks(masks_path) if masks_path is not None else {}
    return PressureSequence(np.asarray(times), grids, masks)


def load_masks(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["region", "row", "col"]:
        raise FileFormatError("mask file must start with header region,row,col")
    masks = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise FileFormatError(f"mask line {line}: expected 3 fields")
        try:
            masks.setdefault(row[0].strip(), []).append((int(row[1]), int(row[2])))
        except ValueError as exc:
            raise FileFormatError(f"mask line {line}: {exc}") from exc
    return {region: tuple(cells) for region, cells in masks.items()}


def load_static_traces(path) -> dict:
    """Static bench traces: `t_s,tibia_mpa,fibula_mpa,calf_mpa` columns."""
    expected = ["t_s", "tibia_mpa", "fibula_mpa", "calf_mpa"]
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != expected:
        raise FileFormatError(f"static trace file must start with header {','.join(expected)}")
    columns = [[], [], [], []]
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise FileFormatError(f"static trace line {line}: expected 4 fields")
        try:
            for i, cell in enumerate(row):
                columns[i].append(float(cell))
        except ValueError as exc:
            raise FileFormatError(f"static trace line {line}: {exc}") from exc
    if not columns[0]:
        raise FileFormatError("static trace file has no samples")
    t = np.asarray(columns[0])
    return {
        "Tibia": signals.Series(t, columns[1], units="MPa"),
        "Fibula": signals.Series(t, columns[2], units="MPa"),
        "Calf": signals.Series(t, columns[3], units="MPa"),
    }


def kpa_to_mpa(kpa: float) -> float:
    return kpa / 1000.0


def mpa_to_kpa(mpa: float) -> float:
    return mpa * 1000.0
