"""Kinematic analytics over labeled walking trials.

Trials carry pre-labeled heel-strike / toe-off events (labeling happens in
the capture software), sagittal joint angles for both sides, and pelvis
forward velocity.  Metrics: stance-phase segmentation and duration, joint
range of motion, interlimb symmetry (Pearson), stance asymmetry, and peak
center-of-mass velocity.

Averaging order is fixed: each cycle is resampled to the 101-point percent
grid, cycles are averaged pointwise, and metrics run on the mean curve.
"""

import csv
import io
import statistics
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import signals
from .errors import FileFormatError

JOINTS = ("hip", "knee", "ankle")
SIDES = ("PS", "SS")  # prosthetic side, sound side
EVENT_TYPES = ("heel_strike", "toe_off")

TRIAL_COLUMNS = ["t_s", "hip_ps_deg", "knee_ps_deg", "ankle_ps_deg",
                 "hip_ss_deg", "knee_ss_deg", "ankle_ss_deg", "pelvis_vx_mps"]
EVENT_COLUMNS = ["t_s", "type", "side"]


@dataclass(frozen=True)
class GaitEvent:
    t_s: float
    type: str
    side: str


@dataclass(frozen=True)
class GaitCycle:
    start_s: float
    toe_off_s: float
    end_s: float

    @property
    def stance_pct(self) -> float:
        return 100.0 * (self.toe_off_s - self.start_s) / (self.end_s - self.start_s)


@dataclass
class GaitTrial:
    sampling_rate_hz: float
    joints: dict  # (joint, side) -> signals.Series, degrees
    events: tuple  # GaitEvent, time-ordered
    pelvis_velocity: signals.Series  # m/s

    def __post_init__(self):
        trial_t = None
        for key, series in self.joints.items():
            joint, side = key
            if joint not in JOINTS or side not in SIDES:
                raise ValueError(f"unknown joint/side {key!r}")
            if trial_t is None:
                trial_t = series.t
            elif series.t.shape != trial_t.shape or not np.array_equal(series.t, trial_t):
                raise ValueError("all joint series must share the trial time base")
        times = [e.t_s for e in self.events]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("events must be time-ordered")
        for e in self.events:
            if e.type not in EVENT_TYPES or e.side not in SIDES:
                raise ValueError(f"bad event {e!r}")

    def joint_series(self, joint: str, side: str) -> signals.Series:
        try:
            return self.joints[(joint, side)]
        except KeyError:
            raise KeyError(f"trial has no series for {joint}/{side}") from None


def segment_cycles(trial: GaitTrial, side: str) -> list:
    """Cycles bounded by consecutive heel strikes, each with its toe-off."""
    strikes = [e.t_s for e in trial.events if e.side == side and e.type == "heel_strike"]
    toe_offs = [e.t_s for e in trial.events if e.side == side and e.type == "toe_off"]
    if len(strikes) < 2:
        raise ValueError(f"need at least two {side} heel strikes to segment cycles")
    cycles = []
    for start, end in zip(strikes, strikes[1:]):
        inside = [t for t in toe_offs if start < t < end]
        if len(inside) != 1:
            raise ValueError(
                f"{side} cycle [{start:g}, {end:g}] s must contain exactly one toe-off, found {len(inside)}"
            )
        cycles.append(GaitCycle(start, inside[0], end))
    return cycles


def stance_percent(cycles) -> float:
    """Mean stance share over cycles, in percent of the cycle."""
    cycles = list(cycles)
    if not cycles:
        raise ValueError("need at least one cycle")
    return statistics.fmean(c.stance_pct for c in cycles)


def stance_asymmetry(ps_pct: float, ss_pct: float) -> float:
    """Signed prosthetic-vs-sound stance difference, percent of the sound side.

    Positive means the prosthetic side spends a larger share of its cycle in
    stance than the sound side.
    """
    for value in (ps_pct, ss_pct):
        if not 0.0 < value < 100.0:
            raise ValueError("stance percentages must be in (0, 100)")
    return 100.0 * (ps_pct - ss_pct) / ss_pct


def mean_cycle_curve(trial: GaitTrial, joint: str, side: str) -> signals.CycleCurve:
    """Per-cycle curves resampled to the percent grid, averaged pointwise."""
    series = trial.joint_series(joint, side)
    cycles = segment_cycles(trial, side)
    stacked = np.stack([
        signals.resample_cycle(series, c.start_s, c.end_s).values for c in cycles
    ])
    return signals.CycleCurve(stacked.mean(axis=0), units="deg")


def _window_range(trial: GaitTrial, side: str, window: str) -> tuple:
    if window == "full_cycle":
        return (0.0, 100.0)
    if window == "stance":
        return (0.0, stance_percent(segment_cycles(trial, side)))
    raise ValueError(f"unknown window {window!r}; expected 'stance' or 'full_cycle'")


def rom(trial: GaitTrial, joint: str, side: str, window: str = "stance") -> float:
    """Range of motion (max - min, degrees) of the mean cycle over the window."""
    curve = mean_cycle_curve(trial, joint, side)
    lo, hi = _window_range(trial, side, window)
    idx = signals.window_indices((lo, hi))
    segment = curve.values[idx]
    return float(segment.max() - segment.min())


def joint_symmetry(trial: GaitTrial, joint: str, window: str = "stance") -> float:
    """Interlimb similarity: 100 * Pearson(mean PS curve, mean SS curve).

    The comparison window follows the prosthetic side's stance share, since
    socket function is what the stance window isolates.
    """
    ps = mean_cycle_curve(trial, joint, "PS")
    ss = mean_cycle_curve(trial, joint, "SS")
    bounds = _window_range(trial, "PS", window)
    return 100.0 * signals.pearson(ps, ss, bounds)


def com_velocity_metric(trials) -> float:
    """Mean over trials of each trial's peak forward pelvis velocity."""
    trials = list(trials)
    if not trials:
        raise ValueError("need at least one trial")
    peaks = []
    for trial in trials:
        if trial.pelvis_velocity is None or len(trial.pelvis_velocity) == 0:
            raise ValueError("trial has no pelvis velocity series")
        peaks.append(float(np.max(trial.pelvis_velocity.v)))
    return statistics.fmean(peaks)


def percent_change(reference: float, value: float) -> float:
    """Signed change of ``value`` relative to ``reference``, in percent."""
    if reference == 0:
        raise ValueError("reference must be nonzero")
    return 100.0 * (value - reference) / reference


# --- trial files -------------------------------------------------------------

def load_trial(data_path, events_path, sampling_rate_hz: float | None = None) -> GaitTrial:
    """Load a trial from its data and events files (see TRIAL_COLUMNS)."""
    text = Path(data_path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != TRIAL_COLUMNS:
        raise FileFormatError(f"trial file must start with header {','.join(TRIAL_COLUMNS)}")
    columns = [[] for _ in TRIAL_COLUMNS]
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(TRIAL_COLUMNS):
            raise FileFormatError(f"trial line {line}: expected {len(TRIAL_COLUMNS)} fields")
        try:
            for i, cell in enumerate(row):
                columns[i].append(float(cell))
        except ValueError as exc:
            raise FileFormatError(f"trial line {line}: {exc}") from exc
    if not columns[0]:
        raise FileFormatError("trial file has no samples")

    t = np.asarray(columns[0])
    joints = {}
    for i, (joint, side) in enumerate(((j, s) for s in ("ps", "ss") for j in JOINTS)):
        joints[(joint, side.upper())] = signals.Series(t, columns[1 + i], units="deg")
    pelvis = signals.Series(t, columns[7], units="m/s")

    events = _load_events(events_path)
    if sampling_rate_hz is None:
        dt = float(np.median(np.diff(t))) if len(t) > 1 else 1.0
        sampling_rate_hz = round(1.0 / dt, 6)
    return GaitTrial(sampling_rate_hz=sampling_rate_hz, joints=joints, events=events, pelvis_velocity=pelvis)


def _load_events(path) -> tuple:
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != EVENT_COLUMNS:
        raise FileFormatError(f"events file must start with header {','.join(EVENT_COLUMNS)}")
    events = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise FileFormatError(f"events line {line}: expected 3 fields")
        t_raw, etype, side = (cell.strip() for cell in row)
        if etype not in EVENT_TYPES or side not in SIDES:
            raise FileFormatError(f"events line {line}: bad type/side {etype!r}/{side!r}")
        try:
            events.append(GaitEvent(float(t_raw), etype, side))
        except ValueError as exc:
            raise FileFormatError(f"events line {line}: {exc}") from exc
    return tuple(events)
