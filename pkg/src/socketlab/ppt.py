"""Pressure-pain-threshold acquisition engine.

Load-cell calibration, a small session state machine (rest, ramp, pain mark,
force-limit auto-abort), device-error computation, the threshold matrix
accumulated over specimens, and the material/thickness selection rule.

Sessions are immutable records; ``session_step`` returns an updated copy, so
live streaming can hand out snapshots without locking the analytics.
"""

import csv
import io
import statistics
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import signals
from .errors import FileFormatError, SessionStateError

MAX_FORCE_LIMIT_N = 200.0
FIRST_REST_S = 900.0  # rest before the first session of a visit
BETWEEN_REST_S = 600.0  # rest between consecutive sessions

SESSION_STATES = ("idle", "resting", "ramping", "marked", "aborted")


@dataclass(frozen=True)
class LinearCalibration:
    """Force = slope * raw + intercept."""

    slope: float
    intercept: float
    r_squared: float = 1.0

    def __post_init__(self):
        if self.slope <= 0:
            raise ValueError("calibration slope must be > 0")
        if not 0.0 <= self.r_squared <= 1.0 + 1e-12:
            raise ValueError("r_squared must be in [0, 1]")

    def apply(self, raw: float) -> float:
        return self.slope * raw + self.intercept


IDENTITY_CALIBRATION = LinearCalibration(slope=1.0, intercept=0.0, r_squared=1.0)


def calibrate(pairs) -> LinearCalibration:
    """Least-squares line through (raw_reading, applied_force_n) pairs."""
    pairs = list(pairs)
    if len(pairs) < 2:
        raise ValueError("need at least two calibration pairs")
    raw = [p[0] for p in pairs]
    force = [p[1] for p in pairs]
    fit = signals.linear_fit(raw, force)
    return LinearCalibration(slope=fit.slope, intercept=fit.intercept, r_squared=fit.r_squared)


def device_error(applied_n: float, measured_n: float) -> float:
    """Device error as a percentage of the applied force."""
    if applied_n <= 0:
        raise ValueError("applied force must be > 0")
    return 100.0 * abs(applied_n - measured_n) / applied_n


# --- session state machine ------------------------------------------------

@dataclass(frozen=True)
class StartRest:
    pass


@dataclass(frozen=True)
class RestElapsed:
    pass


@dataclass(frozen=True)
class StartRamp:
    pass


@dataclass(frozen=True)
class Sample:
    t_s: float
    raw: float


@dataclass(frozen=True)
class MarkPain:
    # None marks the most recent sample; a time pins an exact earlier sample
    # so replayed sessions are reproducible regardless of consumer latency.
    at_t_s: float | None = None


@dataclass(frozen=True)
class Abort:
    reason: str = "operator"


@dataclass(frozen=True)
class PPTSession:
    region: str
    material: str
    thickness_mm: float
    probe_area_mm2: float
    calibration: LinearCalibration = IDENTITY_CALIBRATION
    max_force_limit_n: float = MAX_FORCE_LIMIT_N
    state: str = "idle"
    rest_complete: bool = False
    samples: tuple = ()  # ((t_s, force_n), ...)
    pain_mark: int | None = None
    abort_reason: str | None = None

    @property
    def pain_force_n(self) -> float | None:
        if self.pain_mark is None:
            return None
        return self.samples[self.pain_mark][1]


def session_step(session: PPTSession, event) -> PPTSession:
    """Apply one event; raises SessionStateError for illegal transitions."""
    state = session.state

    if isinstance(event, StartRest):
        if state != "idle":
            raise SessionStateError(f"start_rest is only legal from idle (state={state})")
        return replace(session, state="resting")

    if isinstance(event, RestElapsed):
        if state != "resting":
            raise SessionStateError(f"rest_elapsed is only legal while resting (state={state})")
        return replace(session, rest_complete=True)

    if isinstance(event, StartRamp):
        if state != "resting":
            raise SessionStateError(f"start_ramp is only legal while resting (state={state})")
        if not session.rest_complete:
            raise SessionStateError("start_ramp before the rest period elapsed")
        return replace(session, state="ramping")

    if isinstance(event, Sample):
        if state != "ramping":
            raise SessionStateError(f"samples are only accepted while ramping (state={state})")
        if session.samples and event.t_s <= session.samples[-1][0]:
            raise SessionStateError("sample timestamps must be strictly increasing")
        force = session.calibration.apply(event.raw)
        if force > session.max_force_limit_n:
            # The over-limit sample is rejected, not recorded.
            return replace(session, state="aborted", abort_reason="force limit exceeded")
        return replace(session, samples=session.samples + ((event.t_s, force),))

    if isinstance(event, MarkPain):
        if state != "ramping":
            raise SessionStateError(f"mark_pain is only legal while ramping (state={state})")
        if not session.samples:
            raise SessionStateError("mark_pain before any sample arrived")
        if event.at_t_s is None:
            mark = len(session.samples) - 1
        else:
            matches = [i for i, (t, _) in enumerate(session.samples) if t == event.at_t_s]
            if not matches:
                raise SessionStateError(f"no sample at t={event.at_t_s}")
            mark = matches[0]
        return replace(session, state="marked", pain_mark=mark)

    if isinstance(event, Abort):
        if state not in ("resting", "ramping"):
            raise SessionStateError(f"abort is only legal during an active session (state={state})")
        return replace(session, state="aborted", abort_reason=event.reason)

    raise SessionStateError(f"unknown event {event!r}")


def ppt_value(session: PPTSession, probe_area_mm2: float | None = None) -> float:
    """Pain-onset pressure in MPa (N / mm^2) for a marked session."""
    if session.state != "marked":
        raise SessionStateError("ppt_value requires a marked session")
    area = session.probe_area_mm2 if probe_area_mm2 is None else probe_area_mm2
    if area <= 0:
        raise ValueError("probe area must be > 0")
    return session.pain_force_n / area


def rest_schedule(plan) -> list:
    """Required rest before each planned session: 15 min first, 10 min after."""
    plan = list(plan)
    if not plan:
        raise ValueError("session plan must not be empty")
    return [(session, FIRST_REST_S if i == 0 else BETWEEN_REST_S) for i, session in enumerate(plan)]


# --- threshold matrix and selection ----------------------------------------

@dataclass
class PPTMatrix:
    """Thresholds per (region, material, thickness); repeats average."""

    probe_area_by_region_mm2: dict = field(default_factory=dict)
    _measurements: dict = field(default_factory=dict)

    def add(self, region: str, material: str, thickness_mm: float, ppt_mpa: float) -> None:
        if ppt_mpa <= 0:
            raise ValueError("ppt must be > 0")
        key = (region, material, float(thickness_mm))
        self._measurements.setdefault(key, []).append(float(ppt_mpa))

    def add_session(self, session: PPTSession) -> float:
        value = ppt_value(session)
        self.probe_area_by_region_mm2.setdefault(session.region, session.probe_area_mm2)
        self.add(session.region, session.material, session.thickness_mm, value)
        return value

    @property
    def entries(self) -> dict:
        return {key: statistics.fmean(vals) for key, vals in self._measurements.items()}

    def regions(self):
        return sorted({region for region, _, _ in self._measurements})

    def row(self, region: str) -> dict:
        return {(m, t): v for (r, m, t), v in self.entries.items() if r == region}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["region", "material", "thickness_mm", "ppt_mpa"])
        for (region, material, thickness), value in sorted(self.entries.items()):
            writer.writerow([region, material, f"{thickness:g}", f"{value:g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PPTMatrix":
        matrix = cls()
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["region", "material", "thickness_mm", "ppt_mpa"]:
            raise FileFormatError("matrix file must start with header region,material,thickness_mm,ppt_mpa")
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise FileFormatError(f"matrix line {line}: expected 4 fields, got {len(row)}")
            try:
                matrix.add(row[0].strip(), row[1].strip(), float(row[2]), float(row[3]))
            except ValueError as exc:
                raise FileFormatError(f"matrix line {line}: {exc}") from exc
        return matrix

    @classmethod
    def load(cls, path) -> "PPTMatrix":
        return cls.from_csv(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class RegionChoice:
    material: str
    thickness_mm: float
    ppt_mpa: float


@dataclass(frozen=True)
class SelectionResult:
    per_region: dict  # region -> RegionChoice
    rest_of_socket: tuple = ("Tough PLA", 7.5)


REQUIRED_SELECTION_REGIONS = ("Tibia", "Fibula", "Calf")


def select_materials(matrix: PPTMatrix, materials: dict | None = None,
                     required_regions=REQUIRED_SELECTION_REGIONS,
                     rest_of_socket=("Tough PLA", 7.5)) -> SelectionResult:
    """Pick the highest-threshold (material, thickness) per region.

    Ties break toward lower areal mass (density * thickness, when material
    densities are available; plain thickness otherwise), then lower
    thickness, then material name.
    """
    entries = matrix.entries
    per_region = {}
    for region in required_regions:
        row = [(m, t, v) for (r, m, t), v in entries.items() if r == region]
        if not row:
            raise ValueError(f"matrix has no entries for required region {region!r}")

        def sort_key(item):
            material, thickness, value = item
            density = materials[material].density_kg_m3 if materials and material in materials else 1.0
            return (-value, density * thickness, thickness, material)

        material, thickness, value = min(row, key=sort_key)
        per_region[region] = RegionChoice(material, thickness, value)
    return SelectionResult(per_region=per_region, rest_of_socket=tuple(rest_of_socket))


# --- force-stream replay files ----------------------------------------------

@dataclass(frozen=True)
class ForceStream:
    """A recorded force ramp: calibrated newtons or raw device units."""

    kind: str  # "force" or "raw"
    series: signals.Series


def load_force_stream(path) -> ForceStream:
    """Read a replay file; the header declares `t_s,raw` or `t_s,force_n`."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise FileFormatError("replay file is empty")
    header = [h.strip() for h in header]
    if header == ["t_s", "force_n"]:
        kind = "force"
    elif header == ["t_s", "raw"]:
        kind = "raw"
    else:
        raise FileFormatError("replay header must be t_s,force_n or t_s,raw")
    t, v = [], []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise FileFormatError(f"replay line {line}: expected 2 fields, got {len(row)}")
        try:
            t.append(float(row[0]))
            v.append(float(row[1]))
        except ValueError as exc:
            raise FileFormatError(f"replay line {line}: {exc}") from exc
    if not t:
        raise FileFormatError("replay file has no samples")
    try:
        series = signals.Series(t, v, units="N" if kind == "force" else "raw")
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc
    return ForceStream(kind=kind, series=series)
