"""Analytic structural checks for socket wall sizing.

A pressurized-cylinder model stands in for full FEA: per-region hoop stress
under the standing interface pressure, thickness sweeps against each region's
pressure-pain constraint, merging of near-identical thicknesses, stance-phase
load projection, factor of safety, and S-N fatigue-life interpolation.

The analytic model reproduces the *decision logic* (pass/fail, range merging)
of a simulation-based sweep, not simulated stress values; ``sweep_from_table``
accepts externally computed stress tables so recorded sweeps replay exactly.
"""

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .catalog import Catalog, MaterialSpec, RegionSpec, SocketGeometry
from .errors import FileFormatError

DEFAULT_SIMILARITY_TOL_MPA = 0.005
REFERENCE_BODY_MASS_KG = 60.0

SHELL_MODELS = ("thin_shell", "thick_wall")
THIN_SHELL_MAX_RATIO = 0.2  # thickness / inner radius


@dataclass(frozen=True)
class SweepRow:
    thickness_mm: float
    stress_mpa: float
    constraint_mpa: float
    passed: bool


@dataclass(frozen=True)
class StancePhaseLoad:
    phase: str
    interface_pressure_by_area_mpa: dict  # Anterior/Medial/Lateral/Posterior
    grf_fy_n: float
    grf_fz_n: float


@dataclass(frozen=True)
class FosResult:
    value: float
    strength_provenance: str


@dataclass(frozen=True)
class LifeResult:
    cycles: float
    clamped: bool


# Stance-phase interface pressures around the socket inner surface and the
# projected ground reaction forces, literature values for a 60 kg transtibial
# user.  GRFs scale linearly with body mass; pressures are kept as published.
_STANCE_PHASES = ("heel_strike", "mid_stance", "push_off")

_INTERFACE_PRESSURES_MPA = {
    "heel_strike": {"Anterior": 0.0574, "Medial": 0.0698, "Lateral": 0.0677, "Posterior": 0.0750},
    "mid_stance": {"Anterior": 0.0543, "Medial": 0.0712, "Lateral": 0.0631, "Posterior": 0.0714},
    "push_off": {"Anterior": 0.0754, "Medial": 0.0836, "Lateral": 0.0729, "Posterior": 0.0882},
}

_GRF_N = {
    "heel_strike": (120.0, 580.0),  # (Fy, Fz)
    "mid_stance": (92.0, 582.0),
    "push_off": (112.0, 578.0),
}


def shell_stress(pressure_mpa: float, inner_radius_m: float, thickness_mm: float,
                 model: str = "thick_wall") -> float:
    """Hoop stress in a pressurized cylindrical wall, in MPa.

    ``thin_shell`` is the membrane estimate p*r/t and requires
    t/r < 0.2; ``thick_wall`` is the Lame maximum (inner-surface) stress
    p*(ro^2 + ri^2)/(ro^2 - ri^2), valid for any wall.
    """
    if pressure_mpa <= 0 or inner_radius_m <= 0 or thickness_mm <= 0:
        raise ValueError("pressure, inner radius, and thickness must all be > 0")
    if model not in SHELL_MODELS:
        raise ValueError(f"unknown shell model {model!r}; expected one of {SHELL_MODELS}")
    r_mm = inner_radius_m * 1000.0
    if model == "thin_shell":
        ratio = thickness_mm / r_mm
        if ratio >= THIN_SHELL_MAX_RATIO:
            raise ValueError(
                f"thin_shell needs thickness/inner_radius < {THIN_SHELL_MAX_RATIO} (got {ratio:.3f}); use thick_wall"
            )
        return pressure_mpa * r_mm / thickness_mm
    ro = r_mm + thickness_mm
    return pressure_mpa * (ro * ro + r_mm * r_mm) / (ro * ro - r_mm * r_mm)


def thickness_sweep(region: RegionSpec, thicknesses_mm, geometry: SocketGeometry,
                    model: str = "thick_wall", material: MaterialSpec | None = None) -> list:
    """Analytic wall-stress sweep for one region.

    One row per thickness, in input order: stress at the region's standing
    pressure versus its pain constraint.  ``material`` is accepted for
    interface parity with simulation-backed sweeps; the cylinder model does
    not use it.
    """
    thicknesses = list(thicknesses_mm)
    if not thicknesses:
        raise ValueError("thickness list must not be empty")
    if any(t <= 0 for t in thicknesses):
        raise ValueError("all thicknesses must be > 0")
    rows = []
    for t in thicknesses:
        stress = shell_stress(region.standing_pressure_mpa, geometry.inner_radius_m, t, model=model)
        rows.append(SweepRow(float(t), stress, region.ppt_constraint_mpa, stress < region.ppt_constraint_mpa))
    return rows


def sweep_from_table(region: RegionSpec, stress_by_thickness_mpa: dict) -> list:
    """Sweep rows from an externally computed stress table (e.g. recorded FEA)."""
    if not stress_by_thickness_mpa:
        raise ValueError("stress table must not be empty")
    rows = []
    for t in sorted(stress_by_thickness_mpa):
        stress = float(stress_by_thickness_mpa[t])
        rows.append(SweepRow(float(t), stress, region.ppt_constraint_mpa, stress < region.ppt_constraint_mpa))
    return rows


def merge_thickness_range(rows, similarity_tol_mpa: float = DEFAULT_SIMILARITY_TOL_MPA) -> list:
    """Candidate thicknesses from sweep rows.

    Passing thicknesses are kept; an adjacent passing pair whose stresses
    differ by strictly less than the tolerance is collapsed to its midpoint
    (the two walls behave the same, so test the middle).  A pair exactly at
    the tolerance does not merge; the comparison carries a 1e-12 MPa guard so
    float representation of decimal stress values cannot flip that edge.
    Greedy left-to-right over rows sorted by thickness; output sorted and
    deduplicated.
    """
    rows = list(rows)
    if similarity_tol_mpa <= 0:
        raise ValueError("similarity_tol_mpa must be > 0")
    if any(b.thickness_mm <= a.thickness_mm for a, b in zip(rows, rows[1:])):
        raise ValueError("rows must be sorted by increasing thickness")
    out = []
    i = 0
    while i < len(rows):
        row = rows[i]
        if not row.passed:
            i += 1
            continue
        nxt = rows[i + 1] if i + 1 < len(rows) else None
        if nxt is not None and nxt.passed and abs(nxt.stress_mpa - row.stress_mpa) - similarity_tol_mpa < -1e-12:
            out.append((row.thickness_mm + nxt.thickness_mm) / 2.0)
            i += 2
        else:
            out.append(row.thickness_mm)
            i += 1
    return sorted(set(out))


@dataclass(frozen=True)
class RegionSweep:
    region: str
    rows: tuple
    merged_mm: tuple
    candidates_mm: tuple


@dataclass(frozen=True)
class DesignSweepResult:
    by_region: dict  # region name -> RegionSweep
    combined_mm: tuple  # union of per-region candidates, sorted


def design_candidates(catalog: Catalog, stress_tables: dict | None = None,
                      thicknesses_mm=None, model: str = "thick_wall",
                      similarity_tol_mpa: float = DEFAULT_SIMILARITY_TOL_MPA) -> DesignSweepResult:
    """Per-region candidate thicknesses and their combined test range.

    ``stress_tables`` maps region name -> {thickness_mm: stress_mpa} for the
    data-driven mode; without it the analytic model runs over
    ``thicknesses_mm`` (required).  Pressure-sensitive regions keep every
    merged candidate (they go on to pain-threshold testing); pressure-tolerant
    regions keep only the lightest passing wall.  Thicknesses below a region's
    ``min_thickness_mm`` are rejected before the sweep.
    """
    if stress_tables is None and thicknesses_mm is None:
        raise ValueError("provide either stress_tables or thicknesses_mm")
    by_region = {}
    combined = set()
    region_names = sorted(stress_tables) if stress_tables is not None else sorted(
        n for n in catalog.regions if n != "Rest"
    )
    for name in region_names:
        region = catalog.region(name)
        if stress_tables is not None:
            table = {
                t: s for t, s in stress_tables[name].items()
                if region.min_thickness_mm is None or t >= region.min_thickness_mm
            }
            rows = sweep_from_table(region, table)
        else:
            usable = [
                t for t in thicknesses_mm
                if region.min_thickness_mm is None or t >= region.min_thickness_mm
            ]
            rows = thickness_sweep(region, sorted(usable), catalog.geometry, model=model)
        merged = merge_thickness_range(rows, similarity_tol_mpa)
        if region.sensitivity == "pressure_tolerant":
            candidates = merged[:1]  # lightest passing wall wins in tolerant regions
        else:
            candidates = merged
        by_region[name] = RegionSweep(name, tuple(rows), tuple(merged), tuple(candidates))
        combined.update(candidates)
    return DesignSweepResult(by_region=by_region, combined_mm=tuple(sorted(combined)))


def sweep_rows_to_csv(rows) -> str:
    """Delimited export in the sweep-table column layout."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["thickness_mm", "constraint_mpa", "stress_mpa", "pass"])
    for row in rows:
        writer.writerow([f"{row.thickness_mm:g}", f"{row.constraint_mpa:g}", f"{row.stress_mpa:g}",
                         "yes" if row.passed else "no"])
    return buf.getvalue()


def load_stress_tables(path) -> dict:
    """Recorded sweep stresses: region -> {thickness_mm: stress_mpa}."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["region", "thickness_mm", "stress_mpa"]:
        raise FileFormatError("stress table must start with header region,thickness_mm,stress_mpa")
    tables = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise FileFormatError(f"stress table line {line}: expected 3 fields")
        try:
            tables.setdefault(row[0].strip(), {})[float(row[1])] = float(row[2])
        except ValueError as exc:
            raise FileFormatError(f"stress table line {line}: {exc}") from exc
    if not tables:
        raise FileFormatError("stress table has no rows")
    return tables


def stance_loads(body_mass_kg: float) -> list:
    """Stance-phase interface pressures and projected GRFs for a given body mass.

    GRFs scale linearly from the 60 kg reference; interface pressures are the
    published values and are not rescaled.
    """
    if body_mass_kg <= 0:
        raise ValueError("body mass must be > 0")
    scale = body_mass_kg / REFERENCE_BODY_MASS_KG
    loads = []
    for phase in _STANCE_PHASES:
        fy, fz = _GRF_N[phase]
        loads.append(StancePhaseLoad(
            phase=phase,
            interface_pressure_by_area_mpa=dict(_INTERFACE_PRESSURES_MPA[phase]),
            grf_fy_n=fy * scale,
            grf_fz_n=fz * scale,
        ))
    return loads


def factor_of_safety(stress_mpa: float, strength_mpa: float,
                     strength_provenance: str = "unspecified") -> FosResult:
    """strength / stress, tagged with where the strength value came from."""
    if stress_mpa <= 0 or strength_mpa <= 0:
        raise ValueError("stress and strength must be > 0")
    return FosResult(strength_mpa / stress_mpa, strength_provenance)


def material_fos(stress_mpa: float, material: MaterialSpec) -> FosResult:
    return factor_of_safety(stress_mpa, material.yield_strength_mpa, material.strength_provenance)


def fatigue_life(stress_amplitude_mpa: float, sn_curve) -> LifeResult:
    """Cycles to failure by log-log interpolation of an S-N curve.

    Between curve points the interpolation is linear in (log N, log S)
    (Basquin-style).  Outside the curve the result clamps to the endpoint
    cycle count and is flagged.
    """
    curve = [(float(c), float(s)) for c, s in sn_curve]
    if len(curve) < 2:
        raise ValueError("sn_curve needs at least two points")
    cycles = [c for c, _ in curve]
    stresses = [s for _, s in curve]
    if any(c <= 0 for c in cycles) or any(s <= 0 for s in stresses):
        raise ValueError("sn_curve cycles and stresses must be > 0")
    if any(b <= a for a, b in zip(cycles, cycles[1:])) or any(b >= a for a, b in zip(stresses, stresses[1:])):
        raise ValueError("sn_curve must have strictly increasing cycles and strictly decreasing stress")
    if stress_amplitude_mpa <= 0:
        raise ValueError("stress amplitude must be > 0")

    if stress_amplitude_mpa >= stresses[0]:
        return LifeResult(cycles[0], clamped=stress_amplitude_mpa > stresses[0])
    if stress_amplitude_mpa <= stresses[-1]:
        return LifeResult(cycles[-1], clamped=stress_amplitude_mpa < stresses[-1])

    for (c1, s1), (c2, s2) in zip(curve, curve[1:]):
        if s2 <= stress_amplitude_mpa <= s1:
            frac = (math.log(stress_amplitude_mpa) - math.log(s1)) / (math.log(s2) - math.log(s1))
            log_n = math.log(c1) + frac * (math.log(c2) - math.log(c1))
            return LifeResult(math.exp(log_n), clamped=False)
    raise AssertionError("unreachable: stress bracketed but no segment matched")
