"""A/B comparison report: candidate socket versus reference socket.

Pulls every metric from one labeled input set (gait trials, walking pressure
sequences, optional static bench traces, socket masses) and emits a single
deterministic report.  Every number in the report is the output of exactly
one documented operation, and constants that did not come from our own
measurements carry provenance notes.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from . import gait, pressuremap, signals
from .errors import FileFormatError

PRESSURE_REGIONS_DEFAULT = ("Tibia", "Fibula")


@dataclass(frozen=True)
class SocketInputs:
    id: str
    mass_kg: float
    trial: gait.GaitTrial
    pressure: pressuremap.PressureSequence
    pressure_cycle: tuple  # (t0, t1) of the analyzed gait cycle
    static_traces: dict | None = None  # region -> Series (MPa), bench test


@dataclass
class ComparisonReport:
    candidate_id: str
    reference_id: str
    mass: dict
    walking_pressure: dict  # region -> metrics
    kinematics: dict  # joint -> metrics
    stance: dict  # socket role -> {ps_pct, ss_pct, asymmetry_pct}
    com_velocity: dict
    static: dict | None
    provenance_notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _stance_block(trial: gait.GaitTrial) -> dict:
    ps = gait.stance_percent(gait.segment_cycles(trial, "PS"))
    ss = gait.stance_percent(gait.segment_cycles(trial, "SS"))
    return {
        "ps_pct": ps,
        "ss_pct": ss,
        "asymmetry_pct": gait.stance_asymmetry(ps, ss),
    }


def build_comparison(candidate: SocketInputs, reference: SocketInputs,
                     body_mass_kg: float,
                     static_literature_mpa_per_bw: dict | None = None,
                     static_test: pressuremap.StaticTestConfig | None = None,
                     pressure_regions=PRESSURE_REGIONS_DEFAULT,
                     gravity_mps2: float = pressuremap.STANDARD_GRAVITY) -> ComparisonReport:
    """Assemble the full candidate-vs-reference comparison."""
    notes = [
        f"gravity = {gravity_mps2} m/s^2 (standard value)",
        "socket masses are as-measured inputs",
    ]

    mass = {
        "candidate_kg": candidate.mass_kg,
        "reference_kg": reference.mass_kg,
        "delta_pct": gait.percent_change(reference.mass_kg, candidate.mass_kg),
    }

    com_candidate = gait.com_velocity_metric([candidate.trial])
    com_reference = gait.com_velocity_metric([reference.trial])
    com_velocity = {
        "candidate_mps": com_candidate,
        "reference_mps": com_reference,
        "change_pct": gait.percent_change(com_reference, com_candidate),
        "units": "m/s",
    }

    walking = {}
    for region in pressure_regions:
        cand_curve = pressuremap.region_curve(candidate.pressure, region, candidate.pressure_cycle)
        ref_curve = pressuremap.region_curve(reference.pressure, region, reference.pressure_cycle)
        cand_peak = signals.peak(cand_curve)
        ref_peak = signals.peak(ref_curve)
        walking[region] = {
            "candidate_peak_kpa": cand_peak.value,
            "candidate_peak_pct": cand_peak.percent,
            "reference_peak_kpa": ref_peak.value,
            "reference_peak_pct": ref_peak.percent,
            "peak_reduction_pct": pressuremap.peak_reduction(ref_curve, cand_curve),
            "mean_reduction_pct": pressuremap.mean_reduction(ref_curve, cand_curve),
            "velocity_normalized_reduction_pct": pressuremap.velocity_normalized_reduction(
                ref_peak.value, com_reference, cand_peak.value, com_candidate
            ),
        }

    kinematics = {}
    for joint in gait.JOINTS:
        cand_sym = gait.joint_symmetry(candidate.trial, joint, window="stance")
        ref_sym = gait.joint_symmetry(reference.trial, joint, window="stance")
        kinematics[joint] = {
            "candidate_rom_ps_deg": gait.rom(candidate.trial, joint, "PS", window="stance"),
            "candidate_rom_ss_deg": gait.rom(candidate.trial, joint, "SS", window="stance"),
            "reference_rom_ps_deg": gait.rom(reference.trial, joint, "PS", window="stance"),
            "reference_rom_ss_deg": gait.rom(reference.trial, joint, "SS", window="stance"),
            "candidate_symmetry_pct": cand_sym,
            "reference_symmetry_pct": ref_sym,
            "symmetry_gain_pp": cand_sym - ref_sym,
        }

    stance = {
        "candidate": _stance_block(candidate.trial),
        "reference": _stance_block(reference.trial),
    }

    static = None
    if candidate.static_traces is not None:
        cfg = static_test or pressuremap.StaticTestConfig(body_mass_kg=body_mass_kg, g=gravity_mps2)
        notes.append(
            f"static test protocol: prosthetic limb carries {cfg.load_fraction:.0%} of body weight, "
            f"safety factor {cfg.safety_factor}"
        )
        static = {
            "target_force_n": pressuremap.static_target_force(cfg),
            "regions": {},
        }
        for region, trace in sorted(candidate.static_traces.items()):
            plateau = pressuremap.static_plateau(trace)
            normalized = pressuremap.bw_normalize(plateau, body_mass_kg, g=gravity_mps2)
            block = {
                "plateau_mpa": plateau,
                "normalized_mpa_per_bw": normalized,
            }
            if static_literature_mpa_per_bw and region in static_literature_mpa_per_bw:
                lit = float(static_literature_mpa_per_bw[region])
                block["literature_mpa_per_bw"] = lit
                block["reduction_vs_literature_pct"] = pressuremap.normalized_comparison(normalized, lit)
            static["regions"][region] = block
        if static_literature_mpa_per_bw:
            notes.append(
                "literature normalized pressures are published values for a 75 kg transtibial user "
                "(provenance: external)"
            )

    return ComparisonReport(
        candidate_id=candidate.id,
        reference_id=reference.id,
        mass=mass,
        walking_pressure=walking,
        kinematics=kinematics,
        stance=stance,
        com_velocity=com_velocity,
        static=static,
        provenance_notes=notes,
    )


# --- manifest-driven assembly --------------------------------------------------

def _load_socket_inputs(block: dict, base: Path, role: str) -> SocketInputs:
    for key in ("id", "mass_kg", "gait_trial", "gait_events", "pressure_frames", "pressure_masks", "pressure_cycle"):
        if key not in block:
            raise FileFormatError(f"manifest {role} section is missing {key!r}")
    trial = gait.load_trial(base / block["gait_trial"], base / block["gait_events"])
    seq = pressuremap.load_sequence(base / block["pressure_frames"], base / block["pressure_masks"])
    static_traces = None
    if block.get("static_traces"):
        static_traces = pressuremap.load_static_traces(base / block["static_traces"])
    cycle = tuple(float(x) for x in block["pressure_cycle"])
    if len(cycle) != 2:
        raise FileFormatError(f"manifest {role}.pressure_cycle must be [t0, t1]")
    return SocketInputs(
        id=str(block["id"]),
        mass_kg=float(block["mass_kg"]),
        trial=trial,
        pressure=seq,
        pressure_cycle=cycle,
        static_traces=static_traces,
    )


def build_comparison_from_manifest(manifest_path) -> ComparisonReport:
    """Assemble a comparison from a YAML manifest; paths resolve relative to it."""
    manifest_path = Path(manifest_path)
    try:
        doc = yaml.safe_load(manifest_path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise FileFormatError(f"cannot parse manifest {manifest_path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError("manifest must be a mapping")
    for key in ("candidate", "reference", "body_mass_kg"):
        if key not in doc:
            raise FileFormatError(f"manifest is missing {key!r}")
    base = manifest_path.parent

    static_cfg = None
    if "static_test" in doc:
        raw = doc["static_test"]
        static_cfg = pressuremap.StaticTestConfig(
            body_mass_kg=float(doc["body_mass_kg"]),
            load_fraction=float(raw.get("load_fraction", 0.45)),
            safety_factor=float(raw.get("safety_factor", 1.5)),
            g=float(doc.get("gravity_mps2", pressuremap.STANDARD_GRAVITY)),
        )

    literature = doc.get("static_literature_mpa_per_bw")
    if literature is not None:
        literature = {str(k): float(v) for k, v in literature.items() if k != "source"}

    return build_comparison(
        candidate=_load_socket_inputs(doc["candidate"], base, "candidate"),
        reference=_load_socket_inputs(doc["reference"], base, "reference"),
        body_mass_kg=float(doc["body_mass_kg"]),
        static_literature_mpa_per_bw=literature,
        static_test=static_cfg,
        pressure_regions=tuple(doc.get("pressure_regions", PRESSURE_REGIONS_DEFAULT)),
        gravity_mps2=float(doc.get("gravity_mps2", pressuremap.STANDARD_GRAVITY)),
    )
