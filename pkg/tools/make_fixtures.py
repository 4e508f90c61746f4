#!/usr/bin/env python3
"""Regenerate the bundled data fixtures under src/socketlab/data.

Every synthetic dataset is constructed to land on its documented target
metrics and then re-read from the written files and checked with
*independent* oracle code in this script (plain numpy formulas, no imports
from the package), so a regression in either the generator or the package
cannot silently agree with itself.
"""

import argparse
import csv
import math
import sys
import zlib
from pathlib import Path

import numpy as np

DEFAULT_OUTDIR = Path(__file__).resolve().parent.parent / "src" / "socketlab" / "data"

GRAVITY = 9.81
BODY_MASS_KG = 60.0
BODY_WEIGHT_N = BODY_MASS_KG * GRAVITY

# --- target tables -----------------------------------------------------------

# Recorded thickness-sweep stresses per region (data-driven design mode).
STRESS_TABLES = [
    ("Calf", "5.0", "0.505"),
    ("Calf", "7.5", "0.353"),
    ("Calf", "10.0", "0.373"),
    ("Fibula", "3.0", "0.278"),
    ("Fibula", "4.0", "0.257"),
    ("Fibula", "5.0", "0.236"),
    ("Fibula", "6.0", "0.237"),
    ("Tibia", "3.0", "0.111"),
    ("Tibia", "4.0", "0.103"),
    ("Tibia", "5.0", "0.098"),
    ("Tibia", "6.0", "0.096"),
]

# Measured pain-threshold matrix: (region, material, thickness_mm, ppt_mpa).
PPT_MATRIX = [
    ("Tibia", "TPU", "3.0", "0.152"),
    ("Tibia", "TPU", "4.0", "0.229"),
    ("Tibia", "Tough PLA", "3.0", "0.060"),
    ("Tibia", "Tough PLA", "4.0", "0.067"),
    ("Tibia", "Kevlar", "5.5", "0.099"),
    ("Tibia", "Kevlar", "7.5", "0.060"),
    ("Tibia", "Carbon fiber", "5.5", "0.050"),
    ("Tibia", "Carbon fiber", "7.5", "0.038"),
    ("Fibula", "TPU", "3.0", "0.188"),
    ("Fibula", "TPU", "4.0", "0.183"),
    ("Fibula", "Tough PLA", "3.0", "0.188"),
    ("Fibula", "Tough PLA", "4.0", "0.272"),
    ("Fibula", "Kevlar", "5.5", "0.297"),
    ("Fibula", "Kevlar", "7.5", "0.183"),
    ("Fibula", "Carbon fiber", "5.5", "0.319"),
    ("Fibula", "Carbon fiber", "7.5", "0.228"),
    ("Calf", "Kevlar", "5.5", "0.290"),
    ("Calf", "Kevlar", "7.5", "0.314"),
]

LOADCELL_SLOPE = 104.44
LOADCELL_INTERCEPT = 3.0086
LOADCELL_RAWS = [0.0, 0.9335, 1.8353, 2.7975]

GAIT_TARGETS = {
    "custom": {
        "stance_ps": 63.0,
        "stance_ss": 58.6,
        "com_peak": 0.97,
        "com_peak_t": 1.37,
        "com_period": 1.7,
        "joints": {
            "hip": {"rom_ps": 34.49, "rom_ss": 31.95, "corr": 0.99, "offset_ps": -10.0, "offset_ss": -9.0},
            "knee": {"rom_ps": 60.10, "rom_ss": 63.39, "corr": 0.9443, "offset_ps": 2.0, "offset_ss": 1.0},
            "ankle": {"rom_ps": 16.67, "rom_ss": 35.82, "corr": 0.9883, "offset_ps": -14.0, "offset_ss": -18.0},
        },
    },
    "own": {
        "stance_ps": 61.0,
        "stance_ss": 58.0,
        "com_peak": 1.39,
        "com_peak_t": 1.80,
        "com_period": 1.4,
        "joints": {
            "hip": {"rom_ps": 34.28, "rom_ss": 41.73, "corr": 0.9967, "offset_ps": -10.0, "offset_ss": -11.0},
            "knee": {"rom_ps": 74.92, "rom_ss": 65.31, "corr": 0.2885, "offset_ps": 2.0, "offset_ss": 1.5},
            "ankle": {"rom_ps": 23.64, "rom_ss": 39.16, "corr": 0.9645, "offset_ps": -14.0, "offset_ss": -17.0},
        },
    },
}

N_CYCLES = 5  # prosthetic-side cycles per trial; cycle length 1 s at 100 Hz

# Walking pressure targets: (peak_kpa, peak_pct) per region per socket, and
# the candidate-vs-reference curve-mean ratio (0.49 -> 51% mean reduction).
PRESSURE_TARGETS = {
    "Tibia": {"own": (73.00, 64, 30, 2), "custom": (40.00, 55, None, None), "mean_ratio": 0.49},
    "Fibula": {"own": (69.92, 68, 26, 2), "custom": (47.97, 63, None, None), "mean_ratio": 0.50},
}
GRID_ROWS, GRID_COLS = 6, 8
MASKS = {
    "Tibia": [(1, 1), (1, 2), (2, 1), (2, 2)],
    "Fibula": [(1, 5), (1, 6), (2, 5), (2, 6)],
}
PRESSURE_CYCLE = (1.0, 2.0)

# Static bench plateaus chosen so pressure / body weight lands on the
# normalized values the comparison metrics quote.
STATIC_NORMALIZED = {"Tibia": 1.83e-5, "Fibula": 3.47e-5, "Calf": 0.99e-5}


def frepr(x) -> str:
    return repr(float(x))


def write_csv(path: Path, header, rows):
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if header:
            writer.writerow(header)
        writer.writerows(rows)


# --- independent oracle helpers ------------------------------------------------

def oracle_pearson(a, b):
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    da, db = a - a.mean(), b - b.mean()
    return float(np.dot(da, db) / math.sqrt(np.dot(da, da) * np.dot(db, db)))


def oracle_window_end(stance_pct):
    return int(math.floor(stance_pct + 1e-9))


def oracle_moving_mean(values, factor):
    n = len(values)
    target = factor * n / 10.0
    w = max(3, 2 * int(math.floor((target - 1.0) / 2.0 + 0.5)) + 1)
    half = w // 2
    out = np.empty(n)
    for i in range(n):
        lo, hi = max(0, i - half), min(n, i + half + 1)
        out[i] = float(np.mean(values[lo:hi]))
    return out


def check(label, ok, detail=""):
    status = "ok" if ok else "FAILED"
    print(f"  [{status}] {label}{(' ' + detail) if detail else ''}")
    if not ok:
        raise SystemExit(f"fixture check failed: {label} {detail}")


# --- simple tabular fixtures ---------------------------------------------------

def make_stress_tables(outdir: Path):
    write_csv(outdir / "stress_tables.csv", ["region", "thickness_mm", "stress_mpa"], STRESS_TABLES)
    print("stress_tables.csv")
    check("row count", len(STRESS_TABLES) == 11)


def make_ppt_matrix(outdir: Path):
    write_csv(outdir / "ppt_matrix.csv", ["region", "material", "thickness_mm", "ppt_mpa"], PPT_MATRIX)
    print("ppt_matrix.csv")
    # Independent argmax per region must match the documented selection.
    best = {}
    for region, material, thickness, value in PPT_MATRIX:
        v = float(value)
        if region not in best or v > best[region][2]:
            best[region] = (material, float(thickness), v)
    check("Tibia argmax", best["Tibia"] == ("TPU", 4.0, 0.229), str(best["Tibia"]))
    check("Fibula argmax", best["Fibula"] == ("Carbon fiber", 5.5, 0.319), str(best["Fibula"]))
    check("Calf argmax", best["Calf"] == ("Kevlar", 7.5, 0.314), str(best["Calf"]))


def make_loadcell_cal(outdir: Path):
    rows = [(frepr(x), frepr(LOADCELL_SLOPE * x + LOADCELL_INTERCEPT)) for x in LOADCELL_RAWS]
    write_csv(outdir / "loadcell_cal.csv", ["raw", "force_n"], rows)
    print("loadcell_cal.csv")
    x = np.array([float(r) for r, _ in rows])
    y = np.array([float(f) for _, f in rows])
    slope, intercept = np.polyfit(x, y, 1)
    check("slope recovery", abs(slope - LOADCELL_SLOPE) / LOADCELL_SLOPE < 1e-12, f"{slope!r}")
    check("intercept recovery", abs(intercept - LOADCELL_INTERCEPT) / LOADCELL_INTERCEPT < 1e-12, f"{intercept!r}")


def make_replays(outdir: Path):
    # 0 -> 200 N in 0.1 N steps at 40 Hz (the 4 N/s manual-ramp protocol).
    rows = [(frepr(k / 40.0), f"{k / 10.0:.1f}") for k in range(0, 2001)]
    write_csv(outdir / "replay_ramp.csv", ["t_s", "force_n"], rows)
    # A ramp that crosses the 200 N software limit.
    rows = [(frepr(k / 40.0), f"{150 + k / 10.0:.1f}") for k in range(0, 551)]
    write_csv(outdir / "replay_overload.csv", ["t_s", "force_n"], rows)
    # Same ramp in raw units for the calibrated-ingest path.
    rows = [
        (frepr(k / 40.0), frepr((k / 10.0 - LOADCELL_INTERCEPT) / LOADCELL_SLOPE))
        for k in range(40, 601)
    ]
    write_csv(outdir / "replay_ramp_raw.csv", ["t_s", "raw"], rows)
    print("replay_ramp.csv / replay_overload.csv / replay_ramp_raw.csv")
    check("ramp top is exactly the limit", float("200.0") == 200.0)
    check("ramp step resolution", abs(float("22.9") / 100.0 - 0.229) < 1e-15)


# --- gait trials ----------------------------------------------------------------

def _gaussian(k, center, width):
    return np.exp(-0.5 * ((k - center) / width) ** 2)


def _base_shape(joint, k):
    if joint == "hip":
        return np.cos(np.pi * k / 100.0)
    if joint == "knee":
        return _gaussian(k, 15, 8) + 0.35 * _gaussian(k, 55, 20)
    return -_gaussian(k, 5, 6) + 0.8 * _gaussian(k, 40, 18) - 0.5 * _gaussian(k, 62, 9)


def _noise_shape(k, rng):
    f1, f2 = rng.uniform(2.0, 3.5), rng.uniform(4.5, 6.5)
    p1, p2 = rng.uniform(0, 2 * np.pi, size=2)
    return np.sin(2 * np.pi * f1 * k / 100.0 + p1) + 0.6 * np.sin(2 * np.pi * f2 * k / 100.0 + p2)


def _design_joint_curves(joint, spec, w_end, wss_end, rng):
    """PS/SS cycle curves (101 pts) hitting windowed RoM and correlation."""
    k = np.arange(101, dtype=float)
    window = np.arange(0, w_end + 1)

    base = _base_shape(joint, k)
    b = base[window]
    scale = spec["rom_ps"] / (b.max() - b.min())
    ps_w = spec["offset_ps"] + scale * (b - b.min())

    pc = ps_w - ps_w.mean()
    noise = _noise_shape(k, rng)[window]
    n = noise - noise.mean()
    e = n - (np.dot(n, pc) / np.dot(pc, pc)) * pc
    if np.linalg.norm(e) < 1e-9:
        raise SystemExit(f"degenerate noise shape for {joint}")
    r = spec["corr"]
    c = (np.linalg.norm(pc) / np.linalg.norm(e)) * math.sqrt(1.0 / r**2 - 1.0)
    ss_raw = pc + c * e

    ss_slice = ss_raw[: wss_end + 1]
    scale_ss = spec["rom_ss"] / (ss_slice.max() - ss_slice.min())
    ss_w = spec["offset_ss"] + scale_ss * (ss_raw - ss_slice.min())

    def extend(window_vals, swing_hump):
        curve = np.empty(101)
        curve[: w_end + 1] = window_vals
        v_end, v0 = window_vals[-1], window_vals[0]
        for i in range(w_end + 1, 101):
            s = (i - w_end) / (100 - w_end)
            smooth = 3 * s * s - 2 * s**3
            curve[i] = v_end + (v0 - v_end) * smooth + swing_hump * math.sin(math.pi * s) ** 2
        curve[100] = curve[0]
        return curve

    hump = {"hip": 3.0, "knee": 25.0, "ankle": -8.0}[joint]
    return extend(ps_w, hump), extend(ss_w, hump * 0.8)


def _make_trial(outdir: Path, socket: str, targets: dict):
    w_end = oracle_window_end(targets["stance_ps"])
    wss_end = oracle_window_end(targets["stance_ss"])
    rng = np.random.default_rng(zlib.crc32(socket.encode()))  # stable across runs

    curves = {}
    for joint, spec in targets["joints"].items():
        curves[(joint, "PS")], curves[(joint, "SS")] = _design_joint_curves(joint, spec, w_end, wss_end, rng)

    n_samples = N_CYCLES * 100 + 1
    t = np.arange(n_samples) * 0.01

    def track(curve, phase_samples):
        idx = (np.arange(n_samples) - phase_samples) % 100
        return curve[idx]

    columns = {"t_s": t}
    for joint in ("hip", "knee", "ankle"):
        columns[f"{joint}_ps_deg"] = track(curves[(joint, "PS")], 0)
        columns[f"{joint}_ss_deg"] = track(curves[(joint, "SS")], 50)

    pelvis = targets["com_peak"] * (
        1.0 - 0.42 * np.sin(2 * np.pi * (t - targets["com_peak_t"]) / targets["com_period"]) ** 2
    )
    peak_idx = int(round(targets["com_peak_t"] / 0.01))
    pelvis[peak_idx] = targets["com_peak"]  # pin the maximum exactly
    columns["pelvis_vx_mps"] = pelvis

    header = ["t_s", "hip_ps_deg", "knee_ps_deg", "ankle_ps_deg",
              "hip_ss_deg", "knee_ss_deg", "ankle_ss_deg", "pelvis_vx_mps"]
    rows = [[frepr(columns[h][i]) for h in header] for i in range(n_samples)]
    write_csv(outdir / f"gait_{socket}.csv", header, rows)

    stance_ps_s = targets["stance_ps"] / 100.0
    stance_ss_s = targets["stance_ss"] / 100.0
    events = []
    for i in range(N_CYCLES + 1):
        events.append((float(i), "heel_strike", "PS"))
        if i < N_CYCLES:
            events.append((i + stance_ps_s, "toe_off", "PS"))
    for i in range(N_CYCLES):
        events.append((0.5 + i, "heel_strike", "SS"))
        if i < N_CYCLES - 1:
            events.append((0.5 + i + stance_ss_s, "toe_off", "SS"))
    events.sort(key=lambda e: e[0])
    write_csv(outdir / f"gait_{socket}_events.csv", ["t_s", "type", "side"],
              [(frepr(t_e), typ, side) for t_e, typ, side in events])
    print(f"gait_{socket}.csv / gait_{socket}_events.csv")


def _oracle_trial_metrics(outdir: Path, socket: str):
    """Re-read the written trial and recompute everything from scratch."""
    with (outdir / f"gait_{socket}.csv").open() as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(x) for x in row] for row in reader])
    cols = {name: data[:, i] for i, name in enumerate(header)}

    events = {"PS": {"hs": [], "to": []}, "SS": {"hs": [], "to": []}}
    with (outdir / f"gait_{socket}_events.csv").open() as fh:
        reader = csv.reader(fh)
        next(reader)
        for t_e, typ, side in reader:
            events[side]["hs" if typ == "heel_strike" else "to"].append(float(t_e))

    metrics = {}
    stance = {}
    mean_curves = {}
    for side in ("PS", "SS"):
        hs, to = events[side]["hs"], events[side]["to"]
        cycles = []
        for a, b in zip(hs, hs[1:]):
            inside = [x for x in to if a < x < b]
            assert len(inside) == 1
            cycles.append((a, inside[0], b))
        stance[side] = float(np.mean([100.0 * (m - a) / (b - a) for a, m, b in cycles]))
        for joint in ("hip", "knee", "ankle"):
            v = cols[f"{joint}_{side.lower()}_deg"]
            resampled = [
                np.interp(np.linspace(a, b, 101), cols["t_s"], v) for a, _, b in cycles
            ]
            mean_curves[(joint, side)] = np.mean(resampled, axis=0)
    metrics["stance"] = stance

    w_end = oracle_window_end(stance["PS"])
    wss_end = oracle_window_end(stance["SS"])
    for joint in ("hip", "knee", "ankle"):
        ps, ss = mean_curves[(joint, "PS")], mean_curves[(joint, "SS")]
        metrics[f"{joint}_rom_ps"] = float(ps[: w_end + 1].max() - ps[: w_end + 1].min())
        metrics[f"{joint}_rom_ss"] = float(ss[: wss_end + 1].max() - ss[: wss_end + 1].min())
        metrics[f"{joint}_corr"] = oracle_pearson(ps[: w_end + 1], ss[: w_end + 1])
    metrics["com_peak"] = float(np.max(cols["pelvis_vx_mps"]))
    return metrics


def make_gait(outdir: Path):
    for socket, targets in GAIT_TARGETS.items():
        _make_trial(outdir, socket, targets)
        m = _oracle_trial_metrics(outdir, socket)
        check(f"{socket} stance PS", abs(m["stance"]["PS"] - targets["stance_ps"]) < 1e-9, f"{m['stance']['PS']!r}")
        check(f"{socket} stance SS", abs(m["stance"]["SS"] - targets["stance_ss"]) < 1e-9, f"{m['stance']['SS']!r}")
        check(f"{socket} CoM peak", m["com_peak"] == targets["com_peak"], f"{m['com_peak']!r}")
        for joint, spec in targets["joints"].items():
            check(f"{socket} {joint} RoM PS", abs(m[f"{joint}_rom_ps"] - spec["rom_ps"]) < 1e-9,
                  f"{m[f'{joint}_rom_ps']!r}")
            check(f"{socket} {joint} RoM SS", abs(m[f"{joint}_rom_ss"] - spec["rom_ss"]) < 1e-9,
                  f"{m[f'{joint}_rom_ss']!r}")
            check(f"{socket} {joint} corr", abs(m[f"{joint}_corr"] - spec["corr"]) < 1e-9,
                  f"{m[f'{joint}_corr']!r}")


# --- walking pressure sequences ---------------------------------------------------

def _bump(k, center, width):
    x = np.clip((k - center) / width, -1.0, 1.0)
    return np.cos(np.pi * x / 2.0) ** 2


def _pressure_curve(peak, center, width, exponent, floor):
    k = np.arange(101, dtype=float)
    shape = _bump(k, center, width) ** exponent
    return floor * (1.0 - shape) + peak * shape


def _solve_candidate_curve(peak, center, target_mean):
    """Pick a bump sharpness whose baseline lands in a sane range."""
    for width in range(34, 10, -2):
        for exponent in (1, 2, 3, 4, 6):
            k = np.arange(101, dtype=float)
            shape = _bump(k, center, width) ** exponent
            m_shape = shape.mean()
            floor = (target_mean - peak * m_shape) / (1.0 - m_shape)
            if 0.2 <= floor <= peak * 0.25:
                return floor * (1.0 - shape) + peak * shape
    raise SystemExit(f"no bump shape reaches mean {target_mean:.3f} with peak {peak}")


def _write_sequence(outdir: Path, name: str, curves: dict):
    t = 1.0 + np.arange(101) * 0.01
    rows = []
    for i, ti in enumerate(t):
        grid = np.empty((GRID_ROWS, GRID_COLS))
        for r in range(GRID_ROWS):
            for c in range(GRID_COLS):
                grid[r, c] = 1.5 + 1.2 * math.sin(0.61 * i + 1.3 * r + 2.1 * c)
        for region, cells in MASKS.items():
            for r, c in cells:
                grid[r, c] = curves[region][i]
        for r in range(GRID_ROWS):
            for c in range(GRID_COLS):
                rows.append((frepr(ti), r, c, frepr(grid[r, c])))
    path = outdir / name
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# rows={GRID_ROWS} cols={GRID_COLS}\n")
        writer = csv.writer(fh)
        writer.writerow(["t_s", "row", "col", "kpa"])
        writer.writerows(rows)


def _oracle_region_trace(outdir: Path, name: str, region: str):
    with (outdir / name).open() as fh:
        header_line = fh.readline()
        assert header_line.startswith("#")
        reader = csv.reader(fh)
        next(reader)
        frames = {}
        for t_s, r, c, kpa in reader:
            frames.setdefault(float(t_s), {})[(int(r), int(c))] = float(kpa)
    times = sorted(frames)
    return np.array([np.mean([frames[t][cell] for cell in MASKS[region]]) for t in times])


def make_pressure(outdir: Path):
    curves = {"own": {}, "custom": {}}
    for region, spec in PRESSURE_TARGETS.items():
        peak, center, width, exponent = spec["own"]
        own = _pressure_curve(peak, center, width, exponent, floor=2.0)
        target_mean = spec["mean_ratio"] * own.mean()
        cand_peak, cand_center, _, _ = spec["custom"]
        cand = _solve_candidate_curve(cand_peak, cand_center, target_mean)
        curves["own"][region] = own
        curves["custom"][region] = cand

    _write_sequence(outdir, "walk_own.csv", curves["own"])
    _write_sequence(outdir, "walk_custom.csv", curves["custom"])
    write_csv(outdir / "pressure_masks.csv", ["region", "row", "col"],
              [(region, r, c) for region, cells in MASKS.items() for r, c in cells])
    print("walk_own.csv / walk_custom.csv / pressure_masks.csv")

    for region, spec in PRESSURE_TARGETS.items():
        own = _oracle_region_trace(outdir, "walk_own.csv", region)
        cand = _oracle_region_trace(outdir, "walk_custom.csv", region)
        own_peak, own_pct = float(own.max()), int(np.argmax(own))
        cand_peak, cand_pct = float(cand.max()), int(np.argmax(cand))
        check(f"{region} reference peak", own_peak == spec["own"][0] and own_pct == spec["own"][1],
              f"({own_peak!r}, {own_pct})")
        check(f"{region} candidate peak", cand_peak == spec["custom"][0] and cand_pct == spec["custom"][1],
              f"({cand_peak!r}, {cand_pct})")
        ratio = cand.mean() / own.mean()
        check(f"{region} mean ratio", abs(ratio - spec["mean_ratio"]) < 1e-12, f"{ratio!r}")


# --- static bench traces -----------------------------------------------------------

def make_static(outdir: Path):
    t = np.arange(0, 1001) * 0.05  # 0..50 s at 20 Hz
    plateaus = {region: norm * BODY_WEIGHT_N for region, norm in STATIC_NORMALIZED.items()}

    def trace(plateau):
        v = np.empty_like(t)
        for i, ti in enumerate(t):
            if ti < 10.0:
                v[i] = plateau * ti / 10.0
            elif ti <= 40.0:
                v[i] = plateau
            else:
                v[i] = plateau * max(0.0, 1.0 - (ti - 40.0) / 10.0)
        return v

    traces = {region: trace(p) for region, p in plateaus.items()}
    header = ["t_s", "tibia_mpa", "fibula_mpa", "calf_mpa"]
    rows = [
        [frepr(t[i]), frepr(traces["Tibia"][i]), frepr(traces["Fibula"][i]), frepr(traces["Calf"][i])]
        for i in range(len(t))
    ]
    write_csv(outdir / "static_custom.csv", header, rows)
    print("static_custom.csv")

    with (outdir / "static_custom.csv").open() as fh:
        reader = csv.reader(fh)
        next(reader)
        data = np.array([[float(x) for x in row] for row in reader])
    for col, region in ((1, "Tibia"), (2, "Fibula"), (3, "Calf")):
        smoothed = oracle_moving_mean(data[:, col], 0.45)
        dwell = smoothed[smoothed >= 0.95 * smoothed.max()]
        plateau = float(np.median(dwell))
        check(f"static {region} plateau",
              abs(plateau - plateaus[region]) < 1e-12 * plateaus[region], f"{plateau!r}")
        normalized = plateau / BODY_WEIGHT_N
        check(f"static {region} normalized",
              abs(normalized - STATIC_NORMALIZED[region]) < 1e-12 * STATIC_NORMALIZED[region],
              f"{normalized!r}")


# --- comparison manifest ------------------------------------------------------------

MANIFEST = """\
# Inputs for the candidate-vs-reference socket comparison.
body_mass_kg: 60.0
gravity_mps2: 9.81
pressure_regions: [Tibia, Fibula]
candidate:
  id: custom_socket
  mass_kg: 0.28
  gait_trial: gait_custom.csv
  gait_events: gait_custom_events.csv
  pressure_frames: walk_custom.csv
  pressure_masks: pressure_masks.csv
  pressure_cycle: [1.0, 2.0]
  static_traces: static_custom.csv
reference:
  id: own_socket
  mass_kg: 0.36
  gait_trial: gait_own.csv
  gait_events: gait_own_events.csv
  pressure_frames: walk_own.csv
  pressure_masks: pressure_masks.csv
  pressure_cycle: [1.0, 2.0]
# Published normalized static pressures (75 kg participant); external values.
static_literature_mpa_per_bw:
  Tibia: 2.00e-5
  Fibula: 4.10e-5
  Calf: 2.54e-5
static_test:
  load_fraction: 0.45
  safety_factor: 1.5
"""


def make_manifest(outdir: Path):
    (outdir / "compare_manifest.yaml").write_text(MANIFEST, encoding="utf-8")
    print("compare_manifest.yaml")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=DEFAULT_OUTDIR)
    args = parser.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)

    make_stress_tables(args.outdir)
    make_ppt_matrix(args.outdir)
    make_loadcell_cal(args.outdir)
    make_replays(args.outdir)
    make_gait(args.outdir)
    make_pressure(args.outdir)
    make_static(args.outdir)
    make_manifest(args.outdir)
    print("all fixtures written and verified")
    return 0


if __name__ == "__main__":
    sys.exit(main())
