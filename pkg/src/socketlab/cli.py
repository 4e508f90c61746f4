"""Command-line entry points.

``socketlab serve`` runs the acquisition service; the other subcommands are
batch pipelines writing structured output files (units declared in field
names) under ``--out``.
"""

import json
from pathlib import Path

import click

from . import bundled, gait, ppt, pressuremap, report, signals, structural
from .catalog import default_catalog_path, load_catalog
from .errors import SocketLabError


def _fail(exc) -> "click.ClickException":
    return click.ClickException(str(exc))


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    click.echo(f"wrote {path}")


@click.group()
def main():
    """Socket design and evaluation workbench."""


# -- serve -------------------------------------------------------------------

@main.command()
@click.option("--catalog", "catalog_path", type=click.Path(exists=True, dir_okay=False),
              default=str(default_catalog_path()), show_default="bundled catalog")
@click.option("--replay", "replay_path", type=click.Path(exists=True, dir_okay=False),
              default=str(bundled.replay_ramp_path()), show_default="bundled 0-200 N ramp")
@click.option("--rate", "rate_hz", type=float, default=None,
              help="Stream rate in Hz; 0 streams unpaced; default paces by the file's timestamps.")
@click.option("--port", type=int, default=8430, envvar="SOCKETLAB_PORT", show_default=True,
              help="Listen port (SOCKETLAB_PORT overrides).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--rest-scale", type=float, default=1.0, show_default=True,
              help="Scale the 900/600 s rest protocol (0 skips rests; for bench runs).")
@click.option("--calibration", "calibration_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="raw,force_n pairs CSV; required for raw replay streams.")
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Directory with the built operator console; served at /.")
def serve(catalog_path, replay_path, rate_hz, port, host, rest_scale, calibration_path, ui_dir):
    """Run the local session service (HTTP API + event stream)."""
    import uvicorn

    from .service import ServiceConfig, SessionManager, create_app

    try:
        catalog = load_catalog(catalog_path)
        replay = ppt.load_force_stream(replay_path)
        calibration = ppt.IDENTITY_CALIBRATION
        if calibration_path is not None:
            pairs = _load_calibration_pairs(Path(calibration_path))
            calibration = ppt.calibrate(pairs)
        if replay.kind == "raw" and calibration_path is None:
            raise SocketLabError("raw replay streams need --calibration")
        config = ServiceConfig(catalog=catalog, replay=replay, rate_hz=rate_hz,
                               rest_scale=rest_scale, calibration=calibration)
    except (OSError, SocketLabError, ValueError) as exc:
        raise _fail(exc)

    app = create_app(SessionManager(config), ui_dir=ui_dir)
    click.echo(f"serving on http://{host}:{port} (replay={replay_path}, rest_scale={rest_scale})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


def _load_calibration_pairs(path: Path):
    import csv
    import io

    text = path.read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["raw", "force_n"]:
        raise SocketLabError("calibration file must start with header raw,force_n")
    return [(float(r), float(f)) for r, f in reader if r]


# -- design sweep ---------------------------------------------------------------

@main.group()
def design():
    """Wall-thickness design studies."""


@design.command("sweep")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True, dir_okay=False),
              default=str(default_catalog_path()), show_default="bundled catalog")
@click.option("--stress-tables", "stress_path", type=click.Path(exists=True, dir_okay=False),
              default=str(bundled.stress_tables_path()), show_default="bundled recorded sweep",
              help="Recorded stresses (region,thickness_mm,stress_mpa); drives the data mode.")
@click.option("--analytic", is_flag=True, help="Use the cylinder model instead of recorded stresses.")
@click.option("--model", type=click.Choice(structural.SHELL_MODELS), default="thick_wall",
              show_default=True)
@click.option("--thicknesses", default="3,4,5,6,7.5,10",
              show_default=True, help="Analytic-mode thickness grid, mm.")
@click.option("--tol", "similarity_tol", type=float, default=structural.DEFAULT_SIMILARITY_TOL_MPA,
              show_default=True, help="Stress similarity tolerance for merging, MPa.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True)
def design_sweep(catalog_path, stress_path, analytic, model, thicknesses, similarity_tol, out_dir):
    """Sweep wall thicknesses per region and derive the candidate set."""
    try:
        catalog = load_catalog(catalog_path)
        if analytic:
            grid = [float(x) for x in thicknesses.split(",") if x.strip()]
            result = structural.design_candidates(catalog, thicknesses_mm=grid, model=model,
                                                  similarity_tol_mpa=similarity_tol)
        else:
            tables = structural.load_stress_tables(stress_path)
            result = structural.design_candidates(catalog, stress_tables=tables,
                                                  similarity_tol_mpa=similarity_tol)
    except (OSError, SocketLabError, ValueError, KeyError) as exc:
        raise _fail(exc)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = {"combined_candidates_mm": list(result.combined_mm), "regions": {}}
    for name, sweep in sorted(result.by_region.items()):
        csv_path = out / f"sweep_{name.lower()}.csv"
        csv_path.write_text(structural.sweep_rows_to_csv(sweep.rows), encoding="utf-8")
        click.echo(f"wrote {csv_path}")
        payload["regions"][name] = {
            "merged_mm": list(sweep.merged_mm),
            "candidates_mm": list(sweep.candidates_mm),
        }
    _write_json(out / "design_candidates.json", payload)
    click.echo(f"combined candidate set [mm]: {', '.join(f'{t:g}' for t in result.combined_mm)}")


# -- ppt select -------------------------------------------------------------------

@main.group("ppt")
def ppt_group():
    """Pain-threshold matrix tools."""


@ppt_group.command("select")
@click.option("--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False),
              default=str(bundled.ppt_matrix_path()), show_default="bundled matrix")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True, dir_okay=False),
              default=str(default_catalog_path()), show_default="bundled catalog")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True)
def ppt_select(matrix_path, catalog_path, out_dir):
    """Pick material/thickness per region from a threshold matrix."""
    try:
        catalog = load_catalog(catalog_path)
        matrix = ppt.PPTMatrix.load(matrix_path)
        selection = ppt.select_materials(matrix, catalog.materials)
    except (OSError, SocketLabError, ValueError) as exc:
        raise _fail(exc)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = {
        "per_region": {
            region: {"material": c.material, "thickness_mm": c.thickness_mm, "ppt_mpa": c.ppt_mpa}
            for region, c in selection.per_region.items()
        },
        "rest_of_socket": {"material": selection.rest_of_socket[0],
                           "thickness_mm": selection.rest_of_socket[1]},
    }
    _write_json(out / "selection.json", payload)
    for region, c in selection.per_region.items():
        click.echo(f"{region}: {c.material} @ {c.thickness_mm:g} mm (PPT {c.ppt_mpa:g} MPa)")


# -- gait analyze --------------------------------------------------------------------

@main.group("gait")
def gait_group():
    """Walking-trial kinematics."""


@gait_group.command("analyze")
@click.option("--trial", "trial_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--events", "events_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--label", default="trial", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True)
def gait_analyze(trial_path, events_path, label, out_dir):
    """Stance, RoM, interlimb symmetry, and CoM velocity for one trial."""
    try:
        trial = gait.load_trial(trial_path, events_path)
        ps = gait.stance_percent(gait.segment_cycles(trial, "PS"))
        ss = gait.stance_percent(gait.segment_cycles(trial, "SS"))
        payload = {
            "label": label,
            "stance": {"ps_pct": ps, "ss_pct": ss, "asymmetry_pct": gait.stance_asymmetry(ps, ss)},
            "com_peak_velocity_mps": gait.com_velocity_metric([trial]),
            "joints": {
                joint: {
                    "rom_ps_deg": gait.rom(trial, joint, "PS", window="stance"),
                    "rom_ss_deg": gait.rom(trial, joint, "SS", window="stance"),
                    "symmetry_pct": gait.joint_symmetry(trial, joint, window="stance"),
                }
                for joint in gait.JOINTS
            },
        }
    except (OSError, SocketLabError, ValueError, KeyError) as exc:
        raise _fail(exc)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / f"gait_{label}.json", payload)


# -- pressure analyze ------------------------------------------------------------------

@main.group("pressure")
def pressure_group():
    """Pressure-map analytics."""


@pressure_group.command("analyze")
@click.option("--frames", "frames_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--masks", "masks_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--cycle", nargs=2, type=float, required=True, metavar="T0 T1",
              help="Gait-cycle bounds in seconds.")
@click.option("--region", "regions", multiple=True, default=("Tibia", "Fibula"), show_default=True)
@click.option("--statistic", type=click.Choice(["mean", "peak_cell"]), default="mean", show_default=True)
@click.option("--label", default="walk", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True)
def pressure_analyze(frames_path, masks_path, cycle, regions, statistic, label, out_dir):
    """Per-region cycle pressure curves and their peaks."""
    try:
        seq = pressuremap.load_sequence(frames_path, masks_path)
        curves = {region: pressuremap.region_curve(seq, region, tuple(cycle), statistic)
                  for region in regions}
    except (OSError, SocketLabError, ValueError) as exc:
        raise _fail(exc)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["percent," + ",".join(f"{r.lower()}_kpa" for r in regions)]
    for k in range(signals.CYCLE_SAMPLES):
        lines.append(f"{k}," + ",".join(repr(float(curves[r].values[k])) for r in regions))
    curves_path = out / f"pressure_{label}_curves.csv"
    curves_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"wrote {curves_path}")

    payload = {
        region: {"peak_kpa": signals.peak(curve).value, "peak_pct": signals.peak(curve).percent}
        for region, curve in curves.items()
    }
    _write_json(out / f"pressure_{label}_peaks.json", payload)


# -- report compare ---------------------------------------------------------------------

@main.group("report")
def report_group():
    """Comparison reports."""


@report_group.command("compare")
@click.option("--manifest", "manifest_path", type=click.Path(exists=True, dir_okay=False),
              default=str(bundled.compare_manifest_path()), show_default="bundled fixture manifest")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True)
def report_compare(manifest_path, out_dir):
    """Candidate-vs-reference comparison over a manifest of input files."""
    try:
        result = report.build_comparison_from_manifest(manifest_path)
    except (OSError, SocketLabError, ValueError) as exc:
        raise _fail(exc)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "comparison.json", result.to_dict())

    click.echo(f"{result.candidate_id} vs {result.reference_id}")
    click.echo(f"  mass delta: {result.mass['delta_pct']:+.1f}%")
    for region, block in result.walking_pressure.items():
        click.echo(
            f"  {region}: peak {block['candidate_peak_kpa']:.2f} kPa @ {block['candidate_peak_pct']:.0f}% "
            f"vs {block['reference_peak_kpa']:.2f} kPa @ {block['reference_peak_pct']:.0f}% "
            f"(peak -{block['peak_reduction_pct']:.1f}%, mean -{block['mean_reduction_pct']:.1f}%, "
            f"speed-normalized -{block['velocity_normalized_reduction_pct']:.1f}%)"
        )
    for joint, block in result.kinematics.items():
        click.echo(
            f"  {joint} symmetry: {block['candidate_symmetry_pct']:.2f}% vs "
            f"{block['reference_symmetry_pct']:.2f}%"
        )
    stance = result.stance["candidate"]
    click.echo(f"  stance PS/SS: {stance['ps_pct']:.1f}%/{stance['ss_pct']:.1f}% "
               f"(asymmetry {stance['asymmetry_pct']:+.2f}%)")
    com = result.com_velocity
    click.echo(f"  CoM peak velocity: {com['candidate_mps']:.2f} vs {com['reference_mps']:.2f} m/s")
    if result.static is not None:
        click.echo(f"  static target force: {result.static['target_force_n']:.1f} N")


if __name__ == "__main__":
    main()
