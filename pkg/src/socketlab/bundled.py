"""Paths of the bundled data files.

Everything under ``socketlab/data`` except the catalog is produced by
``tools/make_fixtures.py``; regenerate with that script rather than editing
files by hand.
"""

from pathlib import Path

_DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    path = _DATA / name
    if not path.exists():
        raise FileNotFoundError(f"no bundled data file named {name!r}")
    return path


def stress_tables_path() -> Path:
    return data_path("stress_tables.csv")


def ppt_matrix_path() -> Path:
    return data_path("ppt_matrix.csv")


def loadcell_calibration_path() -> Path:
    return data_path("loadcell_cal.csv")


def replay_ramp_path() -> Path:
    return data_path("replay_ramp.csv")


def replay_overload_path() -> Path:
    return data_path("replay_overload.csv")


def replay_raw_path() -> Path:
    return data_path("replay_ramp_raw.csv")


def compare_manifest_path() -> Path:
    return data_path("compare_manifest.yaml")
