"""Material / region / geometry catalog.

One human-editable YAML file with three sections (``materials``, ``regions``,
``geometry``) feeds every other module.  Field names carry explicit units so
a value can never be mistaken for another unit system.  The catalog is
immutable after load and safe to share across threads.
"""

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .errors import CatalogError

REGION_NAMES = ("Tibia", "Fibula", "Calf", "Rest")
SENSITIVITY_CLASSES = ("pressure_sensitive", "pressure_tolerant")


@dataclass(frozen=True)
class PrintProfile:
    infill_percent: float
    infill_pattern: str
    nozzle_mm: float


@dataclass(frozen=True)
class MaterialSpec:
    name: str
    density_kg_m3: float
    youngs_modulus_mpa: float
    poisson_ratio: float
    yield_strength_mpa: float
    sn_curve: tuple  # ((cycles, stress_amplitude_mpa), ...) sorted by cycles
    print_profile: PrintProfile
    strength_provenance: str = "unspecified"
    notes: str = ""


@dataclass(frozen=True)
class RegionSpec:
    name: str
    sensitivity: str
    ppt_constraint_mpa: float
    standing_pressure_mpa: float
    probe_area_mm2: float
    # Contact area the published constraint was measured with; None when the
    # source does not report it (the constraint is then used as published).
    constraint_probe_area_mm2: float | None = None
    min_thickness_mm: float | None = None
    notes: str = ""


@dataclass(frozen=True)
class SocketGeometry:
    inner_diameter_m: float = 0.0962
    height_m: float = 0.16
    thickness_by_region_mm: dict = field(default_factory=dict)

    @property
    def inner_radius_m(self) -> float:
        return self.inner_diameter_m / 2.0


@dataclass(frozen=True)
class Catalog:
    materials: dict  # name -> MaterialSpec
    regions: dict  # name -> RegionSpec
    geometry: SocketGeometry

    def material(self, name: str) -> MaterialSpec:
        try:
            return self.materials[name]
        except KeyError:
            raise KeyError(f"unknown material {name!r}") from None

    def region(self, name: str) -> RegionSpec:
        try:
            return self.regions[name]
        except KeyError:
            raise KeyError(f"unknown region {name!r}") from None


def _material_issues(m: MaterialSpec) -> list:
    where = f"materials[{m.name}]"
    issues = []
    if m.density_kg_m3 <= 0:
        issues.append(f"{where}.density_kg_m3: must be > 0")
    if m.youngs_modulus_mpa <= 0:
        issues.append(f"{where}.youngs_modulus_mpa: must be > 0")
    if not 0.0 < m.poisson_ratio < 0.5:
        issues.append(f"{where}.poisson_ratio: must be in (0, 0.5)")
    if m.yield_strength_mpa <= 0:
        issues.append(f"{where}.yield_strength_mpa: must be > 0")
    if len(m.sn_curve) < 2:
        issues.append(f"{where}.sn_curve: needs at least two (cycles, stress) points")
    else:
        cycles = [c for c, _ in m.sn_curve]
        stresses = [s for _, s in m.sn_curve]
        if any(c <= 0 for c in cycles) or any(s <= 0 for s in stresses):
            issues.append(f"{where}.sn_curve: cycles and stresses must be > 0")
        if any(b <= a for a, b in zip(cycles, cycles[1:])):
            issues.append(f"{where}.sn_curve: cycles must be strictly increasing")
        if any(b >= a for a, b in zip(stresses, stresses[1:])):
            issues.append(f"{where}.sn_curve not monotone: stress must strictly decrease with cycles")
    if m.print_profile.infill_percent <= 0 or m.print_profile.infill_percent > 100:
        issues.append(f"{where}.print_profile.infill_percent: must be in (0, 100]")
    if m.print_profile.nozzle_mm <= 0:
        issues.append(f"{where}.print_profile.nozzle_mm: must be > 0")
    return issues


def _region_issues(r: RegionSpec) -> list:
    where = f"regions[{r.name}]"
    issues = []
    if r.name not in REGION_NAMES:
        issues.append(f"{where}.name: must be one of {', '.join(REGION_NAMES)}")
    if r.sensitivity not in SENSITIVITY_CLASSES:
        issues.append(f"{where}.sensitivity: must be one of {', '.join(SENSITIVITY_CLASSES)}")
    if r.standing_pressure_mpa < 0:
        issues.append(f"{where}.standing_pressure_mpa: must be >= 0")
    if not r.ppt_constraint_mpa > r.standing_pressure_mpa:
        issues.append(f"{where}.ppt_constraint_mpa: must exceed standing_pressure_mpa")
    if r.probe_area_mm2 <= 0:
        issues.append(f"{where}.probe_area_mm2: must be > 0")
    if r.min_thickness_mm is not None and r.min_thickness_mm <= 0:
        issues.append(f"{where}.min_thickness_mm: must be > 0 when given")
    return issues


def _geometry_issues(g: SocketGeometry) -> list:
    issues = []
    if g.inner_diameter_m <= 0:
        issues.append("geometry.inner_diameter_m: must be > 0")
    if g.height_m <= 0:
        issues.append("geometry.height_m: must be > 0")
    for region, thickness in g.thickness_by_region_mm.items():
        if thickness <= 0:
            issues.append(f"geometry.thickness_by_region_mm[{region}]: must be > 0")
    return issues


def validate_catalog(catalog: Catalog) -> list:
    """All validation issues, deterministically ordered; empty means valid."""
    issues = []
    for name in sorted(catalog.materials):
        m = catalog.materials[name]
        if m.name != name:
            issues.append(f"materials[{name}]: key does not match material name {m.name!r}")
        issues.extend(_material_issues(m))
    for name in sorted(catalog.regions):
        r = catalog.regions[name]
        if r.name != name:
            issues.append(f"regions[{name}]: key does not match region name {r.name!r}")
        issues.extend(_region_issues(r))
    issues.extend(_geometry_issues(catalog.geometry))
    return issues


def _require(mapping, key, where):
    if key not in mapping:
        raise CatalogError(f"{where}: missing required field {key!r}")
    return mapping[key]


def _build_material(raw, index):
    where = f"materials[{index}]"
    if not isinstance(raw, dict):
        raise CatalogError(f"{where}: expected a mapping")
    name = str(_require(raw, "name", where))
    where = f"materials[{name}]"
    profile_raw = _require(raw, "print_profile", where)
    profile = PrintProfile(
        infill_percent=float(_require(profile_raw, "infill_percent", f"{where}.print_profile")),
        infill_pattern=str(_require(profile_raw, "infill_pattern", f"{where}.print_profile")),
        nozzle_mm=float(_require(profile_raw, "nozzle_mm", f"{where}.print_profile")),
    )
    sn_raw = _require(raw, "sn_curve", where)
    try:
        sn_curve = tuple((float(c), float(s)) for c, s in sn_raw)
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"{where}.sn_curve: expected [cycles, stress_mpa] pairs") from exc
    return MaterialSpec(
        name=name,
        density_kg_m3=float(_require(raw, "density_kg_m3", where)),
        youngs_modulus_mpa=float(_require(raw, "youngs_modulus_mpa", where)),
        poisson_ratio=float(_require(raw, "poisson_ratio", where)),
        yield_strength_mpa=float(_require(raw, "yield_strength_mpa", where)),
        sn_curve=sn_curve,
        print_profile=profile,
        strength_provenance=str(raw.get("strength_provenance", "unspecified")),
        notes=str(raw.get("notes", "")),
    )


def _build_region(raw, index):
    where = f"regions[{index}]"
    if not isinstance(raw, dict):
        raise CatalogError(f"{where}: expected a mapping")
    name = str(_require(raw, "name", where))
    where = f"regions[{name}]"
    constraint_area = raw.get("constraint_probe_area_mm2")
    min_thickness = raw.get("min_thickness_mm")
    return RegionSpec(
        name=name,
        sensitivity=str(_require(raw, "sensitivity", where)),
        ppt_constraint_mpa=float(_require(raw, "ppt_constraint_mpa", where)),
        standing_pressure_mpa=float(_require(raw, "standing_pressure_mpa", where)),
        probe_area_mm2=float(_require(raw, "probe_area_mm2", where)),
        constraint_probe_area_mm2=None if constraint_area is None else float(constraint_area),
        min_thickness_mm=None if min_thickness is None else float(min_thickness),
        notes=str(raw.get("notes", "")),
    )


def catalog_from_dict(doc: dict) -> Catalog:
    """Build and validate a catalog from a parsed document."""
    if not isinstance(doc, dict):
        raise CatalogError("catalog document must be a mapping")
    for section in ("materials", "regions", "geometry"):
        if section not in doc:
            raise CatalogError(f"catalog is missing the {section!r} section")

    materials = {}
    for i, raw in enumerate(doc["materials"]):
        m = _build_material(raw, i)
        if m.name in materials:
            raise CatalogError(f"materials[{m.name}]: duplicate material name")
        materials[m.name] = m

    regions = {}
    for i, raw in enumerate(doc["regions"]):
        r = _build_region(raw, i)
        if r.name in regions:
            raise CatalogError(f"regions[{r.name}]: duplicate region name")
        regions[r.name] = r

    graw = doc["geometry"]
    geometry = SocketGeometry(
        inner_diameter_m=float(_require(graw, "inner_diameter_m", "geometry")),
        height_m=float(_require(graw, "height_m", "geometry")),
        thickness_by_region_mm={str(k): float(v) for k, v in (graw.get("thickness_by_region_mm") or {}).items()},
    )

    catalog = Catalog(materials=materials, regions=regions, geometry=geometry)
    issues = validate_catalog(catalog)
    if issues:
        raise CatalogError(f"catalog failed validation ({len(issues)} issue(s)): " + "; ".join(issues), issues=issues)
    return catalog


def load_catalog(path) -> Catalog:
    """Load and validate a catalog file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CatalogError(f"cannot parse catalog file {path}: {exc}") from exc
    return catalog_from_dict(doc)


def catalog_to_dict(catalog: Catalog) -> dict:
    """Plain-data form of a catalog; round-trips through catalog_from_dict."""
    materials = []
    for name in catalog.materials:
        m = catalog.materials[name]
        d = asdict(m)
        d["sn_curve"] = [[c, s] for c, s in m.sn_curve]
        materials.append(d)
    regions = [asdict(catalog.regions[name]) for name in catalog.regions]
    return {
        "materials": materials,
        "regions": regions,
        "geometry": asdict(catalog.geometry),
    }


def save_catalog(catalog: Catalog, path) -> None:
    Path(path).write_text(yaml.safe_dump(catalog_to_dict(catalog), sort_keys=False), encoding="utf-8")


def default_catalog_path() -> Path:
    """Path of the bundled catalog used by the documented examples."""
    return Path(__file__).parent / "data" / "default_catalog.yaml"


def load_default_catalog() -> Catalog:
    return load_catalog(default_catalog_path())
