"""Golden classification tables, record serialization and diffing."""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .curves import ComponentClass, Decomposition
from .invariants import compute_invariants
from .lattice import CohClass, LatticeError, SurfaceModel, anticanonical, surface_from_id
from .reduction import (
    ExtremalData, LevelSlice, MomentPath, build_case_I_path, build_case_II_path,
)

GOLDEN_FILES = ("golden_table_1.json", "golden_table_2.json")
CHECKSUM_FILE = "golden.sha256"
FAMILY_ORDER = ("I-1", "I-2", "I-3-1", "I-3-2", "I-4-1", "I-4-2",
                "II-1-1", "II-1-2", "II-1-3", "II-1-4", "II-2-1", "II-2-2", "II-2-3")
# alternate spelling of the I-4-2 label
LABEL_ALIASES = {"I-4.2": "I-4-2"}


class GoldenIOError(OSError):
    pass


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class FanoInfo:
    mori_mukai_id: str
    description: str


@dataclass(frozen=True)
class TFDRecord:
    label: str
    family: str
    surface0: SurfaceModel
    omega0: CohClass
    slices: MomentPath
    m_isolated: int
    z0_components: tuple   # ((CohClass, genus), ...)
    b2: int
    c1_cubed: int
    fano: Optional[FanoInfo] = None

    @property
    def case(self) -> str:
        return self.slices.case

    @property
    def e_first(self) -> CohClass:
        return self.slices.first.euler

    @property
    def z0_classes(self) -> tuple:
        return tuple(c for c, _ in self.z0_components)


def make_record(label: str, path: MomentPath, fano: Optional[FanoInfo] = None) -> TFDRecord:
    inv = compute_invariants(path)
    comps = tuple((p.cls, p.genus) for p in path.z0.parts) if path.z0 is not None else ()
    return TFDRecord(label, path.family, path.surface0, path.omega0, path, path.m_isolated,
                     comps, inv.b2, inv.c1_cubed, fano)


def build_path(family: str, surface0: SurfaceModel, e_first: CohClass, z0_classes=()) -> MomentPath:
    if family.startswith("I-"):
        root = SurfaceModel(surface0.root, 0)
        if e_first.surface != root or e_first.coeffs[1] != -1:
            raise SchemaError(f"first Euler class must be kx - y on {root.id}, got {e_first}")
        return build_case_I_path(family, root, e_first.coeffs[0], surface0.num_blowups, z0_classes)
    return build_case_II_path(family, surface0, e_first, z0_classes)


def record_key(r: TFDRecord) -> tuple:
    """Content identity; b2 and c1^3 are deliberately not part of it."""
    return (r.family, r.surface0.id, r.e_first.surface.id, r.e_first.coeffs,
            tuple(sorted(c.coeffs for c in r.z0_classes)))


def sort_key(r: TFDRecord) -> tuple:
    fam = FAMILY_ORDER.index(r.family) if r.family in FAMILY_ORDER else len(FAMILY_ORDER)
    return (fam, r.surface0.rank) + record_key(r)[2:]


# ---- golden tables ------------------------------------------------------

def golden_dir() -> Path:
    env = os.environ.get("TFD_GOLDEN_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("tfdclass").joinpath("data")))


def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def checksum_text(directory: Path) -> str:
    return "".join(f"{file_digest(directory / name)}  {name}\n" for name in GOLDEN_FILES)


def _read_golden(directory: Path) -> list:
    try:
        expected = {}
        for line in (directory / CHECKSUM_FILE).read_text().splitlines():
            if line.strip():
                digest, name = line.split()
                expected[name] = digest
        rows = []
        for name in GOLDEN_FILES:
            p = directory / name
            if file_digest(p) != expected.get(name):
                raise GoldenIOError(f"checksum mismatch for {p}")
            rows.extend(json.loads(p.read_text())["rows"])
        return rows
    except (OSError, ValueError, KeyError) as exc:
        if isinstance(exc, GoldenIOError):
            raise
        raise GoldenIOError(f"cannot read golden tables from {directory}: {exc}") from exc


def golden_record(row: dict) -> TFDRecord:
    label = LABEL_ALIASES.get(row["label"], row["label"])
    family = row["family"]
    M0 = surface_from_id(row["M0"])
    omega0 = M0.parse(row["omega0"])
    if omega0 != anticanonical(M0):
        raise SchemaError(f"{label}: omega0 {omega0} is not monotone")
    e_surface = SurfaceModel(M0.root, 0) if family.startswith("I-") else M0
    e_first = e_surface.parse(row["euler"])
    z0 = [(M0.parse(c["class"]), int(c["genus"])) for c in row["z0"]]
    path = build_path(family, M0, e_first, [c for c, _ in z0])
    if path.m_isolated != row.get("m", 0):
        raise SchemaError(f"{label}: m mismatch")
    fano = FanoInfo(**row["fano"]) if row.get("fano") else None
    # z0 order follows the canonical part order of the path
    comps = tuple(sorted(z0, key=lambda t: t[0].coeffs, reverse=True))
    return TFDRecord(label, family, M0, omega0, path, path.m_isolated, comps,
                     int(row["b2"]), int(row["c1_cubed"]), fano)


def golden_catalog(directory=None) -> list:
    directory = Path(directory) if directory else golden_dir()
    return [golden_record(r) for r in _read_golden(directory)]


# ---- diff ---------------------------------------------------------------

@dataclass
class DiffReport:
    missing: list = field(default_factory=list)      # golden labels absent from computed
    extra: list = field(default_factory=list)        # computed records absent from golden
    mismatches: list = field(default_factory=list)   # (label, field, computed, golden)

    def __bool__(self):
        return bool(self.missing or self.extra or self.mismatches)

    def lines(self) -> list:
        out = [f"missing: {lab}" for lab in self.missing]
        out += [f"extra: {desc}" for desc in self.extra]
        out += [f"mismatch: {lab} field {f}: computed {c} golden {g}" for lab, f, c, g in self.mismatches]
        return out


def _compared_fields(r: TFDRecord) -> dict:
    return {
        "omega0": str(r.omega0),
        "m_isolated": r.m_isolated,
        "z0_genera": tuple(g for _, g in sorted(r.z0_components, key=lambda t: t[0].coeffs)),
        "crit_values": tuple(int(v) for v in r.slices.crit_values),
        "eulers": tuple((s.surface.id, str(s.euler)) for s in r.slices.slices),
        "b2": r.b2,
        "c1_cubed": r.c1_cubed,
    }


def describe(r: TFDRecord) -> str:
    z = ", ".join(str(c) for c in r.z0_classes) or "-"
    return f"{r.family} M0={r.surface0.id} e={r.e_first} Z0=[{z}]"


def diff(computed, golden) -> DiffReport:
    rep = DiffReport()
    comp = {record_key(r): r for r in computed}
    gold = {record_key(r): r for r in golden}
    for key, g in gold.items():
        c = comp.get(key)
        if c is None:
            rep.missing.append(g.label)
            continue
        fc, fg = _compared_fields(c), _compared_fields(g)
        for name in fc:
            if fc[name] != fg[name]:
                rep.mismatches.append((g.label, name, fc[name], fg[name]))
    for key, c in comp.items():
        if key not in gold:
            rep.extra.append(describe(c))
    return rep


def attach_golden_labels(computed, golden) -> list:
    """Give computed records the label and metadata of the matching golden row."""
    gold = {record_key(r): r for r in golden}
    out = []
    for r in computed:
        g = gold.get(record_key(r))
        if g is not None:
            r = TFDRecord(g.label, r.family, r.surface0, r.omega0, r.slices, r.m_isolated,
                          r.z0_components, r.b2, r.c1_cubed, g.fano)
        out.append(r)
    return out


# ---- JSON ---------------------------------------------------------------

def _frac_json(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else str(v)


def record_to_json(r: TFDRecord) -> dict:
    p = r.slices
    return {
        "label": r.label,
        "family": r.family,
        "surface0": r.surface0.id,
        "omega0": r.omega0.to_json(),
        "m_isolated": r.m_isolated,
        "z0_components": [{"class": c.to_json(), "genus": g} for c, g in r.z0_components],
        "b2": r.b2,
        "c1_cubed": r.c1_cubed,
        "fano": None if r.fano is None else {"mori_mukai_id": r.fano.mori_mukai_id, "description": r.fano.description},
        "path": {
            "crit_values": [_frac_json(v) for v in p.crit_values],
            "min_dim": p.extremal.min_dim,
            "max_dim": p.extremal.max_dim,
            "k": p.extremal.k,
            "b_min": p.extremal.b_min,
            "slices": [
                {
                    "interval": [_frac_json(s.lo), _frac_json(s.hi)],
                    "surface": s.surface.id,
                    "euler": s.euler.to_json(),
                    "omega_lo": s.omega_ref.to_json(),
                    "lo_kind": s.lo_kind,
                    "hi_kind": s.hi_kind,
                }
                for s in p.slices
            ],
        },
    }


def _get(d, name, where, kind=None):
    if not isinstance(d, dict) or name not in d:
        raise SchemaError(f"missing field {where}{name}")
    v = d[name]
    if kind is not None and not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise SchemaError(f"field {where}{name} has the wrong type")
    return v


def _cls(d, where) -> CohClass:
    try:
        s = surface_from_id(_get(d, "surface", where, str))
        coeffs = _get(d, "coeffs", where, list)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in coeffs):
            raise SchemaError(f"field {where}coeffs must hold integers")
        return CohClass(s, tuple(coeffs))
    except LatticeError as exc:
        raise SchemaError(f"field {where.rstrip('.')}: {exc}") from exc


def record_from_json(d: dict) -> TFDRecord:
    if not isinstance(d, dict):
        raise SchemaError("record must be a JSON object")
    label = _get(d, "label", "", str)
    family = _get(d, "family", "", str)
    try:
        surface0 = surface_from_id(_get(d, "surface0", "", str))
    except LatticeError as exc:
        raise SchemaError(f"field surface0: {exc}") from exc
    omega0 = _cls(_get(d, "omega0", "", dict), "omega0.")
    m = _get(d, "m_isolated", "", int)
    comps = []
    for i, c in enumerate(_get(d, "z0_components", "", list)):
        comps.append((_cls(_get(c, "class", f"z0_components[{i}].", dict), f"z0_components[{i}].class."),
                      _get(c, "genus", f"z0_components[{i}].", int)))
    b2 = _get(d, "b2", "", int)
    c3 = _get(d, "c1_cubed", "", int)
    fano = d.get("fano")
    if fano is not None:
        fano = FanoInfo(_get(fano, "mori_mukai_id", "fano.", str), _get(fano, "description", "fano.", str))
    p = _get(d, "path", "", dict)
    slices = []
    for i, s in enumerate(_get(p, "slices", "path.", list)):
        w = f"path.slices[{i}]."
        iv = _get(s, "interval", w, list)
        if len(iv) != 2:
            raise SchemaError(f"field {w}interval must have two entries")
        try:
            slices.append(LevelSlice(
                (Fraction(iv[0]), Fraction(iv[1])), surface_from_id(_get(s, "surface", w, str)),
                _cls(_get(s, "euler", w, dict), w + "euler."), _cls(_get(s, "omega_lo", w, dict), w + "omega_lo."),
                _get(s, "lo_kind", w, str), _get(s, "hi_kind", w, str)))
        except (LatticeError, AssertionError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"field {w.rstrip('.')}: {exc}") from exc
    if not slices:
        raise SchemaError("field path.slices is empty")
    try:
        z0 = Decomposition(tuple(ComponentClass.of(c) for c, _ in comps)) if comps else None
    except AssertionError as exc:
        raise SchemaError("field z0_components: not a realizable component") from exc
    crit = tuple(Fraction(v) for v in _get(p, "crit_values", "path.", list))
    extremal = ExtremalData(_get(p, "min_dim", "path.", int), _get(p, "max_dim", "path.", int), p.get("k"), p.get("b_min"))
    path = MomentPath(family, crit, tuple(slices), m, z0, extremal)
    return TFDRecord(label, family, surface0, omega0, path, m, tuple(comps), b2, c3, fano)


def rebuild(r: TFDRecord) -> TFDRecord:
    """Recompute path and invariants from the raw fields (surface, first Euler class, Z0)."""
    path = build_path(r.family, r.surface0, r.e_first, r.z0_classes)
    return make_record(r.label, path, r.fano)


# ---- tabular output ---------------------------------------------------------

COLUMNS = ("label", "M0", "omega0", "euler_classes", "fixed_components", "b2", "c1_cubed")


def _fixed_text(r: TFDRecord) -> str:
    p = r.slices
    parts = []
    lo = int(p.crit_values[0])
    if p.extremal.min_dim == 2:
        parts.append(f"Z_{lo}=S2")
    else:
        parts.append(f"Z_{lo}={r.surface0.id}")
    if r.m_isolated:
        parts.append(f"Z_-1={r.m_isolated} pt")
    if r.z0_components:
        parts.append("Z_0=" + " + ".join(f"{c}(g{g})" for c, g in r.z0_components))
    parts.append(f"Z_1={r.surface0.id}")
    return "; ".join(parts)


def _euler_text(r: TFDRecord) -> str:
    return "; ".join(f"e({int(s.lo)}+)={s.euler}" for s in r.slices.slices)


def table_row(r: TFDRecord) -> dict:
    return {
        "label": r.label,
        "M0": r.surface0.id,
        "omega0": str(r.omega0),
        "euler_classes": _euler_text(r),
        "fixed_components": _fixed_text(r),
        "b2": r.b2,
        "c1_cubed": r.c1_cubed,
    }
