"""Exhaustive per-family search over integer parameters, with canonical deduplication."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from operator import mul

from .catalog import TFDRecord, build_path, make_record, sort_key
from .certificates import InfeasibilityCertificate, check_certificate, prove_empty_case_II_Xk
from .curves import enumerate_decompositions
from .invariants import extremal_volumes
from .lattice import (
    CohClass, Root, SurfaceModel, TruncationError, anticanonical, blow_up,
    effective_generators, pair, zero_extend,
)
from .reduction import REGULAR, build_case_I_path, positivity_report, validate_level_structure

log = logging.getLogger(__name__)

__all__ = [
    "BOX_I", "BOX_II", "BOX_XK", "FAMILIES", "FamilySpec", "InfeasibilityCertificate", "canonical_key",
    "canonicalize", "check_certificate", "enumerate_all", "enumerate_case_II_Xk", "enumerate_family",
    "prove_empty_case_II_Xk",
]

BOX_I = 8
BOX_II = 8
BOX_XK = 6        # the certificates cover X_k without any box; the scan is a cross-check

P2 = SurfaceModel(Root.PROJ_PLANE, 0)
QUADRIC = SurfaceModel(Root.QUADRIC, 0)
HIRZ = SurfaceModel(Root.HIRZEBRUCH, 0)


@dataclass(frozen=True)
class FamilySpec:
    label: str
    case: str
    crit_values: tuple
    surfaces: tuple          # first reduced surface (case I) or M0 (case II)
    m_range: tuple = (0,)    # isolated points at level -1 (case I)
    has_z0: bool = False
    box: int = BOX_I
    parameters: str = ""

    @property
    def constraints(self) -> tuple:
        out = ["positivity", "level structure"]
        if self.case == "I":
            out.append("b_min >= -1")
        if self.has_z0:
            out += ["Vol(Z0) >= 1", "decomposition exists"]
        if self.case == "II":
            out.append("Vol(Z_min) >= Vol(Z_max)")
        return tuple(out)


FAMILIES = {s.label: s for s in (
    FamilySpec("I-1", "I", (-2, 1), (HIRZ, QUADRIC), parameters="k"),
    FamilySpec("I-2", "I", (-2, -1, 1), (HIRZ, QUADRIC), tuple(range(1, 8)), parameters="k, m"),
    FamilySpec("I-3-1", "I", (-2, 0, 1), (HIRZ,), has_z0=True, parameters="k, a, b"),
    FamilySpec("I-3-2", "I", (-2, 0, 1), (QUADRIC,), has_z0=True, parameters="k, a, b"),
    FamilySpec("I-4-1", "I", (-2, -1, 0, 1), (HIRZ,), tuple(range(1, 8)), True, parameters="k, m, a, b, c_i"),
    FamilySpec("I-4-2", "I", (-2, -1, 0, 1), (QUADRIC,), tuple(range(1, 8)), True, parameters="k, m, a, b, c_i"),
    FamilySpec("II-1-1", "II", (-1, 1), (P2,), box=BOX_II, parameters="e"),
    FamilySpec("II-1-2", "II", (-1, 1), (QUADRIC,), box=BOX_II, parameters="e"),
    FamilySpec("II-1-3", "II", (-1, 1), (HIRZ,), box=BOX_II, parameters="e"),
    FamilySpec("II-1-4", "II", (-1, 1), tuple(SurfaceModel(Root.PROJ_PLANE, k) for k in range(2, 9)),
               box=BOX_II, parameters="e"),
    FamilySpec("II-2-1", "II", (-1, 0, 1), (P2,), has_z0=True, box=BOX_II, parameters="e, PD(Z0)"),
    FamilySpec("II-2-2", "II", (-1, 0, 1), (QUADRIC,), has_z0=True, box=BOX_II, parameters="e, PD(Z0)"),
    FamilySpec("II-2-3", "II", (-1, 0, 1), (SurfaceModel(Root.PROJ_PLANE, 1),), has_z0=True, box=BOX_II,
               parameters="e, PD(Z0)"),
)}


# ---- pruned search over E coefficients -------------------------------------

def _gens_by_support(surface: SurfaceModel):
    """Effective generators as dual vectors G.g, grouped by their largest E index (0 = no E support).

    A group-j vector is truncated to the root part plus E1..Ej, so it can be
    dotted with a partially assigned coefficient list.
    """
    G = surface.gram()
    r = surface.root_rank
    groups = [[] for _ in range(surface.num_blowups + 1)]
    for g in effective_generators(surface):
        top = max((i + 1 for i, v in enumerate(g.e_part) if v), default=0)
        dual = [sum(G[i][j] * g.coeffs[j] for j in range(surface.rank)) for i in range(r + top)]
        groups[top].append(tuple(dual))
    return groups


def _positive_on(w, duals) -> bool:
    return all(sum(map(mul, w, d)) >= 1 for d in duals)


def _sorted_tuples(m, values, ok):
    """Nonincreasing m-tuples from values (given in decreasing order) accepted by ok at every prefix."""
    out = []

    def rec(prefix, start):
        if not ok(prefix):
            return
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for i in range(start, len(values)):
            rec(prefix + [values[i]], i)

    rec([], 0)
    return out


def _pad(surface, root, e):
    return CohClass(surface, tuple(root) + tuple(e) + (0,) * (surface.num_blowups - len(e)))


# ---- case I --------------------------------------------------------------

def _case_I_candidates(spec: FamilySpec, root: SurfaceModel, m: int, k: int):
    """Raw (k, m, PD(Z0) or None) tuples passing the level-1 generator checks."""
    B = spec.box
    M0 = blow_up(root, m)
    K = anticanonical(M0)
    e_below = zero_extend(root.cls(k, -1), M0)
    for i in range(1, m + 1):
        e_below = e_below + M0.unit(f"E{i}")
    if not spec.has_z0:
        yield None
        return
    base1 = (K - e_below).coeffs          # omega_1 before subtracting PD(Z0)
    groups = _gens_by_support(M0)
    for a, b in product(range(-B, B + 1), repeat=2):
        kr = pair(K, _pad(M0, (a, b), ()))
        w_root = [base1[0] - a, base1[1] - b]

        def ok(prefix, w_root=w_root, kr=kr):
            j = len(prefix)
            w = w_root + [base1[2 + i] - c for i, c in enumerate(prefix)]
            if not _positive_on(w, groups[j]):
                return False
            # volume of Z0 must reach 1 with the remaining entries bounded by the last one
            cap = prefix[-1] if prefix else B
            return kr + sum(prefix) + (m - j) * cap >= 1

        for cs in _sorted_tuples(m, list(range(B, -B - 1, -1)), ok):
            yield M0.cls(a, b, *cs)


def _finalize_I(spec, root, k, m, z0):
    """Records for one raw case-I candidate (one per decomposition of Z0)."""
    if 2 * k + (1 if root.root is Root.HIRZEBRUCH else 0) < -1:
        return []
    M0 = blow_up(root, m)
    if z0 is None:
        decomps = [()]
    else:
        if pair(anticanonical(M0), z0) < 1:
            return []
        decomps = [d.classes for d in enumerate_decompositions(M0, z0)]
    out = []
    for parts in decomps:
        path = build_path(spec.label, M0, root.cls(k, -1), parts)
        rec = _admit(spec, path)
        if rec is not None:
            params = [k] + (list(z0.coeffs) if z0 is not None else [])
            _check_box(spec, params, rec)
            out.append(rec)
    return out


def _case_I_task(spec, root, m, k):
    if not _lower_ok(root, m, k):
        return []
    out = []
    for z0 in _case_I_candidates(spec, root, m, k):
        out.extend(_finalize_I(spec, root, k, m, z0))
    return out


def _lower_ok(root, m, k) -> bool:
    """Positivity below level 0 does not depend on Z0; test it once per (k, m)."""
    path = build_case_I_path("probe", root, k, m)
    for s in path.slices:
        if s.hi > 0:
            break
        if not positivity_report(s).ok:
            return False
    # the slice through level 0 is tested up to 0 only
    s = path.slice_below(0)
    lo_only = type(s)((s.lo, 0), s.surface, s.euler, s.omega_ref, s.lo_kind, REGULAR)
    return positivity_report(lo_only).ok


# ---- case II -------------------------------------------------------------

def _case_II_candidates(spec: FamilySpec, M0: SurfaceModel, first: int):
    """Raw (e, PD(Z0) or None) pairs with the first e coefficient fixed."""
    B = spec.box
    K = anticanonical(M0)
    rng = range(-B, B + 1)
    gens = effective_generators(M0)

    def positive(w):
        return pair(w, w) >= 1 and all(pair(w, g) >= 1 for g in gens)

    if M0.num_blowups <= 1:
        for rest in product(rng, repeat=M0.rank - 1):
            e = M0.cls(first, *rest)
            if not positive(K + e):
                continue
            if not spec.has_z0:
                if positive(K - e):
                    yield e, None
                continue
            for zc in product(rng, repeat=M0.rank):
                z = M0.cls(*zc)
                if pair(K, z) >= 1 and positive(K - e - z):
                    yield e, z
        return
    yield from _ordered_candidates_II(spec, M0, first)


def _ordered_candidates_II(spec: FamilySpec, M0: SurfaceModel, first: int):
    """Blown-up projective plane: E coefficients (or (e, Z0) pairs per index) kept nonincreasing."""
    B = spec.box
    K = anticanonical(M0)
    rng = range(-B, B + 1)
    groups = _gens_by_support(M0)
    m = M0.num_blowups
    k = K.coeffs
    if not spec.has_z0:
        def ok(prefix):
            j = len(prefix)
            lo = [k[0] + first] + [k[1 + i] + b for i, b in enumerate(prefix)]
            hi = [k[0] - first] + [k[1 + i] - b for i, b in enumerate(prefix)]
            return _positive_on(lo, groups[j]) and _positive_on(hi, groups[j])
        for bs in _sorted_tuples(m, list(range(B, -B - 1, -1)), ok):
            yield M0.cls(first, *bs), None
        return
    cells = [(b, y) for b in range(B, -B - 1, -1) for y in range(B, -B - 1, -1)]
    for x in rng:
        def ok(prefix, x=x):
            j = len(prefix)
            lo = [k[0] + first] + [k[1 + i] + b for i, (b, _) in enumerate(prefix)]
            hi = [k[0] - first - x] + [k[1 + i] - b - y for i, (b, y) in enumerate(prefix)]
            if not (_positive_on(lo, groups[j]) and _positive_on(hi, groups[j])):
                return False
            return 3 * x + sum(c[1] for c in prefix) + (m - j) * B >= 1
        for cs in _sorted_tuples(m, cells, ok):
            yield M0.cls(first, *[c[0] for c in cs]), M0.cls(x, *[c[1] for c in cs])


def _finalize_II(spec, M0, e, z0, normalize=True):
    if z0 is None:
        decomps = [()]
    else:
        if pair(anticanonical(M0), z0) < 1:
            return []
        decomps = [d.classes for d in enumerate_decompositions(M0, z0)]
    out = []
    for parts in decomps:
        path = build_path(spec.label, M0, e, parts)
        rec = _admit(spec, path, normalize)
        if rec is not None:
            _check_box(spec, list(e.coeffs) + (list(z0.coeffs) if z0 is not None else []), rec)
            out.append(rec)
    return out


def _case_II_task(spec, M0, first, normalize=True):
    out = []
    for e, z0 in _case_II_candidates(spec, M0, first):
        out.extend(_finalize_II(spec, M0, e, z0, normalize))
    return out


# ---- shared admission ------------------------------------------------------

def _admit(spec, path, normalize=True):
    for s in path.slices:
        rep = positivity_report(s)
        if rep.flagged:
            log.warning("candidate %s passes endpoints but fails the midpoint square", path)
        if not rep.ok:
            return None
    if not validate_level_structure(path) or tuple(path.crit_values) != tuple(spec.crit_values):
        return None
    if spec.case == "II" and normalize:
        vmin, vmax = extremal_volumes(path)
        if vmin < vmax:
            return None
    return make_record(spec.label, path)


def _check_box(spec, params, rec):
    if any(abs(v) >= spec.box for v in params):
        raise TruncationError(f"{spec.label}: admitted candidate {rec.label} {params} touches the box {spec.box}")


# ---- canonical form -----------------------------------------------------------

def _swap_xy(c: CohClass) -> CohClass:
    v = list(c.coeffs)
    v[0], v[1] = v[1], v[0]
    return CohClass(c.surface, tuple(v))


def _orbit_reps(r: TFDRecord):
    """(e, components) for the x<->y swap and reversal images allowed for this record."""
    e = r.e_first
    comps = list(r.z0_classes)
    out = []
    swaps = [False, True] if r.case == "II" and r.surface0.root is Root.QUADRIC else [False]
    revs = [False, True] if r.case == "II" else [False]
    z = r.surface0.zero()
    for c in comps:
        z = z + c
    for sw in swaps:
        for rev in revs:
            ee = e if not rev else -(e + z)
            cc = comps
            if sw:
                ee = _swap_xy(ee)
                cc = [_swap_xy(c) for c in cc]
            out.append((ee, cc))
    return out


def _normalized(M0, e, comps) -> bool:
    K = anticanonical(M0)
    z = M0.zero()
    for c in comps:
        z = z + c
    lo, hi = K + e, K - e - z
    return pair(lo, lo) >= pair(hi, hi)


def _min_over_perms(M0, e, comps, with_e):
    """Least (key, source order) over component orderings and E-index permutations.

    For a fixed component order the best E permutation sorts the E columns.
    """
    r = M0.root_rank
    best = None
    for order in set(permutations(range(len(comps)))):
        rows = [tuple(-v for v in comps[i].coeffs) for i in order]
        if with_e:
            rows.append(e.coeffs)
        cols = sorted(zip(*[row[r:] for row in rows])) if M0.num_blowups else []
        new = [row[:r] + tuple(col[i] for col in cols) for i, row in enumerate(rows)]
        ranked = sorted(zip(new[:len(comps)], order))
        key = (tuple(v for v, _ in ranked), new[-1] if with_e else e.coeffs)
        cand = (key, tuple(i for _, i in ranked))
        if best is None or cand < best:
            best = cand
    return best


def _canonical(r: TFDRecord):
    best = None
    for e, comps in _orbit_reps(r):
        if r.case == "II" and not _normalized(r.surface0, e, comps):
            continue
        cand = _min_over_perms(r.surface0, e, comps, with_e=(r.case == "II"))
        if best is None or cand < best:
            best = cand
    return best


def canonical_key(r: TFDRecord) -> tuple:
    return _canonical(r)[0]


def canonicalize(r: TFDRecord) -> TFDRecord:
    """Orbit representative; b2, c1^3 and genera are carried over from r unchanged."""
    (neg_comps, e_coeffs), src = _canonical(r)
    M0 = r.surface0
    comps = [CohClass(M0, tuple(-v for v in row)) for row in neg_comps]
    e = CohClass(r.e_first.surface, e_coeffs)
    path = build_path(r.family, M0, e, comps)
    genera = tuple((c, r.z0_components[i][1]) for c, i in zip(comps, src))
    return TFDRecord(r.label, r.family, M0, path.omega0, path, r.m_isolated, genera,
                     r.b2, r.c1_cubed, r.fano)


# ---- drivers --------------------------------------------------------------

def _tasks(spec: FamilySpec):
    B = spec.box
    if spec.case == "I":
        return [(_case_I_task, (spec, root, m, k))
                for root in spec.surfaces for m in spec.m_range for k in range(-B, B + 1)]
    return [(_case_II_task, (spec, M0, a)) for M0 in spec.surfaces for a in range(-B, B + 1)]


def _run(task):
    fn, args = task
    return fn(*args)


def _collect(tasks, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run, tasks))
    else:
        chunks = [_run(t) for t in tasks]
    return [r for ch in chunks for r in ch]


def _dedupe(records) -> list:
    seen = {}
    for r in records:
        c = canonicalize(r)
        seen.setdefault((c.family, c.surface0.id, canonical_key(c)), c)
    out = sorted(seen.values(), key=sort_key)
    counts = {}
    labelled = []
    for r in out:
        counts[r.family] = counts.get(r.family, 0) + 1
        labelled.append(TFDRecord(f"{r.family}:{counts[r.family]}", r.family, r.surface0, r.omega0, r.slices,
                                  r.m_isolated, r.z0_components, r.b2, r.c1_cubed, r.fano))
    return labelled


def enumerate_family(spec, jobs: int = 1) -> list:
    if isinstance(spec, str):
        if spec not in FAMILIES:
            raise KeyError(f"unknown family {spec!r}")
        spec = FAMILIES[spec]
    return _dedupe(_collect(_tasks(spec), jobs))


def enumerate_all(jobs: int = 1) -> list:
    tasks = [t for spec in FAMILIES.values() for t in _tasks(spec)]
    return _dedupe(_collect(tasks, jobs))


def _xk_spec(M0, box=BOX_XK):
    return FamilySpec(f"II-2[{M0.id}]", "II", (-1, 0, 1), (M0,), has_z0=True, box=box, parameters="e, PD(Z0)")


def enumerate_case_II_Xk(k: int, jobs: int = 1, box: int = BOX_XK) -> list:
    """Level-zero fixed surfaces with M0 = X_k (k >= 2); expected to be empty.

    No normalization is applied, so both orientations are searched.
    """
    M0 = SurfaceModel(Root.PROJ_PLANE, k)
    tasks = [(_case_II_task, (_xk_spec(M0, box), M0, a, False)) for a in range(-box, box + 1)]
    return _collect(tasks, jobs)
