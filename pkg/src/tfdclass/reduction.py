"""Moment paths: critical levels, reduced surfaces, Euler classes and the affine symplectic class."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import ComponentClass, Decomposition
from .lattice import (
    BasisMismatchError, CohClass, Root, SurfaceModel, anticanonical, blow_up,
    effective_generators, pair, project, zero_extend,
)

log = logging.getLogger(__name__)

# endpoint kinds
EXTREMAL = "extremal"   # 4-dimensional extremum sits at this level
REGULAR = "regular"     # reduced space is a smooth surface carrying an honest class
COLLAPSE = "collapse"   # 2-dimensional minimum: the reduced space degenerates
BLOWUP = "blowup"       # isolated points were just blown up; new E's have size zero

# (level, dim, Morse index, role) rows of the admissible fixed components
TABLE_FIXED = frozenset({
    (3, 0, 6, "max"),
    (2, 2, 4, "max"),
    (1, 4, 2, "max"),
    (1, 0, 4, None),
    (0, 2, 2, None),
    (-1, 0, 2, None),
    (-1, 4, 0, "min"),
    (-2, 2, 0, "min"),
    (-3, 0, 0, "min"),
})


@dataclass(frozen=True)
class FixedComponent:
    level: int
    dim: int
    index: int
    role: Optional[str] = None

    def admissible(self) -> bool:
        return (self.level, self.dim, self.index, self.role) in TABLE_FIXED


def is_admissible_component(level, dim, index, role=None) -> bool:
    return FixedComponent(level, dim, index, role).admissible()


@dataclass(frozen=True)
class LevelSlice:
    interval: tuple
    surface: SurfaceModel
    euler: CohClass
    omega_ref: CohClass   # class at the lower endpoint
    lo_kind: str = REGULAR
    hi_kind: str = REGULAR

    def __post_init__(self):
        lo, hi = self.interval
        assert lo < hi
        if self.euler.surface != self.surface or self.omega_ref.surface != self.surface:
            raise BasisMismatchError("slice classes must live on the slice surface")

    @property
    def lo(self):
        return self.interval[0]

    @property
    def hi(self):
        return self.interval[1]

    def omega_at(self, t) -> CohClass:
        return self.omega_ref - (Fraction(t) - self.lo) * self.euler


def dh_class(slice: LevelSlice, t) -> CohClass:
    t = Fraction(t)
    if not slice.lo <= t <= slice.hi:
        raise ValueError(f"level {t} outside {slice.interval}")
    return slice.omega_at(t)


def cross_index_two(prev: LevelSlice, crossing, upper, hi_kind: str = REGULAR) -> LevelSlice:
    """Slice just above prev.hi after crossing the listed classes.

    Classes on a blow-up of prev.surface mark isolated points (the appended
    E labels); classes on the same surface are fixed surfaces.
    """
    crossing = list(crossing)
    surface = crossing[0].surface if crossing else prev.surface
    if any(c.surface != surface for c in crossing):
        raise BasisMismatchError("crossing classes live on different surfaces")
    if surface.root is not prev.surface.root or surface.num_blowups < prev.surface.num_blowups:
        raise BasisMismatchError(f"{surface.id} is not a blow-up of {prev.surface.id}")
    new = surface.num_blowups - prev.surface.num_blowups
    if new:
        fresh = {surface.unit(f"E{i}") for i in range(prev.surface.num_blowups + 1, surface.num_blowups + 1)}
        if not fresh <= set(crossing):
            raise BasisMismatchError("blow-up crossing must include every fresh E class")
    euler = zero_extend(prev.euler, surface)
    for c in crossing:
        euler = euler + c
    omega = zero_extend(prev.omega_at(prev.hi), surface)
    return LevelSlice((prev.hi, Fraction(upper)), surface, euler, omega,
                      BLOWUP if new else REGULAR, hi_kind)


def _endpoint_ok(w: CohClass, gens, kind: str) -> bool:
    if kind == COLLAPSE:
        return all(pair(w, g) >= 0 for g in gens)
    if kind == BLOWUP:
        return pair(w, w) >= 1 and all(pair(w, g) >= 0 for g in gens)
    return pair(w, w) >= 1 and all(pair(w, g) >= 1 for g in gens)


@dataclass(frozen=True)
class PositivityReport:
    endpoints_ok: bool
    midpoint_ok: bool

    @property
    def ok(self):
        return self.endpoints_ok and self.midpoint_ok

    @property
    def flagged(self):
        return self.endpoints_ok and not self.midpoint_ok


def positivity_report(slice: LevelSlice) -> PositivityReport:
    gens = effective_generators(slice.surface)
    ends = (_endpoint_ok(slice.omega_at(slice.lo), gens, slice.lo_kind)
            and _endpoint_ok(slice.omega_at(slice.hi), gens, slice.hi_kind))
    mid = slice.omega_at((slice.lo + slice.hi) / 2)
    return PositivityReport(ends, pair(mid, mid) > 0)


def positivity_ok(slice: LevelSlice) -> bool:
    rep = positivity_report(slice)
    if rep.flagged:
        log.warning("slice %s passes endpoint checks but fails the midpoint square", slice.interval)
    return rep.ok


@dataclass(frozen=True)
class ExtremalData:
    min_dim: int
    max_dim: int
    k: Optional[int] = None
    b_min: Optional[int] = None


@dataclass(frozen=True)
class MomentPath:
    family: str
    crit_values: tuple
    slices: tuple
    m_isolated: int = 0
    z0: Optional[Decomposition] = None
    extremal: ExtremalData = ExtremalData(4, 4)

    @property
    def case(self) -> str:
        return "I" if self.extremal.min_dim == 2 else "II"

    @property
    def first(self) -> LevelSlice:
        return self.slices[0]

    def slice_above(self, t) -> LevelSlice:
        for s in self.slices:
            if s.lo <= t < s.hi:
                return s
        raise ValueError(f"no slice above level {t}")

    def slice_below(self, t) -> LevelSlice:
        for s in self.slices:
            if s.lo < t <= s.hi:
                return s
        raise ValueError(f"no slice below level {t}")

    def omega_at(self, t) -> CohClass:
        t = Fraction(t)
        for s in self.slices:
            if s.lo <= t <= s.hi and not (t == s.lo and s.lo_kind == BLOWUP):
                return s.omega_at(t)
        raise ValueError(f"level {t} outside the path")

    @property
    def surface0(self) -> SurfaceModel:
        return self.slice_below(0).surface

    @property
    def omega0(self) -> CohClass:
        return self.slice_below(0).omega_at(0)

    def e_plus(self, c) -> CohClass:
        return self.slice_above(c).euler

    def fixed_components(self) -> list:
        lo, hi = self.crit_values[0], self.crit_values[-1]
        out = [FixedComponent(lo, self.extremal.min_dim, 0, "min")]
        if self.m_isolated:
            out += [FixedComponent(-1, 0, 2)] * self.m_isolated
        if self.z0 is not None:
            out += [FixedComponent(0, 2, 2)] * len(self.z0)
        out.append(FixedComponent(hi, self.extremal.max_dim, 6 - self.extremal.max_dim, "max"))
        return out


def validate_level_structure(path: MomentPath) -> bool:
    comps = path.fixed_components()
    if not all(c.admissible() for c in comps):
        return False
    levels = sorted({c.level for c in comps})
    if tuple(levels) != tuple(path.crit_values):
        return False
    ends = [s.lo for s in path.slices] + [path.slices[-1].hi]
    return tuple(ends) == tuple(path.crit_values)


def _back_solve(surfaces, eulers, bounds, omega0):
    """Class at the lowest level given the monotone class at level 0."""
    i = next(j for j in range(len(surfaces)) if bounds[j] < 0 <= bounds[j + 1])
    w = omega0 + (0 - bounds[i]) * eulers[i]
    for j in range(i - 1, -1, -1):
        w = project(w, surfaces[j]) + (bounds[j + 1] - bounds[j]) * eulers[j]
    return w


def build_case_I_path(family: str, root: SurfaceModel, k: int, m: int, z0_parts=()) -> MomentPath:
    if root.root is Root.PROJ_PLANE or root.num_blowups:
        raise ValueError("case I starts on S2xS2 or E_S2")
    M0 = blow_up(root, m)
    e_first = root.cls(k, -1)
    z0_parts = tuple(z0_parts)
    crit = [-2] + ([-1] if m else []) + ([0] if z0_parts else []) + [1]
    # forward pass for surfaces and Euler classes
    surfaces, eulers = [root], [e_first]
    if m:
        e = zero_extend(e_first, M0)
        for i in range(1, m + 1):
            e = e + M0.unit(f"E{i}")
        surfaces.append(M0)
        eulers.append(e)
    if z0_parts:
        e = eulers[-1]
        for c in z0_parts:
            e = e + c
        surfaces.append(M0)
        eulers.append(e)
    w = _back_solve(surfaces, eulers, crit, anticanonical(M0))
    kinds = {-2: COLLAPSE, 1: EXTREMAL}
    s = LevelSlice((Fraction(-2), Fraction(crit[1])), root, e_first, w, COLLAPSE, kinds.get(crit[1], REGULAR))
    slices = [s]
    for lvl, upper in zip(crit[1:-1], crit[2:]):
        if lvl == -1:
            crossing = [M0.unit(f"E{i}") for i in range(1, m + 1)]
        else:
            crossing = list(z0_parts)
        s = cross_index_two(s, crossing, upper, kinds.get(upper, REGULAR))
        slices.append(s)
    path = MomentPath(
        family, tuple(crit), tuple(slices), m,
        Decomposition(tuple(ComponentClass.of(c) for c in z0_parts)) if z0_parts else None,
        ExtremalData(2, 4, k, -pair(e_first, e_first)),
    )
    assert path.omega0 == anticanonical(M0)
    return path


def build_case_II_path(family: str, M0: SurfaceModel, e: CohClass, z0_parts=()) -> MomentPath:
    z0_parts = tuple(z0_parts)
    K = anticanonical(M0)
    w = K + e
    crit = (-1, 0, 1) if z0_parts else (-1, 1)
    if z0_parts:
        s0 = LevelSlice((Fraction(-1), Fraction(0)), M0, e, w, EXTREMAL, REGULAR)
        slices = (s0, cross_index_two(s0, z0_parts, 1, EXTREMAL))
    else:
        slices = (LevelSlice((Fraction(-1), Fraction(1)), M0, e, w, EXTREMAL, EXTREMAL),)
    path = MomentPath(
        family, crit, slices, 0,
        Decomposition(tuple(ComponentClass.of(c) for c in z0_parts)) if z0_parts else None,
        ExtremalData(4, 4),
    )
    assert path.omega0 == K
    return path
