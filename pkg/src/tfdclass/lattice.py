"""Integral cohomology lattices of the reduced spaces.

Three root types are supported: the projective plane (basis u, E1..Em),
the quadric S2xS2 (basis x, y, E1..Em) and the Hirzebruch surface E_S2
(basis x, y, E1..Em with y the exceptional section).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from enum import Enum

MAX_RANK = 9


class LatticeError(ValueError):
    pass


class BasisMismatchError(LatticeError):
    pass


class DelPezzoBoundError(LatticeError):
    pass


class WrongRootError(LatticeError):
    pass


class TruncationError(RuntimeError):
    """A search box was touched by a solution, so the box may be too small."""


class Root(str, Enum):
    PROJ_PLANE = "ProjPlane"
    QUADRIC = "Quadric"
    HIRZEBRUCH = "Hirzebruch"


_ROOT_RANK = {Root.PROJ_PLANE: 1, Root.QUADRIC: 2, Root.HIRZEBRUCH: 2}
_ROOT_LABELS = {Root.PROJ_PLANE: ("u",), Root.QUADRIC: ("x", "y"), Root.HIRZEBRUCH: ("x", "y")}
# root part of the anticanonical class
_ROOT_K = {Root.PROJ_PLANE: (3,), Root.QUADRIC: (2, 2), Root.HIRZEBRUCH: (3, 2)}
_ID_PREFIX = {Root.QUADRIC: "S2xS2", Root.HIRZEBRUCH: "ES2"}


@dataclass(frozen=True)
class SurfaceModel:
    root: Root
    num_blowups: int = 0

    def __post_init__(self):
        object.__setattr__(self, "root", Root(self.root))
        if self.num_blowups < 0:
            raise LatticeError("negative blow-up count")
        if self.rank > MAX_RANK:
            raise DelPezzoBoundError(f"rank {self.rank} exceeds {MAX_RANK}")

    @property
    def root_rank(self) -> int:
        return _ROOT_RANK[self.root]

    @property
    def rank(self) -> int:
        return self.root_rank + self.num_blowups

    @property
    def basis(self) -> tuple[str, ...]:
        return _ROOT_LABELS[self.root] + tuple(f"E{i}" for i in range(1, self.num_blowups + 1))

    def gram(self) -> list[list[int]]:
        n = self.rank
        g = [[0] * n for _ in range(n)]
        if self.root is Root.PROJ_PLANE:
            g[0][0] = 1
        else:
            g[0][1] = g[1][0] = 1
            if self.root is Root.HIRZEBRUCH:
                g[1][1] = -1
        for i in range(self.root_rank, n):
            g[i][i] = -1
        return g

    @property
    def id(self) -> str:
        m = self.num_blowups
        if self.root is Root.PROJ_PLANE:
            return "P2" if m == 0 else f"X{m}"
        base = _ID_PREFIX[self.root]
        return base if m == 0 else f"{base}#{m}"

    def __str__(self):
        return self.id

    def cls(self, *coeffs) -> "CohClass":
        return CohClass(self, tuple(coeffs))

    def zero(self) -> "CohClass":
        return CohClass(self, (0,) * self.rank)

    def unit(self, label: str) -> "CohClass":
        c = [0] * self.rank
        c[self.basis.index(label)] = 1
        return CohClass(self, tuple(c))

    def parse(self, text: str) -> "CohClass":
        return parse_class(self, text)


_SURFACE_RE = re.compile(r"^(?:(P2|CP2)|X(\d)|(S2xS2|Q|ES2|F1)(?:#(\d))?)$")


def surface_from_id(ident: str) -> SurfaceModel:
    s = ident.strip().replace(" ", "")
    mt = _SURFACE_RE.match(s)
    if not mt:
        raise LatticeError(f"unknown surface id {ident!r}")
    if mt.group(1):
        return SurfaceModel(Root.PROJ_PLANE, 0)
    if mt.group(2):
        return SurfaceModel(Root.PROJ_PLANE, int(mt.group(2)))
    root = Root.QUADRIC if mt.group(3) in ("S2xS2", "Q") else Root.HIRZEBRUCH
    return SurfaceModel(root, int(mt.group(4) or 0))


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True)
class CohClass:
    """Degree-2 class with coefficients against ``surface.basis``.

    Coefficients are ints; exact Fractions only appear when a class is
    evaluated at a non-integral level.
    """
    surface: SurfaceModel
    coeffs: tuple = field(default=())

    def __post_init__(self):
        c = tuple(_norm(v) for v in self.coeffs)
        if len(c) != self.surface.rank:
            raise BasisMismatchError(f"{len(c)} coefficients for rank {self.surface.rank} surface {self.surface.id}")
        for v in c:
            if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
                raise LatticeError(f"non-exact coefficient {v!r}")
        object.__setattr__(self, "coeffs", c)

    def _check(self, other: "CohClass"):
        if not isinstance(other, CohClass) or other.surface != self.surface:
            raise BasisMismatchError(f"classes live on different surfaces: {self.surface.id} vs {getattr(other, 'surface', other)}")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CohClass":
        return CohClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, s) -> "CohClass":
        return CohClass(self.surface, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def root_part(self) -> tuple:
        return self.coeffs[: self.surface.root_rank]

    @property
    def e_part(self) -> tuple:
        return self.coeffs[self.surface.root_rank:]

    def to_json(self) -> dict:
        return {"surface": self.surface.id, "coeffs": [int(v) for v in self.coeffs]}

    @classmethod
    def from_json(cls, d: dict) -> "CohClass":
        return cls(surface_from_id(d["surface"]), tuple(int(v) for v in d["coeffs"]))

    def __str__(self):
        return format_class(self)

    def __repr__(self):
        return f"CohClass({self.surface.id}: {format_class(self)})"


def pair(d1: CohClass, d2: CohClass):
    d1._check(d2)
    s = d1.surface
    a, b = d1.coeffs, d2.coeffs
    r = s.root_rank
    if s.root is Root.PROJ_PLANE:
        v = a[0] * b[0]
    else:
        v = a[0] * b[1] + a[1] * b[0]
        if s.root is Root.HIRZEBRUCH:
            v -= a[1] * b[1]
    for i in range(r, s.rank):
        v -= a[i] * b[i]
    return v


def anticanonical(surface: SurfaceModel) -> CohClass:
    return CohClass(surface, _ROOT_K[surface.root] + (-1,) * surface.num_blowups)


def blow_up(surface: SurfaceModel, count: int = 1) -> SurfaceModel:
    if count < 0:
        raise LatticeError("negative blow-up count")
    if surface.rank + count > MAX_RANK:
        raise DelPezzoBoundError(f"blowing up {surface.id} {count} times exceeds rank {MAX_RANK}")
    return SurfaceModel(surface.root, surface.num_blowups + count)


def zero_extend(c: CohClass, surface: SurfaceModel) -> CohClass:
    """Pull a class back along a blow-down onto ``surface``."""
    if surface.root is not c.surface.root or surface.num_blowups < c.surface.num_blowups:
        raise BasisMismatchError(f"{surface.id} is not a blow-up of {c.surface.id}")
    return CohClass(surface, c.coeffs + (0,) * (surface.rank - c.surface.rank))


def project(c: CohClass, surface: SurfaceModel) -> CohClass:
    """Inverse of zero_extend; the dropped coordinates must vanish."""
    if surface.root is not c.surface.root or surface.num_blowups > c.surface.num_blowups:
        raise BasisMismatchError(f"{c.surface.id} is not a blow-up of {surface.id}")
    if any(c.coeffs[surface.rank:]):
        raise BasisMismatchError(f"{c} does not descend to {surface.id}")
    return CohClass(surface, c.coeffs[: surface.rank])


def convert_hirzebruch_basis(c: CohClass, direction: str) -> CohClass:
    """u = x + y, E1 = y; inverse x = u - E1, y = E1."""
    s = c.surface
    if direction == "xy_to_uE":
        if s.root is not Root.HIRZEBRUCH:
            raise WrongRootError(f"xy_to_uE needs a Hirzebruch root, got {s.id}")
        p, q = c.coeffs[0], c.coeffs[1]
        target = SurfaceModel(Root.PROJ_PLANE, s.num_blowups + 1)
        return CohClass(target, (p, q - p) + c.coeffs[2:])
    if direction == "uE_to_xy":
        if s.root is not Root.PROJ_PLANE or s.num_blowups < 1:
            raise WrongRootError(f"uE_to_xy needs a blown-up projective plane, got {s.id}")
        d, e1 = c.coeffs[0], c.coeffs[1]
        target = SurfaceModel(Root.HIRZEBRUCH, s.num_blowups - 1)
        return CohClass(target, (d, d + e1) + c.coeffs[2:])
    raise LatticeError(f"unknown direction {direction!r}")


def effective_generators(surface: SurfaceModel) -> tuple[CohClass, ...]:
    if surface.rank >= 3:
        from .exceptional import enumerate_exceptional
        return tuple(enumerate_exceptional(surface).classes)
    if surface.root is Root.PROJ_PLANE:
        if surface.num_blowups == 0:
            return (surface.unit("u"),)
        # X1 in the u, E basis: exceptional curve and fibre
        return (surface.cls(0, 1), surface.cls(1, -1))
    return (surface.unit("x"), surface.unit("y"))


_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(u|x|y|E_?\{?(\d+)\}?)")


def parse_class(surface: SurfaceModel, text: str) -> CohClass:
    s = text.replace(" ", "").replace("−", "-")
    coeffs = [0] * surface.rank
    if s in ("0", ""):
        return CohClass(surface, tuple(coeffs))
    pos = 0
    while pos < len(s):
        mt = _TERM_RE.match(s, pos)
        if not mt or mt.end() == pos or (pos > 0 and not mt.group(1)):
            raise LatticeError(f"cannot parse class {text!r} at {s[pos:]!r}")
        coef = int(mt.group(2)) if mt.group(2) else 1
        if mt.group(1) == "-":
            coef = -coef
        label = mt.group(3) if mt.group(4) is None else f"E{int(mt.group(4))}"
        if label not in surface.basis:
            raise LatticeError(f"{label} is not in the basis of {surface.id}")
        coeffs[surface.basis.index(label)] += coef
        pos = mt.end()
    return CohClass(surface, tuple(coeffs))


def format_class(c: CohClass) -> str:
    out = []
    for label, v in zip(c.surface.basis, c.coeffs):
        if v == 0:
            continue
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        body = label if mag == 1 else f"{mag}{label}"
        if isinstance(mag, Fraction):
            body = f"({mag}){label}"
        out.append(sign + body)
    if not out:
        return "0"
    s = "".join(out)
    return s[1:] if s[0] == "+" else s
