"""Adjunction genus and decompositions of a level-zero class into disjoint fixed surfaces."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exceptional import classes_with
from .lattice import CohClass, SurfaceModel, TruncationError, anticanonical, pair


def genus(surface: SurfaceModel, d: CohClass) -> int:
    twice = pair(d, d) - pair(anticanonical(surface), d)
    assert twice % 2 == 0, "lattice parity violated"
    return 1 + twice // 2


def is_realizable(surface: SurfaceModel, d: CohClass) -> bool:
    return pair(anticanonical(surface), d) >= 1 and genus(surface, d) >= 0


@dataclass(frozen=True)
class ComponentClass:
    cls: CohClass
    genus: int
    volume: int

    def __post_init__(self):
        s = self.cls.surface
        assert self.volume == pair(anticanonical(s), self.cls)
        assert self.genus == genus(s, self.cls)
        assert self.volume >= 1 and self.genus >= 0
        assert pair(self.cls, self.cls) >= -1

    @classmethod
    def of(cls, c: CohClass) -> "ComponentClass":
        s = c.surface
        return cls(c, genus(s, c), pair(anticanonical(s), c))


@dataclass(frozen=True)
class Decomposition:
    parts: tuple

    def __post_init__(self):
        # canonical order: coefficient tuples, nonincreasing
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=lambda p: p.cls.coeffs, reverse=True)))

    @property
    def classes(self) -> tuple:
        return tuple(p.cls for p in self.parts)

    def total(self) -> CohClass:
        out = self.parts[0].cls.surface.zero()
        for p in self.parts:
            out = out + p.cls
        return out

    def is_valid(self, target: CohClass) -> bool:
        if not self.parts or self.total() != target:
            return False
        n = len(self.parts)
        return all(pair(self.parts[i].cls, self.parts[j].cls) == 0 for i in range(n) for j in range(i + 1, n))

    def __len__(self):
        return len(self.parts)


def candidate_parts(surface: SurfaceModel, target: CohClass) -> list:
    """Classes that could occur as one component of a decomposition of target."""
    K = anticanonical(surface)
    V = pair(K, target)
    B = V + 2
    kk = pair(K, K)
    out = []
    for v in range(1, V + 1):
        # genus >= 0 gives D.D >= v - 2; Hodge index gives (K.D)^2 >= K^2 D^2
        for s in range(v - 2, (v * v) // kk + 1):
            for c in classes_with(surface, v, s, B, B):
                if pair(c, target - c) != 0:
                    continue
                if max(abs(a) for a in c.coeffs) >= B:
                    raise TruncationError(f"decomposition part {c} of {target} touches the box {B}")
                out.append(c)
    return sorted(out, key=lambda c: c.coeffs, reverse=True)


@lru_cache(maxsize=4096)
def enumerate_decompositions(surface: SurfaceModel, target: CohClass) -> frozenset:
    if target.surface != surface:
        raise ValueError("target lives on another surface")
    if pair(anticanonical(surface), target) < 1:
        return frozenset()
    cands = candidate_parts(surface, target)
    K = anticanonical(surface)
    found = set()

    def rec(start, remaining, chosen):
        if remaining.is_zero:
            found.add(Decomposition(tuple(ComponentClass.of(c) for c in chosen)))
            return
        if pair(K, remaining) < 1:
            return
        for i in range(start, len(cands)):
            c = cands[i]
            if all(pair(c, o) == 0 for o in chosen):
                rec(i, remaining - c, chosen + [c])

    rec(0, target, [])
    for d in found:
        assert d.is_valid(target)
    return frozenset(found)
