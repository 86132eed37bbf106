"""Exceptional classes (square -1, anticanonical degree 1) of del Pezzo lattices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .lattice import (
    CohClass, Root, SurfaceModel, TruncationError, DelPezzoBoundError, MAX_RANK,
    anticanonical, convert_hirzebruch_basis, pair,
)

# maximal entries of the closed list: 6u - 3E1 - 2E2..E8
U_BOX = 6
E_BOX = 3

# (u-coefficient, E-coefficients) up to index permutation
TEMPLATES = (
    (0, (1,)),
    (1, (-1, -1)),
    (2, (-1,) * 5),
    (3, (-2,) + (-1,) * 6),
    (4, (-2,) * 3 + (-1,) * 5),
    (5, (-2,) * 6 + (-1,) * 2),
    (6, (-3,) + (-2,) * 7),
)


@dataclass(frozen=True)
class ExceptionalSet:
    surface: SurfaceModel
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __contains__(self, c):
        return c in self.classes


@lru_cache(maxsize=None)
def e_vectors(n: int, total: int, squares: int, bound: int) -> tuple:
    """All integer n-vectors with entries in [-bound, bound], given sum and sum of squares."""
    if n == 0:
        return ((),) if total == 0 and squares == 0 else ()
    if squares < 0 or total * total > n * squares or squares > n * bound * bound:
        return ()
    if (squares - total) % 2:
        return ()
    out = []
    for c in range(-bound, bound + 1):
        for rest in e_vectors(n - 1, total - c, squares - c * c, bound):
            out.append((c,) + rest)
    return tuple(out)


def classes_with(surface: SurfaceModel, degree: int, square: int, root_box: int, e_box: int):
    """Classes D with K.D = degree and D.D = square inside the coefficient box.

    The root part is scanned directly; the E part is solved from its sum
    and sum of squares.
    """
    m = surface.num_blowups
    k_root = anticanonical(surface).root_part
    rng = range(-root_box, root_box + 1)
    out = []
    for r in product(rng, repeat=surface.root_rank):
        if surface.root is Root.PROJ_PLANE:
            kr, rr = k_root[0] * r[0], r[0] * r[0]
        else:
            kr = k_root[0] * r[1] + k_root[1] * r[0]
            if surface.root is Root.HIRZEBRUCH:
                kr -= k_root[1] * r[1]
            rr = 2 * r[0] * r[1] - (r[1] * r[1] if surface.root is Root.HIRZEBRUCH else 0)
        # K.D = kr + sum(c), D.D = rr - sum(c^2)
        for ev in e_vectors(m, degree - kr, rr - square, e_box):
            out.append(CohClass(surface, tuple(r) + ev))
    return out


def _boxed(surface, root_box, e_box):
    wide = classes_with(surface, 1, -1, root_box + 1, e_box + 1)
    for c in wide:
        if max(map(abs, c.root_part), default=0) > root_box or max(map(abs, c.e_part), default=0) > e_box:
            raise TruncationError(f"exceptional class {c} on {surface.id} lies outside the search box")
    return wide


@lru_cache(maxsize=None)
def enumerate_exceptional(surface: SurfaceModel) -> ExceptionalSet:
    if surface.rank > MAX_RANK:
        raise DelPezzoBoundError(f"rank {surface.rank} exceeds {MAX_RANK}")
    if surface.root is Root.HIRZEBRUCH:
        flat = SurfaceModel(Root.PROJ_PLANE, surface.num_blowups + 1)
        found = [convert_hirzebruch_basis(c, "uE_to_xy") for c in enumerate_exceptional(flat)]
    else:
        found = _boxed(surface, U_BOX, E_BOX)
    for c in found:
        assert pair(c, c) == -1 and pair(anticanonical(surface), c) == 1
    return ExceptionalSet(surface, tuple(sorted(set(found), key=lambda c: c.coeffs)))


def _distinct_perms(items):
    items = sorted(items)
    if not items:
        yield ()
        return
    seen = set()
    for i, v in enumerate(items):
        if v in seen:
            continue
        seen.add(v)
        for rest in _distinct_perms(items[:i] + items[i + 1:]):
            yield (v,) + rest


def closed_list(surface: SurfaceModel) -> set:
    m = surface.num_blowups
    out = set()
    for d, es in TEMPLATES:
        if len(es) > m:
            continue
        for perm in _distinct_perms(es + (0,) * (m - len(es))):
            out.add(CohClass(surface, (d,) + perm))
    return out


def verify_against_closed_list(surface: SurfaceModel) -> bool:
    if surface.root is not Root.PROJ_PLANE:
        raise ValueError("closed list is stated in the u, E basis")
    return set(enumerate_exceptional(surface).classes) == closed_list(surface)
