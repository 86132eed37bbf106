"""Closed-form invariants: c1^3 from the two localization formulas, b2, extremal volumes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import CohClass, SurfaceModel, anticanonical, pair


@dataclass(frozen=True)
class InvariantReport:
    c1_cubed: int
    b2: int
    vol_min: int
    vol_max: int
    vol_z0: tuple = field(default=())


def c1_cubed_case_I(b_min: int, m: int, surface0: SurfaceModel, e0plus: CohClass) -> int:
    K = anticanonical(surface0)
    return 24 + 4 * b_min - m + 3 * pair(K, K) - 3 * pair(K, e0plus) + pair(e0plus, e0plus)


def c1_cubed_case_II(surface0: SurfaceModel, e: CohClass, z0: CohClass) -> int:
    K = anticanonical(surface0)
    return (2 * pair(e, e) + 6 * pair(K, K) - 3 * pair(K, z0)
            + 2 * pair(e, z0) + pair(z0, z0))


def b2(surface0: SurfaceModel, num_z0_components: int, num_4dim_extrema: int) -> int:
    if num_4dim_extrema not in (1, 2):
        raise ValueError("one or two 4-dimensional extrema expected")
    return surface0.rank + num_z0_components + num_4dim_extrema - 1


def extremal_volumes(path) -> tuple:
    lo, hi = path.crit_values[0], path.crit_values[-1]
    if path.extremal.min_dim == 2:
        vmin = path.extremal.b_min + 2
    else:
        w = path.omega_at(lo)
        vmin = pair(w, w)
    w = path.omega_at(hi)
    return int(vmin), int(pair(w, w))


def z0_class(path) -> CohClass:
    M0 = path.surface0
    total = M0.zero()
    if path.z0 is not None:
        for c in path.z0.classes:
            total = total + c
    return total


def compute_invariants(path) -> InvariantReport:
    M0 = path.surface0
    ncomp = len(path.z0) if path.z0 is not None else 0
    if path.case == "I":
        c3 = c1_cubed_case_I(path.extremal.b_min, path.m_isolated, M0, path.e_plus(0))
        n4 = 1
    else:
        c3 = c1_cubed_case_II(M0, path.first.euler, z0_class(path))
        n4 = 2
    vmin, vmax = extremal_volumes(path)
    vz = tuple(p.volume for p in path.z0.parts) if path.z0 is not None else ()
    return InvariantReport(c3, b2(M0, ncomp, n4), vmin, vmax, vz)
