from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import PROPERTY
from tfdclass.lattice import BasisMismatchError, Root, SurfaceModel, anticanonical, blow_up
from tfdclass.reduction import (
    BLOWUP, COLLAPSE, EXTREMAL, REGULAR, LevelSlice, PositivityReport, build_case_I_path, build_case_II_path,
    cross_index_two, dh_class, is_admissible_component, positivity_ok, positivity_report,
    validate_level_structure,
)

ES2 = SurfaceModel(Root.HIRZEBRUCH, 0)
Q = SurfaceModel(Root.QUADRIC, 0)
P2 = SurfaceModel(Root.PROJ_PLANE, 0)


@pytest.mark.parametrize("row,ok", [
    ((1, 4, 2, "max"), True), ((-2, 2, 0, "min"), True), ((0, 2, 2, None), True),
    ((-1, 0, 2, None), True), ((0, 0, 2, None), False), ((2, 4, 2, "max"), False),
    ((-1, 4, 0, "max"), False),
])
def test_fixed_component_table(row, ok):
    assert is_admissible_component(*row) is ok


def test_dh_class_is_affine():
    s = LevelSlice((Fraction(-1), Fraction(1)), P2, P2.cls(1), P2.cls(4))
    assert dh_class(s, 0) == P2.cls(3)
    assert dh_class(s, 1) == P2.cls(2)
    with pytest.raises(ValueError):
        dh_class(s, 2)


def test_case_I_examples():
    bad = build_case_I_path("I-1", ES2, 0, 0)
    assert not all(positivity_ok(s) for s in bad.slices)
    good = build_case_I_path("I-1", Q, 1, 0)
    assert all(positivity_ok(s) for s in good.slices)
    assert validate_level_structure(good)
    assert good.omega_at(-2) == Q.cls(4, 0)
    assert good.omega0 == anticanonical(Q)


def test_case_I_blowup_slice_kinds():
    p = build_case_I_path("I-2", ES2, -1, 1)
    assert [s.lo_kind for s in p.slices] == [COLLAPSE, BLOWUP]
    assert p.slices[-1].hi_kind == EXTREMAL
    # new exceptional class has size zero right after the blow-up
    w = p.slices[1].omega_at(-1)
    assert w.coeffs[-1] == 0


def test_case_II_examples():
    p = build_case_II_path("II-1-1", P2, P2.cls(3))
    assert not all(positivity_ok(s) for s in p.slices)
    p = build_case_II_path("II-1-1", P2, P2.cls(0))
    assert all(positivity_ok(s) for s in p.slices) and validate_level_structure(p)
    z = build_case_II_path("II-2-1", P2, P2.cls(-2), (P2.cls(4),))
    assert [s.euler for s in z.slices] == [P2.cls(-2), P2.cls(2)]
    assert z.crit_values == (-1, 0, 1)


def test_cross_index_two_rejects_foreign_classes():
    s = LevelSlice((Fraction(-1), Fraction(0)), P2, P2.cls(0), P2.cls(3))
    with pytest.raises(BasisMismatchError):
        cross_index_two(s, [Q.cls(1, 0)], 1)
    X2 = blow_up(P2, 2)
    with pytest.raises(BasisMismatchError):
        cross_index_two(s, [X2.unit("E1")], 1)


def test_zero_square_endpoint_fails():
    s = LevelSlice((Fraction(0), Fraction(2)), Q, Q.cls(1, -1), Q.cls(1, 0), REGULAR, REGULAR)
    rep = positivity_report(s)
    assert not rep.endpoints_ok and not rep.ok and not rep.flagged


def test_flag_means_endpoints_only():
    assert PositivityReport(True, False).flagged
    assert not PositivityReport(True, False).ok
    assert not PositivityReport(False, False).flagged


def test_golden_round_trip(golden):
    for g in golden:
        p = g.slices
        s = p.slices[0]
        rebuilt = [s]
        for prev, nxt in zip(p.slices, p.slices[1:]):
            surface = nxt.surface
            crossing = [surface.unit(f"E{i}") for i in range(prev.surface.num_blowups + 1, surface.num_blowups + 1)]
            if not crossing:
                crossing = list(g.z0_classes)
            s = cross_index_two(s, crossing, nxt.hi, nxt.hi_kind)
            rebuilt.append(s)
        assert [(r.surface, r.euler) for r in rebuilt] == [(r.surface, r.euler) for r in p.slices], g.label
        assert rebuilt[-1].omega_at(rebuilt[-1].hi) == p.omega_at(p.crit_values[-1])


@PROPERTY
@given(k=st.integers(-8, 8), m=st.integers(0, 7), a=st.integers(-8, 8), b=st.integers(-8, 8),
       cs=st.lists(st.integers(-8, 8), min_size=7, max_size=7),
       t=st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_wall_crossing_matches_closed_form(k, m, a, b, cs, t):
    cs = cs[:m]
    M0 = blow_up(ES2, m)
    # start at the minimum with the class obtained by running the affine model backwards
    s = LevelSlice((Fraction(-2), Fraction(-1)), ES2, ES2.cls(k, -1), ES2.cls(3 + 2 * k, 0), COLLAPSE)
    if m:
        s = cross_index_two(s, [M0.unit(f"E{i}") for i in range(1, m + 1)], 0)
    else:
        s = LevelSlice((Fraction(-2), Fraction(0)), ES2, ES2.cls(k, -1), ES2.cls(3 + 2 * k, 0), COLLAPSE)
    assert s.omega_at(0) == anticanonical(M0)
    z0 = M0.cls(a, b, *cs)
    top = cross_index_two(s, [z0], 1, EXTREMAL)
    expected = M0.cls(3 - (a + k) * t, 2 + (1 - b) * t, *[-(1 + (c + 1) * t) for c in cs])
    assert top.omega_at(t) == expected
    assert top.euler == M0.cls(k + a, b - 1, *[1 + c for c in cs])
