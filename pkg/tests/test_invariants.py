import pytest

from reference_volumes import VOLUMES
from tfdclass.catalog import build_path
from tfdclass.invariants import b2, c1_cubed_case_II, compute_invariants, extremal_volumes
from tfdclass.lattice import surface_from_id


def by_label(golden, label):
    return next(g for g in golden if g.label == label)


@pytest.mark.parametrize("label,c3", [("I-1-1.1", 54), ("II-2-1.6", 26), ("II-1-2.4", 44),
                                      ("I-4-1.2", 36), ("I-3-1.6", 36)])
def test_spot_c1_cubed(golden, label, c3):
    g = by_label(golden, label)
    assert compute_invariants(g.slices).c1_cubed == c3 == g.c1_cubed


def test_all_rows_recompute(golden):
    for g in golden:
        inv = compute_invariants(g.slices)
        assert (inv.b2, inv.c1_cubed) == (g.b2, g.c1_cubed), g.label


@pytest.mark.parametrize("label", sorted(VOLUMES))
def test_reference_volumes(golden, label):
    assert extremal_volumes(by_label(golden, label).slices) == VOLUMES[label]


def test_b2_rule():
    X3 = surface_from_id("X3")
    assert b2(X3, 0, 2) == 5
    assert b2(surface_from_id("ES2#2"), 1, 1) == 5
    with pytest.raises(ValueError):
        b2(X3, 0, 3)


def test_case_II_formula_directly():
    P2 = surface_from_id("P2")
    assert c1_cubed_case_II(P2, P2.cls(0), P2.cls(0)) == 54
    p = build_path("II-2-1", P2, P2.cls(-2), (P2.cls(4),))
    assert compute_invariants(p).vol_z0 == (12,)
