import json
import re
import shutil
from dataclasses import replace
from pathlib import Path

import jsonschema
import pytest

from tfdclass.catalog import (
    CHECKSUM_FILE, COLUMNS, GOLDEN_FILES, GoldenIOError, SchemaError, checksum_text, diff,
    golden_catalog, golden_dir, rebuild, record_from_json, record_key, record_to_json, table_row,
)
from tfdclass.curves import enumerate_decompositions
from tfdclass.reduction import positivity_ok, validate_level_structure

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())


@pytest.fixture
def golden_copy(tmp_path):
    for name in GOLDEN_FILES + (CHECKSUM_FILE,):
        shutil.copy(golden_dir() / name, tmp_path / name)
    return tmp_path


def test_golden_has_56_rows(golden):
    assert len(golden) == 56
    assert len({g.label for g in golden}) == 56
    assert len({record_key(g) for g in golden}) == 56


def test_golden_rows_are_internally_consistent(golden):
    for g in golden:
        assert validate_level_structure(g.slices), g.label
        assert all(positivity_ok(s) for s in g.slices.slices), g.label
        fresh = rebuild(g)
        assert (fresh.b2, fresh.c1_cubed) == (g.b2, g.c1_cubed), g.label
        assert sorted(gn for _, gn in fresh.z0_components) == sorted(gn for _, gn in g.z0_components)


def test_golden_decompositions_are_unique(golden):
    for g in golden:
        if not g.z0_classes:
            continue
        total = g.surface0.zero()
        for c in g.z0_classes:
            total = total + c
        found = enumerate_decompositions(g.surface0, total)
        assert [sorted(d.classes, key=lambda c: c.coeffs) for d in found] == \
            [sorted(g.z0_classes, key=lambda c: c.coeffs)], g.label


def test_checksum_file_is_current():
    assert checksum_text(golden_dir()) == (golden_dir() / CHECKSUM_FILE).read_text()


def test_checksum_mismatch_is_io_error(golden_copy):
    p = golden_copy / GOLDEN_FILES[0]
    p.write_text(p.read_text().replace('"c1_cubed": 54', '"c1_cubed": 55', 1))
    with pytest.raises(GoldenIOError, match="checksum"):
        golden_catalog(golden_copy)


def test_missing_file_is_io_error(golden_copy):
    (golden_copy / GOLDEN_FILES[1]).unlink()
    with pytest.raises(GoldenIOError):
        golden_catalog(golden_copy)


def test_env_override(golden_copy, monkeypatch):
    monkeypatch.setenv("TFD_GOLDEN_DIR", str(golden_copy))
    assert golden_dir() == golden_copy
    assert len(golden_catalog()) == 56


def test_json_round_trip_and_schema(golden):
    for g in golden:
        d = record_to_json(g)
        jsonschema.validate(d, SCHEMA)
        back = record_from_json(json.loads(json.dumps(d)))
        assert back == g, g.label
        assert record_to_json(back) == d


@pytest.mark.parametrize("field", ["b2", "surface0", "path", "z0_components"])
def test_schema_error_names_field(golden, field):
    d = record_to_json(golden[0])
    del d[field]
    with pytest.raises(SchemaError, match=field):
        record_from_json(d)


def test_schema_error_on_bad_nested_value(golden):
    d = record_to_json(next(g for g in golden if g.z0_classes))
    d["z0_components"][0]["class"]["coeffs"] = "oops"
    with pytest.raises(SchemaError, match="z0_components"):
        record_from_json(d)


def test_diff_clean(golden):
    assert not diff(golden, golden)


def test_diff_fault_injection(golden):
    hurt = list(golden)
    hurt[3] = replace(hurt[3], c1_cubed=hurt[3].c1_cubed + 2)
    rep = diff(hurt, golden)
    assert rep.mismatches and rep.mismatches[0][:2] == (golden[3].label, "c1_cubed")
    rep = diff(golden[1:], golden)
    assert rep.missing == [golden[0].label] and not rep.extra
    rep = diff(golden, golden[1:])
    assert len(rep.extra) == 1 and not rep.missing
    assert any("mismatch" in line for line in diff(hurt, golden).lines())


def test_table_row_columns(golden):
    row = table_row(golden[0])
    assert tuple(row) == COLUMNS
    assert row["label"] == "I-1-1.1" and row["c1_cubed"] == 54


# Picard rank of the varieties listed in each section of the Fano classification
SECTION_RANK = {"12.3": {2}, "12.4": {3}, "12.5": {4}, "12.6": {5, 6, 7, 8, 9, 10}}
# cited as one of two rank-4 varieties although the row has b2 = 5
RANK_CONFLICTS = {"II-2-2.5"}


def test_fano_sections_match_b2(golden):
    conflicts = set()
    for g in golden:
        sections = re.findall(r"Section (12\.\d)", g.fano.mori_mukai_id)
        assert sections, g.label
        if not any(g.b2 in SECTION_RANK[s] for s in sections):
            conflicts.add(g.label)
    assert conflicts == RANK_CONFLICTS
