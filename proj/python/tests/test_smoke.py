import json

import pytest

import qkcomin


def test_projective_line():
    e = qkcomin.Engine("gr:1,2")
    assert e.product("1", "") == [("", 1, "1")]
    assert len(e) == 2


def test_unit_product_bases():
    e = qkcomin.Engine("gr:2,4")
    assert e.product("", "1", v_basis="opposite") == [("1", 0, "1")]
    assert e.product("", "1") == [("2,1", 0, "1")]


def test_dist_and_neighborhood():
    e = qkcomin.Engine("gr:2,4")
    assert e.dist("2,2", "") == 2
    assert e.neighborhood("2,2", 1) == "1"


def test_product_json_sum_check():
    e = qkcomin.Engine("gr:2,4", equivariant=True)
    doc = json.loads(e.product_json("1", "2,1"))
    assert doc["space"] == "gr:2,4"
    assert doc["equivariant"] is True
    assert list(doc) == ["space", "equivariant", "u", "v", "v_basis", "terms", "sum_check"]
    [t] = qkcomin.ingest(e.product_json("1", "2,1"))
    assert t["sum_matches"]


def test_verify_passes():
    for space, eq in [("gr:2,4", True), ("gr:2,5", False)]:
        report = qkcomin.Engine(space, equivariant=eq).verify()
        assert len(report) == 3
        for pairs, violations in report.values():
            assert pairs > 0
            assert violations == []


def test_table_roundtrip():
    e = qkcomin.Engine("gr:2,4")
    rows = e.table_json()
    assert len(rows) == 36
    text = "[" + ",".join(rows) + "]"
    assert all(t["sum_matches"] for t in qkcomin.ingest(text))


def test_errors():
    with pytest.raises(ValueError):
        qkcomin.Engine("gr:5,3")
    with pytest.raises(ValueError):
        qkcomin.Engine("gr:2,6", equivariant=True)
    e = qkcomin.Engine("gr:2,4")
    with pytest.raises(ValueError):
        e.product("3", "")
    with pytest.raises(ValueError):
        e.product("", "", v_basis="sideways")
    with pytest.raises(ValueError):
        qkcomin.ingest("{not json")


def test_normalize_laurent():
    assert qkcomin.normalize_laurent("1", 2) == "1"
    assert qkcomin.normalize_laurent("0", 3) == "0"
