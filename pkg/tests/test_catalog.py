import pytest

from derangement_cliques.catalog import (
    analyze,
    build_catalog,
    check_record,
    exceptional_records,
    load_catalog,
    sampled_clique,
    standard_groups,
    verify_catalog,
)
from derangement_cliques.derangement import is_clique
from derangement_cliques.groupfile import make_record, parse_group_file
from derangement_cliques.perm import affine_line_group, alt4_on_pairs, symmetric_group, wreath_imprimitive


def test_catalog_contents(catalog_records):
    assert len(catalog_records) == len(standard_groups()) + 3
    exc = exceptional_records()
    assert sorted(r.name for r in exc) == [
        "exceptional_deg18_order324_1", "exceptional_deg30_order1200_1", "exceptional_deg30_order600_2"]
    assert all(r.tag("search") for r in exc)


def test_analyze_alt4_on_pairs():
    rep = analyze(alt4_on_pairs())
    assert rep.classification == "exception-candidate"
    assert (rep.order, rep.derangements, rep.omega, rep.alpha) == (12, 8, 3, 4)
    assert rep.block_systems == [(3, 2)]
    assert rep.bounds_hold and rep.product_bound_tight and rep.density_bound_tight
    text = rep.to_kv()
    assert "omega=3\n" in text and "classification=exception-candidate\n" in text


def test_analyze_reports_caps():
    rep = analyze(symmetric_group(7))
    assert rep.classification == "4-clique"
    assert "alpha" in rep.errors and rep.alpha is None and rep.bounds_hold is None


def test_sampled_clique_on_large_ambient():
    W = wreath_imprimitive(affine_line_group(5), alt4_on_pairs(), cap=10)
    w = sampled_clique(W, 4)
    assert w is not None and len(w) == 4 and is_clique(list(w))
    rep = analyze(W)
    assert rep.four_clique_method == "sampled" and rep.order is None


def test_check_record_detects_wrong_tags():
    rec = make_record("s4", symmetric_group(4), {"order": 24, "omega": 3, "exceptional": True})
    res = check_record(rec)
    assert not res.passed
    assert any(f.startswith("omega") for f in res.failures)
    assert any(f.startswith("exceptional") for f in res.failures)


def test_build_and_verify_round_trip(tmp_path, catalog_records):
    recs = [catalog_records["exceptional_deg18_order324_1"]]
    paths = build_catalog(tmp_path, recs, coclique=False)
    assert len(paths) == len(standard_groups()) + 1
    summary = verify_catalog(tmp_path)
    assert summary.passed, summary.lines()
    built = parse_group_file(tmp_path / "exceptional_deg18_order324_1.grp")
    assert built.tag("search") == recs[0].tag("search")
    assert built.tag("alpha") is None


def test_shipped_catalog_verifies():
    summary = verify_catalog()
    assert summary.passed, [l for l in summary.lines() if l.startswith("FAIL")]
    assert len(summary.results) == len(load_catalog())


def test_empty_directory(tmp_path):
    summary = verify_catalog(tmp_path)
    assert summary.results == [] and summary.passed


def test_search_records_are_exception_candidates(catalog_records):
    for rec in exceptional_records():
        rep = analyze(rec, coclique=False)
        assert rep.classification == "exception-candidate" and rec.degree in (18, 30)
        assert rep.omega == 3
