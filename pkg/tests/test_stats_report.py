import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from jsonschema import ValidationError

from skipscan.executor import EngineConfig, execute
from skipscan.planner import plan_query
from skipscan.stats_report import (
    check_conservation,
    flow_report,
    percentile,
    pruning_ratio,
    render_flow_report,
    summarize_ratios,
    validate_stats,
)

from conftest import ALPINE_PREDICATE


@pytest.fixture
def docs(alpine_catalog):
    out = []
    for sql in [
        "SELECT * FROM obs WHERE %s" % ALPINE_PREDICATE,
        "SELECT * FROM obs WHERE %s LIMIT 3" % ALPINE_PREDICATE,
        "SELECT * FROM obs ORDER BY sightings DESC LIMIT 2",
        "SELECT * FROM obs",
    ]:
        _, plan = plan_query(sql, alpine_catalog)
        out.append(execute(plan, EngineConfig()).stats.to_json())
    return out


# ---------------------------------------------------------------------------
# Schema validation


def test_engine_documents_validate(docs):
    for doc in docs:
        validate_stats(doc)


def test_validation_rejects_corruption(docs):
    base = docs[0]
    bad_version = copy.deepcopy(base)
    bad_version["version"] = 2
    missing_key = copy.deepcopy(base)
    del missing_key["scans"][0]["ratio"]
    extra_key = copy.deepcopy(base)
    extra_key["scans"][0]["surprise"] = 1
    bad_reason = copy.deepcopy(base)
    bad_reason["scans"][0]["limit_reason"] = "sometimes"
    bad_ids = copy.deepcopy(base)
    bad_ids["scans"][0]["scanned_ids"] = ["one"]
    for doc in (bad_version, missing_key, extra_key, bad_reason, bad_ids):
        with pytest.raises(ValidationError):
            validate_stats(doc)


# ---------------------------------------------------------------------------
# Conservation checking


def test_conservation_clean_documents(docs):
    for doc in docs:
        assert check_conservation(doc) == []


def test_conservation_flags_duplicates_and_mismatches(docs):
    doc = copy.deepcopy(docs[0])
    scan = doc["scans"][0]
    scan["pruned_ids"]["limit"] = [scan["scanned_ids"][0]]
    problems = check_conservation(doc)
    assert any("both scanned and pruned by limit" in p for p in problems)

    doc = copy.deepcopy(docs[0])
    scan = doc["scans"][0]
    scan["pruned_ids"]["join"] = list(scan["pruned_ids"]["filter"])
    problems = check_conservation(doc)
    assert any("both filter and pruned by join" in p or "pruned by" in p for p in problems)

    doc = copy.deepcopy(docs[0])
    doc["scans"][0]["scanned_ids"].pop()
    assert any("accounted for" in p for p in check_conservation(doc))

    doc = copy.deepcopy(docs[0])
    doc["scans"][0]["scanned_ids"] *= 2
    assert any("twice" in p for p in check_conservation(doc))


# ---------------------------------------------------------------------------
# Ratio math


def test_pruning_ratio():
    assert pruning_ratio(1, 4) == 0.25
    assert pruning_ratio(0, 7) == 0.0
    assert pruning_ratio(0, 0) is None


def test_percentile_nearest_rank():
    vals = [4, 1, 3, 2]
    assert percentile(vals, 25) == 1
    assert percentile(vals, 50) == 2
    assert percentile(vals, 75) == 3
    assert percentile(vals, 100) == 4
    assert percentile(vals, 1) == 1
    assert percentile([7], 99) == 7


def test_percentile_rejects_bad_input():
    with pytest.raises(ValueError):
        percentile([], 50)
    with pytest.raises(ValueError):
        percentile([1], 0)
    with pytest.raises(ValueError):
        percentile([1], 101)


@settings(max_examples=200, deadline=None)
@given(
    vals=st.lists(st.floats(0, 1), min_size=1, max_size=30),
    p=st.floats(min_value=0.01, max_value=100),
)
def test_property_percentile_in_values_and_monotone(vals, p):
    r = percentile(vals, p)
    assert r in vals
    assert percentile(vals, 100) == max(vals)
    if p >= 50:
        assert percentile(vals, 50) <= r


def test_summarize_ratios():
    s = summarize_ratios([0.0, 0.5, 1.0, None])
    assert s["count"] == 3
    assert s["mean"] == 0.5
    assert s["p99"] == 1.0
    assert summarize_ratios([None, None]) is None
    assert summarize_ratios([]) is None


# ---------------------------------------------------------------------------
# Flow report


def test_flow_report_totals_match_hand_recount(docs):
    report = flow_report(docs)
    assert report["queries"] == 4

    total = sum(s["partitions_total"] for d in docs for s in d["scans"])
    pruned = sum(
        s["pruned_by_%s" % t]
        for d in docs
        for s in d["scans"]
        for t in ("filter", "limit", "join", "topk")
    )
    assert report["partitions_total"] == total
    assert report["partitions_pruned"] == pruned
    assert report["aggregate_ratio"] == pruned / total

    for t in ("filter", "limit", "join", "topk"):
        eligible = sum(1 for d in docs if d["techniques"][t]["eligible"])
        applied = sum(1 for d in docs if d["techniques"][t]["applied"])
        assert report["techniques"][t]["eligible_queries"] == eligible
        assert report["techniques"][t]["applied_queries"] == applied


def test_flow_report_co_applied_matrix(docs):
    report = flow_report(docs)
    co = report["co_applied"]
    # doc 2 fires filter+limit together; docs 1 fires filter alone
    assert co["filter"]["limit"] == 1
    assert co["limit"]["filter"] == 1
    assert co["filter"]["filter"] == 2
    assert co["topk"]["topk"] == 1
    assert co["join"]["join"] == 0


def test_render_flow_report_smoke(docs):
    text = render_flow_report(flow_report(docs))
    for needle in ("queries: 4", "filter", "limit", "join", "topk", "co-applied"):
        assert needle in text
    empty = render_flow_report(flow_report([]))
    assert "queries: 0" in empty
