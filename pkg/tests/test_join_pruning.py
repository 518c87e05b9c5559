import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipscan.errors import TypeCheckError
from skipscan.join_pruning import (
    BuildSummary,
    ProbeEntry,
    SummaryMode,
    prune_probe,
    summarize_build,
)
from skipscan.values import compare_values

NAN = float("nan")


# ---------------------------------------------------------------------------
# summarize_build


def test_empty_and_all_null_builds():
    assert summarize_build([]).mode is SummaryMode.EMPTY
    assert summarize_build([None, None]).mode is SummaryMode.EMPTY


def test_exact_set_dedups_sorts_and_drops_nulls():
    s = summarize_build([3, None, 1, 3, 2])
    assert s.mode is SummaryMode.EXACT_SET
    assert s.values == (1, 2, 3)


def test_exact_set_keeps_int_float_distinction_by_order():
    s = summarize_build([2.0, 1, 2])  # 2.0 and 2 are the same key point
    assert s.mode is SummaryMode.EXACT_SET
    assert len(s.values) == 2


def test_range_set_singletons_when_within_budget():
    s = summarize_build([5, 1, 9], budget=8, exact_threshold=0)
    assert s.mode is SummaryMode.RANGE_SET
    assert s.ranges == ((1, 1), (5, 5), (9, 9))


def test_range_set_merges_smallest_gaps_first():
    s = summarize_build([1, 2, 3, 10, 11, 20], budget=3, exact_threshold=0)
    assert s.mode is SummaryMode.RANGE_SET
    assert s.ranges == ((1, 3), (10, 11), (20, 20))


def test_range_set_gap_ties_keep_rightmost_separator():
    s = summarize_build([0, 10, 20, 30], budget=2, exact_threshold=0)
    assert s.ranges == ((0, 20), (30, 30))


def test_budget_one_is_global_minmax():
    s = summarize_build([7, 1, 5], budget=1, exact_threshold=0)
    assert s.mode is SummaryMode.GLOBAL_MINMAX
    assert s.ranges == ((1, 7),)


def test_non_numeric_overflow_falls_back_to_global_minmax():
    s = summarize_build(["b", "a", "c"], budget=8, exact_threshold=2)
    assert s.mode is SummaryMode.GLOBAL_MINMAX
    assert s.ranges == (("a", "c"),)
    s = summarize_build(["b", "a"], budget=8, exact_threshold=2)
    assert s.mode is SummaryMode.EXACT_SET


def test_summarize_build_rejects_bad_inputs():
    with pytest.raises(ValueError):
        summarize_build([1], budget=0)
    with pytest.raises(TypeCheckError):
        summarize_build([1, "a"])
    with pytest.raises(TypeCheckError):
        summarize_build([True, 1])
    # int/float mixes are one numeric family
    assert summarize_build([1, 2.5]).mode is SummaryMode.EXACT_SET


def test_nan_key_gap_is_infinite_so_nan_stays_isolated():
    s = summarize_build([1.0, 2.0, NAN], budget=2, exact_threshold=0)
    assert s.mode is SummaryMode.RANGE_SET
    assert s.ranges[0] == (1.0, 2.0)
    lo, hi = s.ranges[1]
    assert lo != lo and hi != hi  # (NaN, NaN)


# ---------------------------------------------------------------------------
# prune_probe


def entries(*windows):
    out = []
    for pid, w in enumerate(windows, start=1):
        if w is None:
            out.append(ProbeEntry(pid, None, None, True))
        else:
            out.append(ProbeEntry(pid, w[0], w[1], False))
    return out


def test_prune_probe_empty_build_prunes_everything():
    kept, pruned = prune_probe(entries((1, 5), None, (9, 9)), BuildSummary(SummaryMode.EMPTY))
    assert kept == []
    assert pruned == [1, 2, 3]


def test_prune_probe_exact_set_window_overlap():
    s = summarize_build([1, 7])
    kept, pruned = prune_probe(entries((5, 9), (2, 6), (8, 10), None), s)
    assert kept == [1]
    assert pruned == [2, 3, 4]


def test_prune_probe_range_set_overlap():
    s = summarize_build([1, 2, 3, 10, 11, 20], budget=3, exact_threshold=0)
    kept, pruned = prune_probe(entries((4, 9), (11, 12), (21, 99)), s)
    assert kept == [2]
    assert pruned == [1, 3]


def test_prune_probe_preserved_probe_keeps_all():
    kept, pruned = prune_probe(
        entries((5, 9), None), BuildSummary(SummaryMode.EMPTY), probe_preserved=True
    )
    assert kept == [1, 2]
    assert pruned == []


def test_prune_probe_nan_window():
    s = summarize_build([NAN, 1.0])
    kept, _ = prune_probe(entries((NAN, NAN), (2.0, 3.0)), s)
    assert kept == [1]


# ---------------------------------------------------------------------------
# Properties

keys_st = st.lists(st.one_of(st.none(), st.integers(-40, 40)), max_size=60)
parts_st = st.lists(
    st.lists(st.one_of(st.none(), st.integers(-40, 40)), min_size=1, max_size=8),
    min_size=1,
    max_size=8,
)


def probe_entries(parts):
    out = []
    for pid, vals in enumerate(parts, start=1):
        nn = [v for v in vals if v is not None]
        if nn:
            out.append(ProbeEntry(pid, min(nn), max(nn), False))
        else:
            out.append(ProbeEntry(pid, None, None, True))
    return out


SUMMARY_KNOBS = [
    {"budget": 64, "exact_threshold": 10**6},  # exact
    {"budget": 4, "exact_threshold": 0},  # ranges
    {"budget": 1, "exact_threshold": 0},  # global
]


@settings(max_examples=300, deadline=None)
@given(keys=keys_st, parts=parts_st, knobs=st.sampled_from(SUMMARY_KNOBS))
def test_property_pruned_partitions_hold_no_joinable_row(keys, parts, knobs):
    summary = summarize_build(keys, **knobs)
    build = {k for k in keys if k is not None}
    _, pruned = prune_probe(probe_entries(parts), summary)
    for pid in pruned:
        for v in parts[pid - 1]:
            assert v is None or v not in build


@settings(max_examples=300, deadline=None)
@given(keys=st.lists(st.integers(-40, 40), min_size=1, max_size=60), parts=parts_st)
def test_property_summary_precision_is_ordered(keys, parts):
    pe = probe_entries(parts)
    by_mode = {}
    for knobs in SUMMARY_KNOBS:
        s = summarize_build(keys, **knobs)
        by_mode[s.mode] = set(prune_probe(pe, s)[1])
    exact = by_mode[SummaryMode.EXACT_SET]
    ranged = by_mode.get(SummaryMode.RANGE_SET, by_mode.get(SummaryMode.EXACT_SET))
    coarse = by_mode.get(SummaryMode.GLOBAL_MINMAX, by_mode.get(SummaryMode.EXACT_SET))
    assert ranged <= exact
    assert coarse <= ranged


@settings(max_examples=300, deadline=None)
@given(keys=st.lists(st.integers(-40, 40), min_size=1, max_size=60), parts=parts_st)
def test_property_exact_set_matches_window_overlap_oracle(keys, parts):
    s = summarize_build(keys, exact_threshold=10**6)
    kept, pruned = prune_probe(probe_entries(parts), s)
    build = sorted(set(keys))
    for e in probe_entries(parts):
        overlap = not e.all_null and any(e.lo <= k <= e.hi for k in build)
        assert (e.pid in kept) == overlap
        assert (e.pid in pruned) == (not overlap)
