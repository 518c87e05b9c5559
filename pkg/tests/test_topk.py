import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipscan.topk import (
    Boundary,
    Direction,
    ScanEntry,
    ScanOrderStrategy,
    TopKState,
    groupby_topk_eligible,
    init_boundary,
    order_scan_set,
    should_prune,
)
from skipscan.values import compare_values, value_order_key

NAN = float("nan")
DESC, ASC = Direction.DESC, Direction.ASC


# ---------------------------------------------------------------------------
# TopKState


def test_topk_keeps_best_k_desc():
    s = TopKState(2, DESC)
    for i, v in enumerate([5, 1, 9, 7]):
        s.insert(v, (1, i))
    assert [(v, uid) for v, uid, _ in s.results()] == [(9, (1, 2)), (7, (1, 3))]


def test_topk_ties_never_displace_and_order_by_uid():
    s = TopKState(2, ASC)
    assert s.insert(4, (1, 0)) is True
    assert s.insert(4, (1, 1)) is True
    assert s.insert(4, (1, 2)) is False  # equal to the worst resident
    assert [(v, uid) for v, uid, _ in s.results()] == [(4, (1, 0)), (4, (1, 1))]


def test_topk_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        TopKState(0, DESC)


def test_organic_boundary_needs_k_entries():
    s = TopKState(2, DESC)
    s.insert(10, (1, 0))
    assert s.organic_boundary() is None
    s.insert(3, (1, 1))
    assert s.organic_boundary() == Boundary(3, strict=False)


def test_boundary_prefers_the_tighter_source():
    s = TopKState(1, DESC)
    s.set_initial_boundary(5)
    assert s.boundary() == Boundary(5, strict=True)
    s.insert(9, (1, 0))
    assert s.boundary() == Boundary(9, strict=False)
    s.set_initial_boundary(20)
    assert s.boundary() == Boundary(20, strict=True)


def test_equal_value_organic_beats_synthetic():
    # inclusive pruning (<=) removes more than strict (<) at the same value
    org = Boundary(7, strict=False)
    syn = Boundary(7, strict=True)
    assert org.tighter_than(syn, DESC) is True
    assert syn.tighter_than(org, DESC) is False
    s = TopKState(1, DESC)
    s.set_initial_boundary(7)
    s.insert(7, (1, 0))
    assert s.boundary() == Boundary(7, strict=False)


def test_tighter_than_directions():
    assert Boundary(9, False).tighter_than(Boundary(5, False), DESC)
    assert not Boundary(5, False).tighter_than(Boundary(9, False), DESC)
    assert Boundary(5, False).tighter_than(Boundary(9, False), ASC)
    assert Boundary(5, False).tighter_than(None, ASC)


# ---------------------------------------------------------------------------
# should_prune


def test_should_prune_desc_rules():
    org = Boundary(10, strict=False)
    syn = Boundary(10, strict=True)
    assert should_prune(0, 9, False, org, DESC) is True
    assert should_prune(0, 10, False, org, DESC) is True
    assert should_prune(0, 10, False, syn, DESC) is False  # ties may be needed
    assert should_prune(0, 11, False, org, DESC) is False
    assert should_prune(None, None, True, org, DESC) is True  # all-null partition
    assert should_prune(0, None, False, org, DESC) is False  # unbounded above
    assert should_prune(0, 9, False, None, DESC) is False


def test_should_prune_asc_mirrors_on_min():
    org = Boundary(10, strict=False)
    assert should_prune(11, 99, False, org, ASC) is True
    assert should_prune(10, 99, False, org, ASC) is True
    assert should_prune(10, 99, False, Boundary(10, True), ASC) is False
    assert should_prune(9, 99, False, org, ASC) is False
    assert should_prune(None, 99, False, org, ASC) is False


def test_should_prune_nan_boundary():
    # NaN sorts greatest: a NaN organic boundary under DESC prunes everything
    b = Boundary(NAN, strict=False)
    assert should_prune(0, 1e308, False, b, DESC) is True
    assert should_prune(0, NAN, False, b, DESC) is True


# ---------------------------------------------------------------------------
# order_scan_set


ENTRIES = [
    ScanEntry(1, 0, 50, False),
    ScanEntry(2, 10, 90, False),
    ScanEntry(3, None, None, True),
    ScanEntry(4, 5, 90, False),
    ScanEntry(5, None, None, False),  # unbounded derived edge
]


def test_full_sort_desc_unbounded_first_nulls_last():
    got = order_scan_set(ENTRIES, DESC, ScanOrderStrategy.FULL_SORT)
    assert got == [5, 2, 4, 1, 3]


def test_full_sort_asc_sorts_by_lo():
    got = order_scan_set(ENTRIES, ASC, ScanOrderStrategy.FULL_SORT)
    assert got == [5, 1, 4, 2, 3]


def test_random_order_is_seeded_permutation():
    a = order_scan_set(ENTRIES, DESC, ScanOrderStrategy.NONE_RANDOM, seed=1)
    b = order_scan_set(ENTRIES, DESC, ScanOrderStrategy.NONE_RANDOM, seed=1)
    assert a == b
    assert sorted(a) == [1, 2, 3, 4, 5]


# ---------------------------------------------------------------------------
# init_boundary


def entry(pid, lo, hi, rows, null_count=0):
    return ScanEntry(pid, lo, hi, False, rows=rows, null_count=null_count)


def test_init_boundary_candidate_a_wins():
    # k-th best max (A) is 40; the row-coverage floor (B) is 20
    entries = [entry(1, 10, 50, 3), entry(2, 20, 40, 3), entry(3, 5, 30, 3)]
    assert init_boundary(entries, 2, DESC) == 40
    assert init_boundary(entries, 2, ASC) == 10


def test_init_boundary_candidate_b_wins_when_too_few_partitions():
    entries = [entry(1, 10, 50, 3), entry(2, 20, 40, 3), entry(3, 5, 30, 3)]
    # only 3 partitions, so A is absent for k=4; B: 3+3 rows cover at floor 10
    assert init_boundary(entries, 4, DESC) == 10


def test_init_boundary_ignores_nullable_and_unbounded_entries():
    entries = [entry(1, 10, 50, 3, null_count=1), entry(2, None, 40, 3)]
    assert init_boundary(entries, 1, DESC) is None
    assert init_boundary([], 1, DESC) is None
    assert init_boundary([entry(1, 1, 2, 5)], 0, DESC) is None


def test_groupby_topk_eligible():
    assert groupby_topk_eligible(["a"], ["a", "b"]) is True
    assert groupby_topk_eligible(["a", "b"], ["b", "a"]) is True
    assert groupby_topk_eligible(["c"], ["a", "b"]) is False
    assert groupby_topk_eligible([], ["a"]) is True


# ---------------------------------------------------------------------------
# Properties

order_value_st = st.one_of(
    st.integers(-50, 50),
    st.floats(allow_infinity=False, width=64),
)
direction_st = st.sampled_from([DESC, ASC])


def brute_top_k(values_with_uids, k, direction):
    if direction is DESC:
        key = lambda t: (_neg(value_order_key(t[0])), t[1])
    else:
        key = lambda t: (value_order_key(t[0]), t[1])
    return sorted(values_with_uids, key=key)[:k]


class _neg:
    def __init__(self, inner):
        self.inner = inner

    def __lt__(self, other):
        return other.inner < self.inner

    def __eq__(self, other):
        return other.inner == self.inner


@settings(max_examples=300, deadline=None)
@given(
    values=st.lists(order_value_st, min_size=0, max_size=40),
    k=st.integers(1, 8),
    direction=direction_st,
)
def test_property_topk_matches_brute_force(values, k, direction):
    s = TopKState(k, direction)
    tagged = [(v, (1, i)) for i, v in enumerate(values)]
    for v, uid in tagged:
        s.insert(v, uid)
    got = [(canon(v), uid) for v, uid, _ in s.results()]
    want = [(canon(v), uid) for v, uid in brute_top_k(tagged, k, direction)]
    assert got == want


def canon(v):
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return v


@settings(max_examples=300, deadline=None)
@given(
    values=st.lists(order_value_st, min_size=5, max_size=40),
    k=st.integers(1, 6),
    direction=direction_st,
)
def test_property_boundary_is_monotone(values, k, direction):
    s = TopKState(k, direction)
    prev = None
    for i, v in enumerate(values):
        s.insert(v, (1, i))
        b = s.boundary()
        if prev is not None:
            assert b is not None
            assert b == prev or b.tighter_than(prev, direction)
        prev = b


@settings(max_examples=200, deadline=None)
@given(
    data=st.data(),
    k=st.integers(1, 6),
    direction=direction_st,
    use_init=st.booleans(),
)
def test_property_boundary_pruned_scan_matches_full_scan(data, k, direction, use_init):
    parts = data.draw(
        st.lists(st.lists(order_value_st, min_size=1, max_size=8), min_size=1, max_size=6)
    )

    def run(prune):
        s = TopKState(k, direction)
        if use_init:
            entries = [
                ScanEntry(pid, min(vals, key=value_order_key), max(vals, key=value_order_key),
                          False, rows=len(vals))
                for pid, vals in enumerate(parts, start=1)
            ]
            b = init_boundary(entries, k, direction)
            if b is not None:
                s.set_initial_boundary(b)
        for pid, vals in enumerate(parts, start=1):
            lo = min(vals, key=value_order_key)
            hi = max(vals, key=value_order_key)
            if prune and should_prune(lo, hi, False, s.boundary(), direction):
                continue
            for i, v in enumerate(vals):
                s.insert(v, (pid, i))
        return [(canon(v), uid) for v, uid, _ in s.results()]

    assert run(prune=True) == run(prune=False)


@settings(max_examples=200, deadline=None)
@given(data=st.data(), k=st.integers(1, 5))
def test_property_init_boundary_never_beats_true_kth(data, k):
    parts = data.draw(
        st.lists(st.lists(st.integers(-30, 30), min_size=1, max_size=6), min_size=1, max_size=5)
    )
    entries = [
        ScanEntry(pid, min(vals), max(vals), False, rows=len(vals))
        for pid, vals in enumerate(parts, start=1)
    ]
    b = init_boundary(entries, k, DESC)
    if b is None:
        return
    flat = sorted((v for vals in parts for v in vals), reverse=True)
    assert len(flat) >= k  # a boundary implies coverage of k rows
    assert compare_values(b, flat[k - 1]) <= 0
