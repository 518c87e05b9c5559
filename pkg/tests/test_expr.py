import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipscan.errors import QueryError, TypeCheckError
from skipscan.expr import (
    And,
    Arith,
    Cmp,
    ColumnRef,
    If,
    InList,
    Interval,
    IsNull,
    Like,
    Literal,
    Not,
    Or,
    StartsWith,
    TriState,
    _prefix_successor,
    count_nodes,
    derive_interval,
    eval_meta,
    eval_meta_outcomes,
    eval_row,
    expr_from_json,
    expr_to_json,
    expr_type,
    render_expr,
    widen_rewrite,
)
from skipscan.partition_store import ColumnType, compute_stats
from skipscan.values import compare_values

NAN = float("nan")

SCHEMA = {
    "i": ColumnType.INT64,
    "f": ColumnType.FLOAT64,
    "s": ColumnType.UTF8,
    "b": ColumnType.BOOL,
}
COLS = ("i", "f", "s", "b")


def stats_of(rows):
    return {c: compute_stats([r[c] for r in rows]) for c in COLS}


# ---------------------------------------------------------------------------
# eval_row


def test_eval_row_arithmetic():
    row = {"i": 7, "f": 2.0}
    assert eval_row(Arith("+", ColumnRef("i"), Literal(3)), row) == 10
    assert eval_row(Arith("-", ColumnRef("i"), ColumnRef("f")), row) == 5.0
    assert eval_row(Arith("*", ColumnRef("f"), Literal(-2)), row) == -4.0
    assert eval_row(Arith("/", ColumnRef("i"), ColumnRef("f")), row) == 3.5


def test_eval_row_division_by_zero_is_null():
    assert eval_row(Arith("/", Literal(5), Literal(0)), {}) is None
    assert eval_row(Arith("/", Literal(5), Literal(0.0)), {}) is None


def test_eval_row_null_propagates_through_arith_and_cmp():
    row = {"i": None}
    assert eval_row(Arith("+", ColumnRef("i"), Literal(1)), row) is None
    assert eval_row(Cmp("=", ColumnRef("i"), Literal(1)), row) is None
    assert eval_row(Not(Cmp("=", ColumnRef("i"), Literal(1))), row) is None


def test_eval_row_three_valued_and_or():
    t, f, n = Literal(True), Literal(False), Cmp("=", Literal(None), Literal(1))
    assert eval_row(n, {}) is None
    assert eval_row(And((t, n)), {}) is None
    assert eval_row(And((f, n)), {}) is False
    assert eval_row(Or((f, n)), {}) is None
    assert eval_row(Or((t, n)), {}) is True


def test_eval_row_if_null_condition_picks_else():
    e = If(Cmp(">", ColumnRef("i"), Literal(0)), Literal("yes"), Literal("no"))
    assert eval_row(e, {"i": 1}) == "yes"
    assert eval_row(e, {"i": -1}) == "no"
    assert eval_row(e, {"i": None}) == "no"


def test_eval_row_like_shapes():
    assert eval_row(Like("s", "alp%"), {"s": "alpine"}) is True
    assert eval_row(Like("s", "alp%"), {"s": "bear"}) is False
    assert eval_row(Like("s", "%ine"), {"s": "alpine"}) is True
    assert eval_row(Like("s", "%pin%"), {"s": "alpine"}) is True
    assert eval_row(Like("s", "alpine"), {"s": "alpine"}) is True
    assert eval_row(Like("s", "alpine"), {"s": "alpine "}) is False
    assert eval_row(Like("s", "a%"), {"s": None}) is None


def test_eval_row_in_and_isnull():
    assert eval_row(InList(ColumnRef("i"), (1, 3)), {"i": 3}) is True
    assert eval_row(InList(ColumnRef("i"), (1, 3)), {"i": 2}) is False
    assert eval_row(InList(ColumnRef("i"), (1, 3)), {"i": None}) is None
    assert eval_row(IsNull(ColumnRef("i")), {"i": None}) is True
    assert eval_row(IsNull(Arith("/", Literal(1), Literal(0))), {}) is True


# ---------------------------------------------------------------------------
# expr_type


def test_expr_type_basics():
    assert expr_type(Arith("+", ColumnRef("i"), Literal(1)), SCHEMA) == "int64"
    assert expr_type(Arith("+", ColumnRef("i"), ColumnRef("f")), SCHEMA) == "float64"
    assert expr_type(Arith("/", ColumnRef("i"), Literal(2)), SCHEMA) == "float64"
    assert expr_type(Cmp("<", ColumnRef("s"), Literal("x")), SCHEMA) == "bool"


def test_expr_type_rejects_mismatches():
    with pytest.raises(TypeCheckError):
        expr_type(Arith("+", ColumnRef("s"), Literal(1)), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(Cmp("=", ColumnRef("s"), Literal(1)), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(Cmp("=", ColumnRef("b"), Literal(1)), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(And((ColumnRef("b"), ColumnRef("i"))), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(Like("i", "a%"), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(Like("s", "a_c"), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(InList(ColumnRef("i"), ()), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(InList(ColumnRef("i"), (1, None)), SCHEMA)
    with pytest.raises(TypeCheckError):
        expr_type(ColumnRef("zzz"), SCHEMA)


# ---------------------------------------------------------------------------
# derive_interval


def test_interval_from_column_stats():
    stats = stats_of([{"i": 3, "f": 0.5, "s": "a", "b": True}, {"i": None, "f": 1.5, "s": "b", "b": None}])
    ivl = derive_interval(ColumnRef("i"), stats)
    assert (ivl.lo, ivl.hi, ivl.may_be_null) == (3, 3, True)
    ivl = derive_interval(ColumnRef("f"), stats)
    assert (ivl.lo, ivl.hi, ivl.may_be_null) == (0.5, 1.5, False)


def test_interval_subtraction_flips_operands():
    stats = stats_of([{"i": 1, "f": 10.0, "s": "", "b": None}, {"i": 5, "f": 20.0, "s": "", "b": None}])
    ivl = derive_interval(Arith("-", ColumnRef("f"), ColumnRef("i")), stats)
    assert (ivl.lo, ivl.hi) == (5.0, 19.0)


def test_interval_multiplication_corners_with_negatives():
    stats = stats_of([{"i": -3, "f": -2.0, "s": "", "b": None}, {"i": 4, "f": 5.0, "s": "", "b": None}])
    ivl = derive_interval(Arith("*", ColumnRef("i"), ColumnRef("f")), stats)
    assert (ivl.lo, ivl.hi) == (-15.0, 20.0)


def test_interval_division_straddling_zero_is_unbounded_nullable():
    stats = stats_of([{"i": -1, "f": 8.0, "s": "", "b": None}, {"i": 2, "f": 9.0, "s": "", "b": None}])
    ivl = derive_interval(Arith("/", ColumnRef("f"), ColumnRef("i")), stats)
    assert (ivl.lo, ivl.hi, ivl.may_be_null) == (None, None, True)


def test_interval_division_by_constant_zero_has_no_values():
    ivl = derive_interval(Arith("/", Literal(1), Literal(0)), {})
    assert ivl.no_values


def test_interval_nan_stat_widens_to_unbounded():
    # NaN sorts greatest, so it lands in a float column's max; arithmetic
    # on that bound would claim nonsense like lo=NaN >= anything
    stats = stats_of([{"i": 1, "f": NAN, "s": "", "b": None}, {"i": 2, "f": 3.0, "s": "", "b": None}])
    ivl = derive_interval(Arith("+", ColumnRef("f"), Literal(1)), stats)
    assert (ivl.lo, ivl.hi) == (None, None)
    # and a comparison over it must stay undecided rather than AlwaysTrue
    pred = Cmp(">", Arith("-", ColumnRef("f"), ColumnRef("f")), Literal(100))
    assert eval_meta(pred, stats) is TriState.MAYBE


def test_interval_if_takes_hull_of_branches():
    stats = stats_of([{"i": 2, "f": 100.0, "s": "feet", "b": None}, {"i": 9, "f": 200.0, "s": "m", "b": None}])
    e = If(Cmp("=", ColumnRef("s"), Literal("feet")), ColumnRef("i"), ColumnRef("f"))
    ivl = derive_interval(e, stats)
    assert (ivl.lo, ivl.hi) == (2, 200.0)


def test_interval_if_decided_condition_uses_single_branch():
    stats = stats_of([{"i": 2, "f": 100.0, "s": "feet", "b": None}, {"i": 9, "f": 200.0, "s": "feet", "b": None}])
    e = If(Cmp("=", ColumnRef("s"), Literal("feet")), ColumnRef("i"), ColumnRef("f"))
    ivl = derive_interval(e, stats)
    assert (ivl.lo, ivl.hi) == (2, 9)


# ---------------------------------------------------------------------------
# eval_meta


def test_meta_alpine_partitions(alpine_table):
    pred = And((Like("species", "Alpine%"), Cmp(">=", ColumnRef("sightings"), Literal(50))))
    got = {p.id: eval_meta(pred, p.stats) for p in alpine_table.partitions}
    assert got == {
        1: TriState.ALWAYS_FALSE,
        2: TriState.MAYBE,
        3: TriState.ALWAYS_TRUE,
        4: TriState.MAYBE,
    }


def test_meta_nullable_column_blocks_always_true():
    stats = {"i": compute_stats([5, None, 9])}
    assert eval_meta(Cmp(">", ColumnRef("i"), Literal(0)), stats) is TriState.MAYBE
    stats = {"i": compute_stats([5, 9])}
    assert eval_meta(Cmp(">", ColumnRef("i"), Literal(0)), stats) is TriState.ALWAYS_TRUE


def test_meta_all_null_column_is_always_false():
    stats = {"i": compute_stats([None, None])}
    assert eval_meta(Cmp("=", ColumnRef("i"), Literal(1)), stats) is TriState.ALWAYS_FALSE
    assert eval_meta(IsNull(ColumnRef("i")), stats) is TriState.ALWAYS_TRUE


def test_meta_in_list_window():
    stats = {"i": compute_stats([10, 20])}
    assert eval_meta(InList(ColumnRef("i"), (1, 2)), stats) is TriState.ALWAYS_FALSE
    assert eval_meta(InList(ColumnRef("i"), (15,)), stats) is TriState.MAYBE
    stats = {"i": compute_stats([7, 7])}
    assert eval_meta(InList(ColumnRef("i"), (7, 9)), stats) is TriState.ALWAYS_TRUE


def test_prefix_successor_edges():
    assert _prefix_successor(b"alp") == b"alq"
    assert _prefix_successor(b"a\xff") == b"b"
    assert _prefix_successor(b"\xff\xff") is None


def test_meta_startswith_multibyte_prefix():
    stats = {"s": compute_stats(["ålesund", "åttifire"])}
    assert eval_meta(StartsWith("s", "å"), stats) is TriState.ALWAYS_TRUE
    assert eval_meta(StartsWith("s", "z"), stats) is TriState.ALWAYS_FALSE
    stats = {"s": compute_stats(["alp", "ålesund"])}
    assert eval_meta(StartsWith("s", "å"), stats) is TriState.MAYBE


# ---------------------------------------------------------------------------
# widen_rewrite


def test_widen_like_prefix_becomes_startswith():
    assert widen_rewrite(Like("s", "alp%")) == StartsWith("s", "alp")


def test_widen_like_leading_wildcard_becomes_true():
    assert widen_rewrite(Like("s", "%ine")) == Literal(True)
    assert widen_rewrite(Like("s", "%pin%")) == Literal(True)


def test_widen_keeps_exact_and_infix_patterns():
    assert widen_rewrite(Like("s", "alpine")) == Like("s", "alpine")
    assert widen_rewrite(Like("s", "a%b")) == Like("s", "a%b")


def test_widen_descends_and_or_but_not_not():
    e = And((Like("s", "a%"), Or((Like("s", "%b"), ColumnRef("b")))))
    assert widen_rewrite(e) == And((StartsWith("s", "a"), Or((Literal(True), ColumnRef("b")))))
    e = Not(Like("s", "%b"))
    assert widen_rewrite(e) == e


# ---------------------------------------------------------------------------
# JSON round trip and rendering


def test_expr_json_roundtrip_samples():
    samples = [
        And((Like("species", "Alpine%"), Cmp(">=", ColumnRef("sightings"), Literal(50)))),
        If(Cmp("=", ColumnRef("s"), Literal("feet")),
           Arith("*", ColumnRef("f"), Literal(0.3048)), ColumnRef("f")),
        Not(Or((IsNull(ColumnRef("i")), InList(ColumnRef("i"), (1, 2, 3))))),
        StartsWith("s", "å"),
        Literal(None),
    ]
    for e in samples:
        assert expr_from_json(expr_to_json(e)) == e


def test_expr_from_json_rejects_garbage():
    with pytest.raises(QueryError):
        expr_from_json({"op": "frobnicate"})
    with pytest.raises(QueryError):
        expr_from_json({"no_op": 1})


def test_render_expr_smoke():
    e = And((Like("s", "a%"), Cmp(">=", Arith("+", ColumnRef("i"), Literal(1)), Literal(0))))
    text = render_expr(e)
    assert "LIKE" in text and ">=" in text


def test_count_nodes():
    e = And((Like("s", "a%"), Cmp(">=", ColumnRef("i"), Literal(0))))
    assert count_nodes(e) == 5


# ---------------------------------------------------------------------------
# Property tests: metadata claims must never contradict row evaluation

int_cell = st.one_of(st.none(), st.integers(-30, 30))
float_cell = st.one_of(st.none(), st.floats(allow_infinity=False, width=64))
str_cell = st.one_of(
    st.none(), st.sampled_from(["", "alp", "alpine", "alpinist", "bear", "zz top", "ål"])
)
bool_cell = st.one_of(st.none(), st.booleans())

row_st = st.fixed_dictionaries({"i": int_cell, "f": float_cell, "s": str_cell, "b": bool_cell})
rows_st = st.lists(row_st, min_size=1, max_size=10)

numeric_leaf = st.one_of(
    st.sampled_from([ColumnRef("i"), ColumnRef("f")]),
    st.integers(-5, 5).map(Literal),
    st.floats(min_value=-4.0, max_value=4.0, allow_nan=False).map(Literal),
)
numeric_st = st.recursive(
    numeric_leaf,
    lambda kids: st.builds(Arith, st.sampled_from(["+", "-", "*", "/"]), kids, kids),
    max_leaves=6,
)

cmp_op_st = st.sampled_from(["<", "<=", "=", "!=", ">=", ">"])
pred_leaf = st.one_of(
    st.builds(Cmp, cmp_op_st, numeric_st, numeric_st),
    st.builds(
        Cmp, cmp_op_st, st.just(ColumnRef("s")),
        st.sampled_from(["", "alp", "alpine", "ål"]).map(Literal),
    ),
    st.builds(StartsWith, st.just("s"), st.sampled_from(["", "a", "alp", "alpi", "ål", "z"])),
    st.builds(Like, st.just("s"), st.sampled_from(["alp%", "%ine", "a%", "%p%", "alpine", ""])),
    st.builds(IsNull, numeric_st),
    st.builds(InList, st.just(ColumnRef("i")), st.sampled_from([(1, 3, 5), (0,), (-2, 2)])),
    st.just(ColumnRef("b")),
)
pred_st = st.recursive(
    pred_leaf,
    lambda kids: st.one_of(
        st.builds(lambda a, b: And((a, b)), kids, kids),
        st.builds(lambda a, b: Or((a, b)), kids, kids),
        st.builds(Not, kids),
    ),
    max_leaves=5,
)


@settings(max_examples=300, deadline=None)
@given(rows=rows_st, expr=numeric_st)
def test_property_interval_encloses_every_row_value(rows, expr):
    stats = stats_of(rows)
    ivl = derive_interval(expr, stats)
    for row in rows:
        v = eval_row(expr, row)
        if v is None:
            assert ivl.may_be_null
            continue
        assert not ivl.no_values
        if ivl.lo is not None:
            assert compare_values(ivl.lo, v) <= 0
        if ivl.hi is not None:
            assert compare_values(v, ivl.hi) <= 0


@settings(max_examples=300, deadline=None)
@given(rows=rows_st, pred=pred_st)
def test_property_meta_outcomes_cover_row_outcomes(rows, pred):
    stats = stats_of(rows)
    o = eval_meta_outcomes(pred, stats)
    vals = [eval_row(pred, row) for row in rows]
    if True in vals:
        assert o.may_true
    if False in vals:
        assert o.may_false
    if None in vals:
        assert o.may_null
    ts = eval_meta(pred, stats)
    if ts is TriState.ALWAYS_TRUE:
        assert all(v is True for v in vals)
    if ts is TriState.ALWAYS_FALSE:
        assert not any(v is True for v in vals)


@settings(max_examples=300, deadline=None)
@given(rows=rows_st, pred=pred_st)
def test_property_widening_never_loses_matches(rows, pred):
    wide = widen_rewrite(pred)
    for row in rows:
        if eval_row(pred, row) is True:
            assert eval_row(wide, row) is True


@settings(max_examples=300, deadline=None)
@given(s=st.text(max_size=6), p=st.text(max_size=4))
def test_property_prefix_window_covers_all_prefixed_strings(s, p):
    pb = p.encode("utf-8")
    succ = _prefix_successor(pb)
    if s.startswith(p):
        sb = s.encode("utf-8")
        assert sb >= pb
        if succ is not None:
            assert sb < succ


@settings(max_examples=200, deadline=None)
@given(pred=pred_st)
def test_property_json_roundtrip(pred):
    assert expr_from_json(expr_to_json(pred)) == pred
