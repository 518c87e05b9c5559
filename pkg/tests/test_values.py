import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skipscan.errors import TypeCheckError
from skipscan.values import (
    INT64_MAX,
    INT64_MIN,
    compare_values,
    is_nan,
    null_last_key,
    value_kind,
    value_max,
    value_min,
    value_order_key,
)

NAN = float("nan")


def test_value_kind():
    assert value_kind(1) == "int"
    assert value_kind(1.5) == "float"
    assert value_kind(True) == "bool"
    assert value_kind("x") == "str"


def test_numeric_cross_kind_comparison():
    assert compare_values(1, 1.0) == 0
    assert compare_values(2, 1.5) > 0
    assert compare_values(-3, -2.5) < 0


def test_nan_is_greatest_and_equals_itself():
    assert compare_values(NAN, 1e308) > 0
    assert compare_values(1e308, NAN) < 0
    assert compare_values(NAN, NAN) == 0


def test_null_comparison_raises():
    with pytest.raises(TypeCheckError):
        compare_values(None, 1)
    with pytest.raises(TypeCheckError):
        compare_values(1, None)


def test_cross_kind_comparison_raises():
    with pytest.raises(TypeCheckError):
        compare_values(1, "1")
    with pytest.raises(TypeCheckError):
        compare_values(True, 1)


def test_min_max_helpers():
    assert value_min(3, 5) == 3
    assert value_max(3, 5) == 5
    assert is_nan(value_max(1.0, NAN))
    assert value_min(1.0, NAN) == 1.0


def test_null_last_key_orders_nulls_last():
    vals = [3, None, 1, None, 2]
    assert sorted(vals, key=null_last_key) == [1, 2, 3, None, None]


def test_int64_bounds():
    assert INT64_MAX == 2**63 - 1
    assert INT64_MIN == -(2**63)


numeric = st.one_of(
    st.integers(min_value=-(10**6), max_value=10**6),
    st.floats(allow_infinity=False, width=64),
)


@given(numeric, numeric)
def test_order_key_agrees_with_compare(a, b):
    c = compare_values(a, b)
    ka, kb = value_order_key(a), value_order_key(b)
    if c == 0:
        assert ka == kb
    elif c < 0:
        assert ka < kb
    else:
        assert ka > kb


@given(numeric, numeric, numeric)
def test_compare_is_transitive(a, b, c):
    if compare_values(a, b) <= 0 and compare_values(b, c) <= 0:
        assert compare_values(a, c) <= 0


@given(st.text(max_size=8), st.text(max_size=8))
def test_string_compare_matches_python(a, b):
    c = compare_values(a, b)
    assert c == 0 if a == b else (c < 0) == (a < b)
