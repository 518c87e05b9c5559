"""Value model: Int64, Float64, Utf8, Bool and Null.

Values are represented by plain Python objects (int, float, str, bool,
None). The comparison rules here define one total order per type:
integers and floats numerically with NaN greatest, strings byte-wise
(UTF-8 byte order equals code point order, so native str comparison is
used), and false < true. Null never participates in ordering; callers
that need "nulls last" handle None before calling in.

Int and float values may be compared with each other (CPython compares
them exactly, without rounding through float). Any other cross-type
comparison raises TypeCheckError rather than coercing.
"""

import math

from .errors import TypeCheckError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


def value_kind(v):
    """Return 'null' | 'bool' | 'int' | 'float' | 'str' for a value."""
    if v is None:
        return "null"
    if isinstance(v, bool):  # bool before int: bool is an int subclass
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, float):
        return "float"
    if isinstance(v, str):
        return "str"
    raise TypeCheckError("unsupported value of type %s" % type(v).__name__)


def is_nan(v):
    return isinstance(v, float) and math.isnan(v)


def compare_values(a, b):
    """Three-way compare of two non-null values; -1, 0 or 1.

    NaN sorts greater than every other float (and equal to itself) so
    that min/max stay total on float columns.
    """
    ka = value_kind(a)
    kb = value_kind(b)
    if ka == "null" or kb == "null":
        raise TypeCheckError("null is unordered")
    numeric = ("int", "float")
    if ka in numeric and kb in numeric:
        an, bn = is_nan(a), is_nan(b)
        if an or bn:
            if an and bn:
                return 0
            return 1 if an else -1
        return (a > b) - (a < b)
    if ka != kb:
        raise TypeCheckError("cannot compare %s with %s" % (ka, kb))
    # str with str, bool with bool
    return (a > b) - (a < b)


def value_min(a, b):
    return a if compare_values(a, b) <= 0 else b


def value_max(a, b):
    return a if compare_values(a, b) >= 0 else b


def value_order_key(v):
    """Sort key for non-null values of one column type (NaN greatest)."""
    if is_nan(v):
        return (1, 0.0)
    return (0, v)


def null_last_key(v):
    """Sort key that also places Null after everything else."""
    if v is None:
        return (2, 0.0)
    return value_order_key(v)
