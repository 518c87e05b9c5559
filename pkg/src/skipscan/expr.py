"""Expression AST with three evaluation modes.

The same tree is interpreted three ways:

  * eval_row: exact SQL-like semantics per row (nulls propagate,
    comparisons with Null yield Null, division by zero yields Null).
  * derive_interval: a sound enclosure [lo, hi] of the expression's
    value over every row consistent with a partition's column stats.
  * eval_meta: a three-valued verdict per partition. AlwaysFalse means
    no consistent row can satisfy the predicate, AlwaysTrue means every
    consistent row must, Maybe is everything in between.

eval_meta is built on an outcome-set abstraction (can the predicate be
True / False / Null on some consistent row). That representation makes
negation exact: Not just swaps the True and False flags, so chains of
NOT stay sound without any rewriting.

Prefix predicates use the two-sided byte-range rule: values starting
with prefix p occupy [p, successor(p)) in UTF-8 byte order, where
successor increments p's last byte (dropping trailing 0xFF bytes; if
nothing is left the upper bound is vacuous). Both the may-contain and
the always-contains test come from intersecting or containing that
range.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Tuple

from .errors import QueryError, TypeCheckError
from .partition_store import ColumnStats, ColumnType
from .values import compare_values, is_nan, value_kind, value_max, value_min

Value = object

ARITH_OPS = ("+", "-", "*", "/")
CMP_OPS = ("<", "<=", "=", "!=", ">=", ">")


# ---------------------------------------------------------------------------
# AST nodes


@dataclass(frozen=True)
class ColumnRef:
    name: str


@dataclass(frozen=True)
class Literal:
    value: Value


@dataclass(frozen=True)
class Arith:
    op: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Cmp:
    op: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class And:
    children: Tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    children: Tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    child: "Expr"


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Like:
    column: str
    pattern: str


@dataclass(frozen=True)
class StartsWith:
    column: str
    prefix: str


@dataclass(frozen=True)
class IsNull:
    child: "Expr"


@dataclass(frozen=True)
class InList:
    child: "Expr"
    values: Tuple[Value, ...]


Expr = object


class TriState(Enum):
    ALWAYS_FALSE = "always_false"
    MAYBE = "maybe"
    ALWAYS_TRUE = "always_true"


def tri_and(a: TriState, b: TriState) -> TriState:
    if a is TriState.ALWAYS_FALSE or b is TriState.ALWAYS_FALSE:
        return TriState.ALWAYS_FALSE
    if a is TriState.ALWAYS_TRUE and b is TriState.ALWAYS_TRUE:
        return TriState.ALWAYS_TRUE
    return TriState.MAYBE


def tri_or(a: TriState, b: TriState) -> TriState:
    if a is TriState.ALWAYS_TRUE or b is TriState.ALWAYS_TRUE:
        return TriState.ALWAYS_TRUE
    if a is TriState.ALWAYS_FALSE and b is TriState.ALWAYS_FALSE:
        return TriState.ALWAYS_FALSE
    return TriState.MAYBE


def tri_not(a: TriState) -> TriState:
    if a is TriState.ALWAYS_FALSE:
        return TriState.ALWAYS_TRUE
    if a is TriState.ALWAYS_TRUE:
        return TriState.ALWAYS_FALSE
    return TriState.MAYBE


# ---------------------------------------------------------------------------
# Type checking

_TYPE_NAMES = {
    ColumnType.INT64: "int64",
    ColumnType.FLOAT64: "float64",
    ColumnType.UTF8: "utf8",
    ColumnType.BOOL: "bool",
}
_NUMERIC = ("int64", "float64", "null")


def _literal_type(v):
    k = value_kind(v)
    return {"null": "null", "bool": "bool", "int": "int64", "float": "float64", "str": "utf8"}[k]


def supported_like_pattern(pattern: str) -> bool:
    """% wildcards only; the _ wildcard is not supported.

    Patterns other than exact matches and single-trailing-% prefixes
    still evaluate row by row, they just carry no pruning power.
    """
    return "_" not in pattern


def _unify_numeric(lt, rt, what):
    for t in (lt, rt):
        if t not in _NUMERIC:
            raise TypeCheckError("%s requires numeric operands, got %s" % (what, t))
    if lt == "null" and rt == "null":
        return "null"
    if "float64" in (lt, rt):
        return "float64"
    if "int64" in (lt, rt):
        return "int64"
    return "null"


def _comparable(lt, rt):
    if lt == "null" or rt == "null":
        return True
    if lt in ("int64", "float64") and rt in ("int64", "float64"):
        return True
    return lt == rt


def expr_type(expr, schema: Mapping[str, ColumnType]) -> str:
    """Type of the expression, or raise TypeCheckError.

    Returns one of int64 | float64 | utf8 | bool | null.
    """
    if isinstance(expr, ColumnRef):
        if expr.name not in schema:
            raise TypeCheckError("unknown column %s" % expr.name)
        return _TYPE_NAMES[schema[expr.name]]
    if isinstance(expr, Literal):
        return _literal_type(expr.value)
    if isinstance(expr, Arith):
        if expr.op not in ARITH_OPS:
            raise TypeCheckError("unknown arithmetic operator %r" % expr.op)
        t = _unify_numeric(expr_type(expr.lhs, schema), expr_type(expr.rhs, schema), expr.op)
        return "float64" if expr.op == "/" else t
    if isinstance(expr, Cmp):
        if expr.op not in CMP_OPS:
            raise TypeCheckError("unknown comparison operator %r" % expr.op)
        lt = expr_type(expr.lhs, schema)
        rt = expr_type(expr.rhs, schema)
        if not _comparable(lt, rt):
            raise TypeCheckError("cannot compare %s with %s" % (lt, rt))
        return "bool"
    if isinstance(expr, (And, Or)):
        if len(expr.children) < 2:
            raise TypeCheckError("AND/OR need at least two operands")
        for c in expr.children:
            t = expr_type(c, schema)
            if t not in ("bool", "null"):
                raise TypeCheckError("AND/OR operands must be boolean, got %s" % t)
        return "bool"
    if isinstance(expr, Not):
        t = expr_type(expr.child, schema)
        if t not in ("bool", "null"):
            raise TypeCheckError("NOT operand must be boolean, got %s" % t)
        return "bool"
    if isinstance(expr, If):
        ct = expr_type(expr.cond, schema)
        if ct not in ("bool", "null"):
            raise TypeCheckError("IF condition must be boolean, got %s" % ct)
        tt = expr_type(expr.then, schema)
        et = expr_type(expr.orelse, schema)
        if tt == "null":
            return et
        if et == "null":
            return tt
        if tt == et:
            return tt
        if tt in ("int64", "float64") and et in ("int64", "float64"):
            return "float64"
        raise TypeCheckError("IF branches have incompatible types %s and %s" % (tt, et))
    if isinstance(expr, (Like, StartsWith)):
        if expr.column not in schema:
            raise TypeCheckError("unknown column %s" % expr.column)
        if _TYPE_NAMES[schema[expr.column]] != "utf8":
            raise TypeCheckError("LIKE/STARTSWITH require a utf8 column")
        if isinstance(expr, Like) and not supported_like_pattern(expr.pattern):
            raise TypeCheckError("unsupported LIKE pattern %r" % expr.pattern)
        return "bool"
    if isinstance(expr, IsNull):
        expr_type(expr.child, schema)
        return "bool"
    if isinstance(expr, InList):
        ct = expr_type(expr.child, schema)
        if not expr.values:
            raise TypeCheckError("IN list must not be empty")
        for v in expr.values:
            if v is None:
                raise TypeCheckError("null literal in IN list")
            if not _comparable(ct, _literal_type(v)):
                raise TypeCheckError("IN list value %r does not match %s" % (v, ct))
        return "bool"
    raise TypeCheckError("unknown expression node %r" % (expr,))


def count_nodes(expr) -> int:
    if isinstance(expr, (ColumnRef, Literal, Like, StartsWith)):
        return 1
    if isinstance(expr, (Arith, Cmp)):
        return 1 + count_nodes(expr.lhs) + count_nodes(expr.rhs)
    if isinstance(expr, (And, Or)):
        return 1 + sum(count_nodes(c) for c in expr.children)
    if isinstance(expr, (Not, IsNull)):
        return 1 + count_nodes(expr.child)
    if isinstance(expr, If):
        return 1 + count_nodes(expr.cond) + count_nodes(expr.then) + count_nodes(expr.orelse)
    if isinstance(expr, InList):
        return 1 + count_nodes(expr.child) + len(expr.values)
    raise TypeCheckError("unknown expression node %r" % (expr,))


def columns_of(expr) -> set:
    out = set()

    def walk(e):
        if isinstance(e, ColumnRef):
            out.add(e.name)
        elif isinstance(e, (Like, StartsWith)):
            out.add(e.column)
        elif isinstance(e, (Arith, Cmp)):
            walk(e.lhs)
            walk(e.rhs)
        elif isinstance(e, (And, Or)):
            for c in e.children:
                walk(c)
        elif isinstance(e, (Not, IsNull)):
            walk(e.child)
        elif isinstance(e, If):
            walk(e.cond)
            walk(e.then)
            walk(e.orelse)
        elif isinstance(e, InList):
            walk(e.child)

    walk(expr)
    return out


# ---------------------------------------------------------------------------
# Row evaluation


def _like_match(text: str, pattern: str) -> bool:
    parts = pattern.split("%")
    if len(parts) == 1:
        return text == pattern
    head, tail = parts[0], parts[-1]
    if not text.startswith(head) or not text.endswith(tail):
        return False
    pos = len(head)
    end_limit = len(text) - len(tail)
    for mid in parts[1:-1]:
        if not mid:
            continue
        i = text.find(mid, pos)
        if i < 0 or i + len(mid) > end_limit:
            return False
        pos = i + len(mid)
    return pos <= end_limit


def eval_row(expr, row: Mapping[str, Value]) -> Value:
    """Exact per-row evaluation with SQL null semantics."""
    if isinstance(expr, ColumnRef):
        return row[expr.name]
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Arith):
        lv = eval_row(expr.lhs, row)
        rv = eval_row(expr.rhs, row)
        if lv is None or rv is None:
            return None
        if expr.op == "+":
            return lv + rv
        if expr.op == "-":
            return lv - rv
        if expr.op == "*":
            return lv * rv
        if rv == 0:
            return None  # division by zero yields Null
        return lv / rv
    if isinstance(expr, Cmp):
        lv = eval_row(expr.lhs, row)
        rv = eval_row(expr.rhs, row)
        if lv is None or rv is None:
            return None
        c = compare_values(lv, rv)
        return {
            "<": c < 0,
            "<=": c <= 0,
            "=": c == 0,
            "!=": c != 0,
            ">=": c >= 0,
            ">": c > 0,
        }[expr.op]
    if isinstance(expr, And):
        saw_null = False
        for c in expr.children:
            v = eval_row(c, row)
            if v is False:
                return False
            if v is None:
                saw_null = True
        return None if saw_null else True
    if isinstance(expr, Or):
        saw_null = False
        for c in expr.children:
            v = eval_row(c, row)
            if v is True:
                return True
            if v is None:
                saw_null = True
        return None if saw_null else False
    if isinstance(expr, Not):
        v = eval_row(expr.child, row)
        return None if v is None else (not v)
    if isinstance(expr, If):
        c = eval_row(expr.cond, row)
        # a Null condition is not true, so it selects the else branch
        return eval_row(expr.then, row) if c is True else eval_row(expr.orelse, row)
    if isinstance(expr, Like):
        v = row[expr.column]
        if v is None:
            return None
        return _like_match(v, expr.pattern)
    if isinstance(expr, StartsWith):
        v = row[expr.column]
        if v is None:
            return None
        return v.startswith(expr.prefix)
    if isinstance(expr, IsNull):
        return eval_row(expr.child, row) is None
    if isinstance(expr, InList):
        v = eval_row(expr.child, row)
        if v is None:
            return None
        return any(compare_values(v, lit) == 0 for lit in expr.values)
    raise TypeCheckError("unknown expression node %r" % (expr,))


# ---------------------------------------------------------------------------
# Interval derivation


@dataclass(frozen=True)
class Interval:
    """Enclosure of an expression's non-null values over a partition.

    lo/hi of None mean unbounded on that side. no_values means the
    expression is Null on every consistent row (the value set is
    empty); may_be_null covers the weaker "could be Null somewhere".
    """

    lo: Optional[Value]
    hi: Optional[Value]
    may_be_null: bool
    no_values: bool = False

    @staticmethod
    def empty():
        return Interval(None, None, True, True)


def _ivl_from_stats(st: ColumnStats) -> Interval:
    if st.all_null:
        return Interval.empty()
    return Interval(st.min, st.max, st.null_count > 0)


def _endpoint_min(values):
    # None (unbounded) dominates
    out = None
    first = True
    for v in values:
        if v is None:
            return None
        if first:
            out = v
            first = False
        else:
            out = value_min(out, v)
    return out


def _endpoint_max(values):
    out = None
    first = True
    for v in values:
        if v is None:
            return None
        if first:
            out = v
            first = False
        else:
            out = value_max(out, v)
    return out


def _hull(a: Interval, b: Interval) -> Interval:
    if a.no_values:
        return Interval(b.lo, b.hi, a.may_be_null or b.may_be_null, b.no_values)
    if b.no_values:
        return Interval(a.lo, a.hi, a.may_be_null or b.may_be_null, a.no_values)
    lo = None if (a.lo is None or b.lo is None) else value_min(a.lo, b.lo)
    hi = None if (a.hi is None or b.hi is None) else value_max(a.hi, b.hi)
    return Interval(lo, hi, a.may_be_null or b.may_be_null)


def _contains_zero(ivl: Interval) -> bool:
    if ivl.no_values:
        return False
    lo_ok = ivl.lo is None or compare_values(ivl.lo, 0) <= 0
    hi_ok = ivl.hi is None or compare_values(ivl.hi, 0) >= 0
    return lo_ok and hi_ok


def _arith_interval(op, a: Interval, b: Interval) -> Interval:
    if a.no_values or b.no_values:
        return Interval.empty()
    may_null = a.may_be_null or b.may_be_null
    # a NaN endpoint (NaN sorts greatest, so it lands in max) says
    # nothing about the finite extremes underneath it, and corner
    # arithmetic on NaN would poison the bounds; give up on precision
    if any(v is not None and is_nan(v) for v in (a.lo, a.hi, b.lo, b.hi)):
        return Interval(None, None, may_null)
    def guarded(lo, hi):
        # overflow chains (inf - inf) can mint NaN out of finite stats
        if (lo is not None and is_nan(lo)) or (hi is not None and is_nan(hi)):
            return Interval(None, None, may_null)
        return Interval(lo, hi, may_null)

    if op == "+":
        lo = None if (a.lo is None or b.lo is None) else a.lo + b.lo
        hi = None if (a.hi is None or b.hi is None) else a.hi + b.hi
        return guarded(lo, hi)
    if op == "-":
        lo = None if (a.lo is None or b.hi is None) else a.lo - b.hi
        hi = None if (a.hi is None or b.lo is None) else a.hi - b.lo
        return guarded(lo, hi)
    if op == "*":
        if None in (a.lo, a.hi, b.lo, b.hi):
            return Interval(None, None, may_null)
        prods = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi]
        return guarded(_endpoint_min(prods), _endpoint_max(prods))
    # division: a zero divisor makes the row Null, a divisor interval
    # crossing zero makes the quotient unbounded
    if b.lo is not None and b.hi is not None and b.lo == 0 and b.hi == 0 and not b.may_be_null:
        return Interval.empty()
    if _contains_zero(b):
        return Interval(None, None, True)
    if None in (a.lo, a.hi, b.lo, b.hi):
        return Interval(None, None, may_null)
    quots = [a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi]
    return guarded(_endpoint_min(quots), _endpoint_max(quots))


def derive_interval(expr, stats: Mapping[str, ColumnStats]) -> Interval:
    """Sound enclosure of eval_row(expr) over rows consistent with stats."""
    if isinstance(expr, ColumnRef):
        if expr.name not in stats:
            raise QueryError("missing stats for column %s" % expr.name)
        return _ivl_from_stats(stats[expr.name])
    if isinstance(expr, Literal):
        if expr.value is None:
            return Interval.empty()
        return Interval(expr.value, expr.value, False)
    if isinstance(expr, Arith):
        return _arith_interval(
            expr.op, derive_interval(expr.lhs, stats), derive_interval(expr.rhs, stats)
        )
    if isinstance(expr, If):
        o = eval_meta_outcomes(expr.cond, stats)
        if not o.may_true:
            return derive_interval(expr.orelse, stats)
        if not o.may_false and not o.may_null:
            return derive_interval(expr.then, stats)
        return _hull(derive_interval(expr.then, stats), derive_interval(expr.orelse, stats))
    if isinstance(expr, (Cmp, And, Or, Not, Like, StartsWith, IsNull, InList)):
        o = eval_meta_outcomes(expr, stats)
        if not o.may_true and not o.may_false:
            return Interval.empty()
        lo = False if o.may_false else True
        hi = True if o.may_true else False
        return Interval(lo, hi, o.may_null)
    raise TypeCheckError("unknown expression node %r" % (expr,))


# ---------------------------------------------------------------------------
# Metadata (tri-state) evaluation


@dataclass(frozen=True)
class Outcomes:
    """Over-approximation of a predicate's outcome set over a partition."""

    may_true: bool
    may_false: bool
    may_null: bool


_ONLY_NULL = Outcomes(False, False, True)


def _cmp_possible(op, a: Interval, b: Interval) -> bool:
    """Can `x op y` hold for some x in a, y in b (over-approximated)?"""
    alo, ahi, blo, bhi = a.lo, a.hi, b.lo, b.hi
    if op == "<":
        return alo is None or bhi is None or compare_values(alo, bhi) < 0
    if op == "<=":
        return alo is None or bhi is None or compare_values(alo, bhi) <= 0
    if op == ">":
        return ahi is None or blo is None or compare_values(ahi, blo) > 0
    if op == ">=":
        return ahi is None or blo is None or compare_values(ahi, blo) >= 0
    if op == "=":
        le = alo is None or bhi is None or compare_values(alo, bhi) <= 0
        ge = ahi is None or blo is None or compare_values(ahi, blo) >= 0
        return le and ge
    # "!=": impossible only when both intervals are the same single point
    if None in (alo, ahi, blo, bhi):
        return True
    return not (
        compare_values(alo, ahi) == 0
        and compare_values(blo, bhi) == 0
        and compare_values(alo, blo) == 0
    )


_NEGATED_CMP = {"<": ">=", "<=": ">", "=": "!=", "!=": "=", ">=": "<", ">": "<="}


def _prefix_successor(pb: bytes) -> Optional[bytes]:
    """Smallest byte string greater than every string with prefix pb.

    Trailing 0xFF bytes cannot be incremented and are dropped; if the
    prefix is all 0xFF there is no upper bound (None = vacuous).
    """
    while pb and pb[-1] == 0xFF:
        pb = pb[:-1]
    if not pb:
        return None
    return pb[:-1] + bytes([pb[-1] + 1])


def _startswith_outcomes(column, prefix, stats) -> Outcomes:
    if column not in stats:
        raise QueryError("missing stats for column %s" % column)
    st = stats[column]
    if st.all_null:
        return _ONLY_NULL
    vmin = st.min.encode("utf-8")
    vmax = st.max.encode("utf-8")
    pb = prefix.encode("utf-8")
    succ = _prefix_successor(pb)
    # values with the prefix occupy [pb, succ) in byte order
    may = vmax >= pb and (succ is None or vmin < succ)
    always = vmin >= pb and (succ is None or vmax < succ)
    return Outcomes(may, not always, st.null_count > 0)


def eval_meta_outcomes(expr, stats: Mapping[str, ColumnStats]) -> Outcomes:
    if isinstance(expr, Literal):
        v = expr.value
        if v is None:
            return _ONLY_NULL
        return Outcomes(v is True, v is False, False)
    if isinstance(expr, ColumnRef):  # bare boolean column as a predicate
        ivl = derive_interval(expr, stats)
        if ivl.no_values:
            return _ONLY_NULL
        may_true = ivl.hi is None or ivl.hi is True
        may_false = ivl.lo is None or ivl.lo is False
        return Outcomes(may_true, may_false, ivl.may_be_null)
    if isinstance(expr, Cmp):
        a = derive_interval(expr.lhs, stats)
        b = derive_interval(expr.rhs, stats)
        if a.no_values or b.no_values:
            return _ONLY_NULL
        return Outcomes(
            _cmp_possible(expr.op, a, b),
            _cmp_possible(_NEGATED_CMP[expr.op], a, b),
            a.may_be_null or b.may_be_null,
        )
    if isinstance(expr, And):
        outs = [eval_meta_outcomes(c, stats) for c in expr.children]
        return Outcomes(
            all(o.may_true for o in outs),
            any(o.may_false for o in outs),
            any(o.may_null for o in outs),
        )
    if isinstance(expr, Or):
        outs = [eval_meta_outcomes(c, stats) for c in expr.children]
        return Outcomes(
            any(o.may_true for o in outs),
            all(o.may_false for o in outs),
            any(o.may_null for o in outs),
        )
    if isinstance(expr, Not):
        o = eval_meta_outcomes(expr.child, stats)
        return Outcomes(o.may_false, o.may_true, o.may_null)
    if isinstance(expr, If):
        c = eval_meta_outcomes(expr.cond, stats)
        may_true = may_false = may_null = False
        if c.may_true:
            o = eval_meta_outcomes(expr.then, stats)
            may_true, may_false, may_null = o.may_true, o.may_false, o.may_null
        if c.may_false or c.may_null:
            o = eval_meta_outcomes(expr.orelse, stats)
            may_true = may_true or o.may_true
            may_false = may_false or o.may_false
            may_null = may_null or o.may_null
        return Outcomes(may_true, may_false, may_null)
    if isinstance(expr, Like):
        p = expr.pattern
        if "%" not in p:
            return eval_meta_outcomes(Cmp("=", ColumnRef(expr.column), Literal(p)), stats)
        if p.endswith("%") and "%" not in p[:-1]:
            return _startswith_outcomes(expr.column, p[:-1], stats)
        # no usable prefix information: never prune, never promise
        if expr.column not in stats:
            raise QueryError("missing stats for column %s" % expr.column)
        st = stats[expr.column]
        if st.all_null:
            return _ONLY_NULL
        return Outcomes(True, True, st.null_count > 0)
    if isinstance(expr, StartsWith):
        return _startswith_outcomes(expr.column, expr.prefix, stats)
    if isinstance(expr, IsNull):
        ivl = derive_interval(expr.child, stats)
        return Outcomes(ivl.may_be_null, not ivl.no_values, False)
    if isinstance(expr, InList):
        ivl = derive_interval(expr.child, stats)
        if ivl.no_values:
            return _ONLY_NULL
        point = Interval(ivl.lo, ivl.hi, False)
        may_true = any(
            _cmp_possible("=", point, Interval(v, v, False)) for v in expr.values
        )
        singleton = (
            ivl.lo is not None and ivl.hi is not None and compare_values(ivl.lo, ivl.hi) == 0
        )
        hit = singleton and any(compare_values(ivl.lo, v) == 0 for v in expr.values)
        return Outcomes(may_true, not hit, ivl.may_be_null)
    raise TypeCheckError("unknown expression node %r" % (expr,))


def eval_meta(predicate, stats: Mapping[str, ColumnStats]) -> TriState:
    """Classify a partition: AlwaysFalse, Maybe or AlwaysTrue.

    AlwaysTrue demands that no consistent row can make the predicate
    False or Null, which implicitly requires null-free referenced
    columns except beneath IS NULL.
    """
    o = eval_meta_outcomes(predicate, stats)
    if not o.may_true:
        return TriState.ALWAYS_FALSE
    if not o.may_false and not o.may_null:
        return TriState.ALWAYS_TRUE
    return TriState.MAYBE


# ---------------------------------------------------------------------------
# Imprecise widening rewrites


def widen_rewrite(predicate):
    """Weaken a predicate for pruning use only.

    The result is implied by the input, so pruning with it is sound;
    the original predicate still runs at execution time. Rewrites only
    descend through AND/OR: under NOT a weakened child would strengthen
    the whole predicate, which would be unsound.
    """
    if isinstance(predicate, Like):
        p = predicate.pattern
        if p.endswith("%") and "%" not in p[:-1] and p != "%":
            return StartsWith(predicate.column, p[:-1])
        if p.startswith("%"):
            return Literal(True)  # no prefix information, never prunes
        return predicate
    if isinstance(predicate, And):
        return And(tuple(widen_rewrite(c) for c in predicate.children))
    if isinstance(predicate, Or):
        return Or(tuple(widen_rewrite(c) for c in predicate.children))
    return predicate


# ---------------------------------------------------------------------------
# JSON serialization (used by the CLI plan mode and golden tests)


def expr_to_json(expr) -> dict:
    if isinstance(expr, ColumnRef):
        return {"op": "col", "name": expr.name}
    if isinstance(expr, Literal):
        return {"op": "lit", "value": expr.value}
    if isinstance(expr, Arith):
        return {"op": expr.op, "lhs": expr_to_json(expr.lhs), "rhs": expr_to_json(expr.rhs)}
    if isinstance(expr, Cmp):
        return {"op": expr.op, "lhs": expr_to_json(expr.lhs), "rhs": expr_to_json(expr.rhs)}
    if isinstance(expr, And):
        return {"op": "and", "children": [expr_to_json(c) for c in expr.children]}
    if isinstance(expr, Or):
        return {"op": "or", "children": [expr_to_json(c) for c in expr.children]}
    if isinstance(expr, Not):
        return {"op": "not", "child": expr_to_json(expr.child)}
    if isinstance(expr, If):
        return {
            "op": "if",
            "cond": expr_to_json(expr.cond),
            "then": expr_to_json(expr.then),
            "else": expr_to_json(expr.orelse),
        }
    if isinstance(expr, Like):
        return {"op": "like", "column": expr.column, "pattern": expr.pattern}
    if isinstance(expr, StartsWith):
        return {"op": "startswith", "column": expr.column, "prefix": expr.prefix}
    if isinstance(expr, IsNull):
        return {"op": "isnull", "child": expr_to_json(expr.child)}
    if isinstance(expr, InList):
        return {"op": "in", "child": expr_to_json(expr.child), "values": list(expr.values)}
    raise TypeCheckError("unknown expression node %r" % (expr,))


def expr_from_json(doc) -> Expr:
    try:
        op = doc["op"]
        if op == "col":
            return ColumnRef(doc["name"])
        if op == "lit":
            return Literal(doc["value"])
        if op in ARITH_OPS:
            return Arith(op, expr_from_json(doc["lhs"]), expr_from_json(doc["rhs"]))
        if op in CMP_OPS:
            return Cmp(op, expr_from_json(doc["lhs"]), expr_from_json(doc["rhs"]))
        if op == "and":
            return And(tuple(expr_from_json(c) for c in doc["children"]))
        if op == "or":
            return Or(tuple(expr_from_json(c) for c in doc["children"]))
        if op == "not":
            return Not(expr_from_json(doc["child"]))
        if op == "if":
            return If(
                expr_from_json(doc["cond"]),
                expr_from_json(doc["then"]),
                expr_from_json(doc["else"]),
            )
        if op == "like":
            return Like(doc["column"], doc["pattern"])
        if op == "startswith":
            return StartsWith(doc["column"], doc["prefix"])
        if op == "isnull":
            return IsNull(expr_from_json(doc["child"]))
        if op == "in":
            return InList(expr_from_json(doc["child"]), tuple(doc["values"]))
    except (KeyError, TypeError) as exc:
        raise QueryError("malformed expression JSON: %s" % exc)
    raise QueryError("unknown expression op %r" % (op,))


def render_expr(expr) -> str:
    """SQL-ish rendering, used for output column names and explain."""
    if isinstance(expr, ColumnRef):
        return expr.name
    if isinstance(expr, Literal):
        v = expr.value
        if v is None:
            return "NULL"
        if v is True:
            return "TRUE"
        if v is False:
            return "FALSE"
        if isinstance(v, str):
            return "'%s'" % v.replace("'", "''")
        return repr(v)
    if isinstance(expr, Arith):
        return "(%s %s %s)" % (render_expr(expr.lhs), expr.op, render_expr(expr.rhs))
    if isinstance(expr, Cmp):
        return "(%s %s %s)" % (render_expr(expr.lhs), expr.op, render_expr(expr.rhs))
    if isinstance(expr, And):
        return "(" + " AND ".join(render_expr(c) for c in expr.children) + ")"
    if isinstance(expr, Or):
        return "(" + " OR ".join(render_expr(c) for c in expr.children) + ")"
    if isinstance(expr, Not):
        return "(NOT %s)" % render_expr(expr.child)
    if isinstance(expr, If):
        return "IF(%s, %s, %s)" % (
            render_expr(expr.cond),
            render_expr(expr.then),
            render_expr(expr.orelse),
        )
    if isinstance(expr, Like):
        return "(%s LIKE '%s')" % (expr.column, expr.pattern.replace("'", "''"))
    if isinstance(expr, StartsWith):
        return "STARTSWITH(%s, '%s')" % (expr.column, expr.prefix.replace("'", "''"))
    if isinstance(expr, IsNull):
        return "(%s IS NULL)" % render_expr(expr.child)
    if isinstance(expr, InList):
        return "(%s IN (%s))" % (
            render_expr(expr.child),
            ", ".join(render_expr(Literal(v)) for v in expr.values),
        )
    raise TypeCheckError("unknown expression node %r" % (expr,))
