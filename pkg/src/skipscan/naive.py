"""Full-scan reference interpreter and result equivalence.

This is the oracle the pruning engine is judged against: the same
physical plan, executed with every partition of every table, a
nested-loop join, complete aggregation and full sorts. None of the
scan-set machinery is consulted, so a disagreement with the engine
points at a pruning decision that changed visible results.

Equivalence depends on the query shape. Plans without ORDER BY or
LIMIT must match as multisets. An unordered LIMIT pins the row count
and requires the engine rows to be contained in the unlimited oracle
output. An ordered query compares the sequence of order values, plus
containment (limited) or multiset equality (unlimited): ties may
break differently, which changes row order but never the values.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import expr as ex
from .errors import OverflowQueryError
from .executor import (
    ExecResult,
    PFilter,
    PGroupBy,
    PHashJoin,
    PLimit,
    PProject,
    PScan,
    PSort,
    PTopK,
    PhysicalPlan,
)
from .logical import JoinKind
from .topk import Direction, _Rev
from .values import INT64_MAX, INT64_MIN, compare_values, is_nan, value_order_key


@dataclass
class NaiveResult:
    rows: List[dict]
    uids: List[tuple]
    order_values: Optional[list]


def _scan_rows(table):
    for part in table.partitions:
        names = table.column_names
        cols = [part.columns[n] for n in names]
        for i, vals in enumerate(zip(*cols)):
            yield dict(zip(names, vals)), (part.id, i)


def _group_rows(node: PGroupBy, child_rows):
    groups: Dict[tuple, list] = {}
    order: List[tuple] = []
    raws: Dict[tuple, tuple] = {}
    for data, _uid in child_rows:
        raw = tuple(data[k] for k in node.keys)
        norm = tuple(
            (2, 0.0) if v is None else value_order_key(v) for v in raw
        )
        if norm not in groups:
            groups[norm] = []
            order.append(norm)
            raws[norm] = raw
        groups[norm].append(data)
    if not node.keys and not order:
        groups[()] = []
        order.append(())
        raws[()] = ()
    for seq, norm in enumerate(order):
        rows = groups[norm]
        out = dict(zip(node.keys, raws[norm]))
        for spec in node.aggs:
            if spec.fn == "count":
                if spec.expr is None:
                    out[spec.name] = len(rows)
                else:
                    out[spec.name] = sum(
                        1 for r in rows if ex.eval_row(spec.expr, r) is not None
                    )
            elif spec.fn == "sum":
                total = None
                for r in rows:
                    v = ex.eval_row(spec.expr, r)
                    if v is None:
                        continue
                    total = v if total is None else total + v
                    if isinstance(total, int) and not isinstance(total, bool) and not (
                        INT64_MIN <= total <= INT64_MAX
                    ):
                        raise OverflowQueryError("SUM left the int64 range")
                out[spec.name] = total
            else:
                best = None
                for r in rows:
                    v = ex.eval_row(spec.expr, r)
                    if v is None:
                        continue
                    if best is None:
                        best = v
                    else:
                        c = compare_values(v, best)
                        if (spec.fn == "max" and c > 0) or (spec.fn == "min" and c < 0):
                            best = v
                out[spec.name] = best
        yield out, (seq,)


def _sorted_rows(rows, order_expr, direction, order_values):
    non_null = []
    nulls = []
    for data, uid in rows:
        v = ex.eval_row(order_expr, data)
        if v is None:
            nulls.append((data, uid))
        else:
            non_null.append((data, uid, v))
    if direction is Direction.DESC:
        non_null.sort(key=lambda r: (_Rev(value_order_key(r[2])), r[1]))
    else:
        non_null.sort(key=lambda r: (value_order_key(r[2]), r[1]))
    nulls.sort(key=lambda r: r[1])
    out = []
    for data, uid, v in non_null:
        order_values[uid] = v
        out.append((data, uid))
    for data, uid in nulls:
        order_values[uid] = None
        out.append((data, uid))
    return out


def _rows(node, unlimited, order_values):
    if isinstance(node, PScan):
        yield from _scan_rows(node.table)
    elif isinstance(node, PFilter):
        for data, uid in _rows(node.child, unlimited, order_values):
            if ex.eval_row(node.predicate, data) is True:
                yield data, uid
    elif isinstance(node, PProject):
        for data, uid in _rows(node.child, unlimited, order_values):
            yield {n: ex.eval_row(e, data) for n, e in zip(node.names, node.exprs)}, uid
    elif isinstance(node, PHashJoin):
        build = list(_rows(node.build, unlimited, order_values))
        probe = list(_rows(node.probe, unlimited, order_values))
        matched = [False] * len(build)
        for pdata, puid in probe:
            k = pdata[node.probe_key]
            if k is None:
                continue
            for i, (bdata, buid) in enumerate(build):
                bk = bdata[node.build_key]
                if bk is None:
                    continue
                if compare_values(k, bk) == 0:
                    matched[i] = True
                    yield {**bdata, **pdata}, puid + buid
        if node.kind is JoinKind.LEFT_OUTER:
            null_probe = {c: None for c in node.probe_columns}
            for i, (bdata, buid) in enumerate(build):
                if not matched[i]:
                    yield {**bdata, **null_probe}, buid + (-1, -1)
    elif isinstance(node, PGroupBy):
        yield from _group_rows(node, _rows(node.child, unlimited, order_values))
    elif isinstance(node, PTopK):
        everything = _sorted_rows(
            list(_rows(node.child, unlimited, order_values)),
            node.order_expr,
            node.direction,
            order_values,
        )
        if not unlimited:
            everything = everything[node.offset : node.offset + node.limit]
        yield from everything
    elif isinstance(node, PSort):
        yield from _sorted_rows(
            list(_rows(node.child, unlimited, order_values)),
            node.order_expr,
            node.direction,
            order_values,
        )
    elif isinstance(node, PLimit):
        rows = _rows(node.child, unlimited, order_values)
        if unlimited:
            yield from rows
        else:
            for n, (data, uid) in enumerate(rows):
                if n < node.offset:
                    continue
                if n >= node.offset + node.limit:
                    break
                yield data, uid
    else:
        raise TypeError("unknown physical node %r" % (node,))


def naive_execute(plan: PhysicalPlan, unlimited: bool = False) -> NaiveResult:
    """Run the plan with no pruning of any kind.

    unlimited=True additionally ignores LIMIT/OFFSET so the output can
    serve as the containment universe for limited queries.
    """
    order_values: Dict[tuple, object] = {}
    rows = []
    uids = []
    for data, uid in _rows(plan.root, unlimited, order_values):
        rows.append(data)
        uids.append(uid)
    ovs = None
    if plan.has_order:
        ovs = [order_values.get(uid) for uid in uids]
    return NaiveResult(rows=rows, uids=uids, order_values=ovs)


# ---------------------------------------------------------------------------
# Equivalence


def canon_value(v):
    if is_nan(v):
        return "__nan__"
    return v


def canon_row(d: dict) -> tuple:
    return tuple(sorted(((k, canon_value(v)) for k, v in d.items()), key=lambda kv: kv[0]))


def multiset(rows) -> Counter:
    return Counter(canon_row(d) for d in rows)


def _values_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        cx, cy = canon_value(x), canon_value(y)
        if cx is None or cy is None:
            if cx is not cy:
                return False
        elif not (cx == cy):
            return False
    return True


def result_mode(plan: PhysicalPlan) -> Tuple[str, int, int]:
    """(mode, limit, offset); mode in ordered_limited | ordered_full |
    limited_unordered | exact."""
    node = plan.root
    while node is not None:
        if isinstance(node, PTopK):
            return "ordered_limited", node.limit, node.offset
        if isinstance(node, PSort):
            return "ordered_full", 0, 0
        if isinstance(node, PLimit):
            return "limited_unordered", node.limit, node.offset
        node = getattr(node, "child", None)
    return "exact", 0, 0


def oracle_check(plan: PhysicalPlan, engine: ExecResult) -> Tuple[bool, str]:
    """Compare an engine result against the full-scan oracle."""
    mode, limit, offset = result_mode(plan)
    if mode == "exact":
        naive = naive_execute(plan)
        if multiset(engine.rows) != multiset(naive.rows):
            return False, "row multisets differ"
        return True, "exact multiset match (%d rows)" % len(engine.rows)

    full = naive_execute(plan, unlimited=True)
    if mode == "ordered_full":
        if multiset(engine.rows) != multiset(full.rows):
            return False, "row multisets differ"
        if not _values_equal(engine.order_values, full.order_values):
            return False, "order value sequences differ"
        return True, "ordered match (%d rows)" % len(engine.rows)

    expect_n = max(0, min(limit, len(full.rows) - offset))
    if len(engine.rows) != expect_n:
        return False, "expected %d rows, engine produced %d" % (expect_n, len(engine.rows))
    if multiset(engine.rows) - multiset(full.rows):
        return False, "engine produced rows the oracle never did"
    if mode == "ordered_limited":
        want = full.order_values[offset : offset + limit]
        if not _values_equal(engine.order_values, want):
            return False, "order value sequences differ"
    return True, "%s match (%d rows)" % (mode, expect_n)
