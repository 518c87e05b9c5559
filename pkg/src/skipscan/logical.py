"""Logical query plans: what the parser produces and the planner consumes.

The tree shape is fixed by the grammar: Project at the root, then an
optional Limit, an optional Sort, an optional GroupBy, an optional
Filter, and a Scan or a two-table Join at the leaves. Nodes compare by
identity (the limit planner keys annotations off node objects).
Plans round-trip through JSON for the CLI's plan mode.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from . import expr as ex
from .errors import QueryError
from .topk import Direction


class JoinKind(Enum):
    INNER = "inner"
    LEFT_OUTER = "left_outer"


@dataclass(frozen=True)
class AggSpec:
    """One aggregate call; expr is None for count(*)."""

    fn: str  # count | sum | min | max
    expr: Optional[object]
    name: str


@dataclass(eq=False)
class LScan:
    table: str


@dataclass(eq=False)
class LJoin:
    kind: JoinKind
    left: object
    right: object
    left_key: str
    right_key: str


@dataclass(eq=False)
class LFilter:
    child: object
    predicate: object


@dataclass(eq=False)
class LGroupBy:
    child: object
    keys: List[str]
    aggs: List[AggSpec]


@dataclass(eq=False)
class LSort:
    child: object
    order_expr: object
    direction: Direction


@dataclass(eq=False)
class LLimit:
    child: object
    limit: int
    offset: int = 0


@dataclass(eq=False)
class LProject:
    child: object
    exprs: List[object] = field(default_factory=list)
    names: List[str] = field(default_factory=list)
    star: bool = False


def child_of(node):
    if isinstance(node, LScan):
        return None
    if isinstance(node, LJoin):
        return None  # two children; callers handle joins explicitly
    return node.child


def iter_scans(node):
    if isinstance(node, LScan):
        yield node
    elif isinstance(node, LJoin):
        yield from iter_scans(node.left)
        yield from iter_scans(node.right)
    else:
        yield from iter_scans(node.child)


def plan_to_json(node) -> dict:
    if isinstance(node, LScan):
        return {"node": "scan", "table": node.table}
    if isinstance(node, LJoin):
        return {
            "node": "join",
            "kind": node.kind.value,
            "left": plan_to_json(node.left),
            "right": plan_to_json(node.right),
            "left_key": node.left_key,
            "right_key": node.right_key,
        }
    if isinstance(node, LFilter):
        return {
            "node": "filter",
            "child": plan_to_json(node.child),
            "predicate": ex.expr_to_json(node.predicate),
        }
    if isinstance(node, LGroupBy):
        return {
            "node": "group_by",
            "child": plan_to_json(node.child),
            "keys": list(node.keys),
            "aggs": [
                {
                    "fn": a.fn,
                    "expr": None if a.expr is None else ex.expr_to_json(a.expr),
                    "name": a.name,
                }
                for a in node.aggs
            ],
        }
    if isinstance(node, LSort):
        return {
            "node": "sort",
            "child": plan_to_json(node.child),
            "order": ex.expr_to_json(node.order_expr),
            "direction": node.direction.value,
        }
    if isinstance(node, LLimit):
        return {
            "node": "limit",
            "child": plan_to_json(node.child),
            "limit": node.limit,
            "offset": node.offset,
        }
    if isinstance(node, LProject):
        return {
            "node": "project",
            "child": plan_to_json(node.child),
            "star": node.star,
            "exprs": [ex.expr_to_json(e) for e in node.exprs],
            "names": list(node.names),
        }
    raise QueryError("unknown plan node %r" % (node,))


def plan_from_json(doc) -> object:
    try:
        kind = doc["node"]
        if kind == "scan":
            return LScan(doc["table"])
        if kind == "join":
            return LJoin(
                JoinKind(doc["kind"]),
                plan_from_json(doc["left"]),
                plan_from_json(doc["right"]),
                doc["left_key"],
                doc["right_key"],
            )
        if kind == "filter":
            return LFilter(plan_from_json(doc["child"]), ex.expr_from_json(doc["predicate"]))
        if kind == "group_by":
            return LGroupBy(
                plan_from_json(doc["child"]),
                list(doc["keys"]),
                [
                    AggSpec(
                        a["fn"],
                        None if a["expr"] is None else ex.expr_from_json(a["expr"]),
                        a["name"],
                    )
                    for a in doc["aggs"]
                ],
            )
        if kind == "sort":
            return LSort(
                plan_from_json(doc["child"]),
                ex.expr_from_json(doc["order"]),
                Direction(doc["direction"]),
            )
        if kind == "limit":
            return LLimit(plan_from_json(doc["child"]), doc["limit"], doc["offset"])
        if kind == "project":
            return LProject(
                plan_from_json(doc["child"]),
                [ex.expr_from_json(e) for e in doc["exprs"]],
                list(doc["names"]),
                doc["star"],
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise QueryError("malformed plan JSON: %s" % exc)
    raise QueryError("unknown plan node kind %r" % (kind,))


def plans_equal(a, b) -> bool:
    """Structural equality (node identity does not matter)."""
    return plan_to_json(a) == plan_to_json(b)
