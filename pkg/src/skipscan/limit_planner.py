"""LIMIT pushdown legality and scan-set reduction.

A LIMIT annotation travels from the Limit operator toward table scans.
Projections pass it through untouched. A Filter passes the annotation
but marks that only fully-matching partitions may count toward the
limit (partially matching ones promise nothing). Aggregations, sorts
and joins block it, with one exception: the preserved side of a left
outer join, whose rows all survive the join at least once.

Scan-set reduction then keeps the cheapest set of fully-matching
partitions whose rows cover limit + offset; when full matches cannot
cover it, the scan set is merely reordered so full matches come first.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from .logical import JoinKind, LFilter, LJoin, LLimit, LProject, LScan


@dataclass(frozen=True)
class LimitSpec:
    limit: int
    offset: int = 0

    @property
    def effective_k(self):
        # an OFFSET still has to be produced before it is dropped
        return self.limit + self.offset


@dataclass(frozen=True)
class ScanLimitAnnotation:
    effective_k: int
    requires_full_match: bool


REASON_APPLIED = "applied"
REASON_MINIMAL_ALREADY = "minimal_already"
REASON_INSUFFICIENT = "insufficient_full_match"
REASON_UNSUPPORTED_SHAPE = "unsupported_shape"


def limit_pushdown(plan) -> Dict[int, ScanLimitAnnotation]:
    """Map id(scan node) -> annotation for every scan a LIMIT reaches."""
    out: Dict[int, ScanLimitAnnotation] = {}

    def descend(node, k, through_filter):
        if isinstance(node, LScan):
            out[id(node)] = ScanLimitAnnotation(k, through_filter)
        elif isinstance(node, LProject):
            descend(node.child, k, through_filter)
        elif isinstance(node, LFilter):
            descend(node.child, k, True)
        elif isinstance(node, LJoin) and node.kind is JoinKind.LEFT_OUTER:
            # only the preserved input; every one of its rows survives
            descend(node.left, k, through_filter)
        # anything else (inner join, group by, sort, nested limit) blocks

    def walk(node):
        if isinstance(node, LLimit):
            descend(node.child, node.limit + node.offset, False)
            return
        if isinstance(node, LScan):
            return
        if isinstance(node, LJoin):
            walk(node.left)
            walk(node.right)
            return
        walk(node.child)

    walk(plan)
    return out


def prune_for_limit(
    scan_set: Sequence[int],
    full_match_set: Sequence[int],
    row_counts: Mapping[int, int],
    effective_k: int,
) -> Tuple[List[int], str]:
    """Reduce or reorder a scan set for an unordered LIMIT.

    Returns (new scan set, reason). Reduction picks fully-matching
    partitions greedily by descending row count (ties by id), which is
    minimal in count because any partition's rows are interchangeable
    for an unordered LIMIT.
    """
    scan_set = list(scan_set)
    full = [p for p in scan_set if p in set(full_match_set)]
    if effective_k == 0:
        return [], (REASON_APPLIED if scan_set else REASON_MINIMAL_ALREADY)
    if sum(row_counts[p] for p in full) < effective_k:
        reordered = full + [p for p in scan_set if p not in set(full)]
        return reordered, REASON_INSUFFICIENT
    chosen: List[int] = []
    covered = 0
    for p in sorted(full, key=lambda p: (-row_counts[p], p)):
        chosen.append(p)
        covered += row_counts[p]
        if covered >= effective_k:
            break
    chosen.sort()
    reason = REASON_APPLIED if len(chosen) < len(scan_set) else REASON_MINIMAL_ALREADY
    return chosen, reason
