"""Build-side key summaries and probe-side partition pruning.

After the hash join's build phase the distinct build keys are folded
into one of four summary shapes: Empty (no build rows), an exact sorted
set when small enough, a bounded list of disjoint closed ranges, or a
single global min/max interval when the budget is one. A probe-side
partition survives only if its [min, max] for the join key intersects
the summary; every build key is covered by the summary, so pruning can
never lose a joinable row.

Range compression merges the pair of adjacent intervals with the
smallest gap until the budget is met. Gaps need subtraction, so
non-numeric keys that overflow the exact budget fall back to the
global min/max summary instead.
"""

import bisect
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from .errors import TypeCheckError
from .values import compare_values, is_nan, value_kind, value_order_key

DEFAULT_RANGE_BUDGET = 64
DEFAULT_EXACT_THRESHOLD = 1024


class SummaryMode(Enum):
    EMPTY = "empty"
    EXACT_SET = "exact_set"
    RANGE_SET = "range_set"
    GLOBAL_MINMAX = "global_minmax"


@dataclass(frozen=True)
class BuildSummary:
    mode: SummaryMode
    values: Tuple = ()  # sorted distinct keys (EXACT_SET)
    ranges: Tuple = ()  # sorted disjoint (lo, hi) pairs (RANGE_SET / GLOBAL_MINMAX)

    @property
    def size(self):
        if self.mode is SummaryMode.EXACT_SET:
            return len(self.values)
        return len(self.ranges)


def _distinct_sorted(keys):
    seen = {}
    for k in keys:
        if k is None:
            continue  # null keys never equi-join
        seen.setdefault(value_order_key(k), k)
    return [seen[kk] for kk in sorted(seen)]


def summarize_build(keys: Sequence, budget: int = DEFAULT_RANGE_BUDGET,
                    exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> BuildSummary:
    """Summarize non-null build keys within the given budgets."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    nonnull = [k for k in keys if k is not None]
    kinds = {value_kind(v) for v in nonnull}
    # checked before sorting: mixed kinds would blow up the sort itself
    if not (kinds <= {"int", "float"} or len(kinds) == 1):
        raise TypeCheckError("mixed key types in build summary: %s" % sorted(kinds))
    distinct = _distinct_sorted(nonnull)
    if not distinct:
        return BuildSummary(SummaryMode.EMPTY)
    if len(distinct) <= exact_threshold:
        return BuildSummary(SummaryMode.EXACT_SET, values=tuple(distinct))
    numeric = kinds <= {"int", "float"}
    if budget == 1 or not numeric:
        return BuildSummary(
            SummaryMode.GLOBAL_MINMAX, ranges=((distinct[0], distinct[-1]),)
        )
    if len(distinct) <= budget:
        ranges = tuple((v, v) for v in distinct)
        return BuildSummary(SummaryMode.RANGE_SET, ranges=ranges)
    # merging the smallest adjacent gap first, left to right on ties, is
    # the same as keeping the (budget - 1) largest gaps as separators,
    # preferring the rightmost among ties
    gaps = []
    for i in range(len(distinct) - 1):
        a, b = distinct[i], distinct[i + 1]
        gap = float("inf") if (is_nan(a) or is_nan(b)) else b - a
        gaps.append((gap, i))
    gaps.sort(key=lambda t: (-t[0], -t[1]))
    separators = sorted(i for _, i in gaps[: budget - 1])
    ranges = []
    start = 0
    for sep in separators:
        ranges.append((distinct[start], distinct[sep]))
        start = sep + 1
    ranges.append((distinct[start], distinct[-1]))
    return BuildSummary(SummaryMode.RANGE_SET, ranges=tuple(ranges))


@dataclass(frozen=True)
class ProbeEntry:
    pid: int
    lo: object  # join-key min, None only when all_null
    hi: object
    all_null: bool


def _intersects(summary: BuildSummary, lo, hi) -> bool:
    if summary.mode is SummaryMode.EMPTY:
        return False
    if summary.mode is SummaryMode.EXACT_SET:
        keys = [value_order_key(v) for v in summary.values]
        i = bisect.bisect_left(keys, value_order_key(lo))
        return i < len(keys) and keys[i] <= value_order_key(hi)
    for rlo, rhi in summary.ranges:
        if compare_values(rlo, hi) <= 0 and compare_values(lo, rhi) <= 0:
            return True
    return False


def prune_probe(entries: Sequence[ProbeEntry], summary: BuildSummary,
                probe_preserved: bool = False) -> Tuple[List[int], List[int]]:
    """Split probe partitions into (kept, pruned) by summary overlap.

    A partition with no non-null key values cannot produce a join match,
    so it is pruned unless the probe side is preserved by an outer join;
    a preserved probe side must not be pruned at all (its rows survive
    without a match).
    """
    kept, pruned = [], []
    for e in entries:
        if probe_preserved:
            kept.append(e.pid)
        elif e.all_null:
            pruned.append(e.pid)
        elif _intersects(summary, e.lo, e.hi):
            kept.append(e.pid)
        else:
            pruned.append(e.pid)
    return kept, pruned
