"""Runtime top-k pruning: bounded heap, boundary value, scan ordering.

The heap keeps the best k rows seen so far. Once it is full, its worst
entry is the boundary value and it only ever tightens. Replacement is
strict: a row that ties the boundary never displaces anything, which is
what makes skipping a partition with max <= boundary (descending) safe.

A boundary may also be installed up front from compile-time metadata.
Such a synthetic boundary promises only that k rows at or above it
exist somewhere, so it prunes strictly (max < boundary); the heap's own
organic boundary prunes inclusively. Boundary state tracks which rule
applies and tightening picks the stricter of the two.
"""

import heapq
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .values import compare_values, value_order_key


class Direction(Enum):
    DESC = "desc"
    ASC = "asc"


class ScanOrderStrategy(Enum):
    NONE_RANDOM = "none_random"
    FULL_SORT = "full_sort"


@dataclass(frozen=True)
class Boundary:
    value: object
    strict: bool  # True: prune only strictly-beyond partitions (synthetic)

    def tighter_than(self, other, direction):
        if other is None:
            return True
        c = compare_values(self.value, other.value)
        if direction is Direction.ASC:
            c = -c
        if c != 0:
            return c > 0
        # equal values: the inclusive (organic) rule prunes more
        return other.strict and not self.strict


class _Rev:
    """Inverts comparison order; lets heapq act as a max-heap per field."""

    __slots__ = ("inner",)

    def __init__(self, inner):
        self.inner = inner

    def __lt__(self, other):
        return other.inner < self.inner

    def __eq__(self, other):
        return self.inner == other.inner


class _HeapEntry:
    __slots__ = ("badness", "order_value", "uid", "payload")

    def __init__(self, badness, order_value, uid, payload):
        self.badness = badness
        self.order_value = order_value
        self.uid = uid
        self.payload = payload

    def __lt__(self, other):
        return self.badness < other.badness


class TopKState:
    """Bounded heap over non-null order values with a monotone boundary."""

    def __init__(self, k: int, direction: Direction):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self.direction = direction
        self._heap: List[_HeapEntry] = []
        self._synthetic: Optional[Boundary] = None

    def _badness(self, order_value, uid):
        # heapq pops the smallest entry, so "smallest" must mean "worst":
        # worst order value first, ties evicting the largest uid first
        vkey = value_order_key(order_value)
        if self.direction is Direction.DESC:
            return (vkey, _Rev(uid))
        return (_Rev(vkey), _Rev(uid))

    def set_initial_boundary(self, value) -> None:
        b = Boundary(value, strict=True)
        if self._synthetic is None or b.tighter_than(self._synthetic, self.direction):
            self._synthetic = b

    def organic_boundary(self) -> Optional[Boundary]:
        if len(self._heap) < self.k:
            return None
        return Boundary(self._heap[0].order_value, strict=False)

    def boundary(self) -> Optional[Boundary]:
        org = self.organic_boundary()
        syn = self._synthetic
        if org is None:
            return syn
        if syn is None:
            return org
        return syn if syn.tighter_than(org, self.direction) else org

    def insert(self, order_value, uid, payload=None) -> bool:
        """Offer a row; returns True if it entered the heap."""
        entry = _HeapEntry(self._badness(order_value, uid), order_value, uid, payload)
        if len(self._heap) < self.k:
            heapq.heappush(self._heap, entry)
            return True
        worst = self._heap[0]
        c = compare_values(order_value, worst.order_value)
        if self.direction is Direction.ASC:
            c = -c
        if c <= 0:  # ties never displace
            return False
        heapq.heapreplace(self._heap, entry)
        return True

    def results(self) -> List[Tuple[object, tuple, object]]:
        """Entries best-first; ties ordered by uid ascending."""
        if self.direction is Direction.DESC:
            key = lambda e: (_Rev(value_order_key(e.order_value)), e.uid)
        else:
            key = lambda e: (value_order_key(e.order_value), e.uid)
        return [(e.order_value, e.uid, e.payload) for e in sorted(self._heap, key=key)]

    def __len__(self):
        return len(self._heap)


def should_prune(stats_min, stats_max, all_null: bool, boundary: Boundary,
                 direction: Direction) -> bool:
    """Can this partition contain a row that beats the boundary?

    all-null partitions never can (nulls sort last). Descending scans
    look at the partition max: an organic boundary skips max <= b, a
    synthetic one only max < b. Ascending mirrors on the min.
    """
    if boundary is None:
        return False
    if all_null:
        return True
    if direction is Direction.DESC:
        if stats_max is None:  # unbounded above, could hold anything
            return False
        c = compare_values(stats_max, boundary.value)
        return c < 0 if boundary.strict else c <= 0
    if stats_min is None:
        return False
    c = compare_values(stats_min, boundary.value)
    return c > 0 if boundary.strict else c >= 0


@dataclass(frozen=True)
class ScanEntry:
    """Per-partition order-column stats handed to ordering and pruning."""

    pid: int
    lo: object  # min of the order column (or derived lower bound)
    hi: object
    all_null: bool
    rows: int = 0
    null_count: int = 0


def order_scan_set(entries: Sequence[ScanEntry], direction: Direction,
                   strategy: ScanOrderStrategy, seed: int = 0) -> List[int]:
    """Visit order for a top-k scan; affects effectiveness, never results."""
    entries = list(entries)
    if strategy is ScanOrderStrategy.NONE_RANDOM:
        rng = random.Random(seed)
        rng.shuffle(entries)
        return [e.pid for e in entries]
    with_stats = [e for e in entries if not e.all_null]
    nulls = [e for e in entries if e.all_null]
    # an unbounded best-case edge (derived interval) could hold anything,
    # so those partitions go first
    if direction is Direction.DESC:
        key = lambda e: (0, 0, e.pid) if e.hi is None else (1, _Rev(value_order_key(e.hi)), e.pid)
    else:
        key = lambda e: (0, 0, e.pid) if e.lo is None else (1, value_order_key(e.lo), e.pid)
    with_stats.sort(key=key)
    nulls.sort(key=lambda e: e.pid)
    return [e.pid for e in with_stats + nulls]


def init_boundary(full_match_entries: Sequence[ScanEntry], k: int,
                  direction: Direction):
    """Compile-time boundary from null-free fully-matching partitions.

    Two candidates, keep the stricter:
      A: the k-th best extreme (desc: k-th largest max) over the
         partitions, absent when there are fewer than k of them;
      B: walk partitions by their best-case floor (desc: min descending)
         and take that floor once cumulative rows reach k.
    Returns a plain value or None; callers install it as a strict
    (synthetic) boundary.
    """
    if k < 1:
        return None
    usable = [
        e
        for e in full_match_entries
        if not e.all_null and e.null_count == 0 and e.lo is not None and e.hi is not None
    ]
    if not usable:
        return None
    desc = direction is Direction.DESC

    extremes = sorted(
        ((value_order_key(e.hi if desc else e.lo), e.hi if desc else e.lo) for e in usable),
        key=lambda t: t[0],
        reverse=desc,
    )
    cand_a = None
    if len(extremes) >= k:
        cand_a = extremes[k - 1]

    floors = sorted(
        ((value_order_key(e.lo if desc else e.hi), e.lo if desc else e.hi, e.rows)
         for e in usable),
        key=lambda t: t[0],
        reverse=desc,
    )
    cand_b = None
    cum = 0
    for fkey, fval, rows in floors:
        cum += rows
        if cum >= k:
            cand_b = (fkey, fval)
            break

    cands = [c for c in (cand_a, cand_b) if c is not None]
    if not cands:
        return None
    if desc:
        return max(cands, key=lambda t: t[0])[1]
    return min(cands, key=lambda t: t[0])[1]


def groupby_topk_eligible(order_keys, group_keys) -> bool:
    """True iff every order key appears among the group keys."""
    return all(any(ok == gk for gk in group_keys) for ok in order_keys)
