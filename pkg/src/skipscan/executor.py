"""Pull-based execution engine with partition pruning hooks.

A physical plan is a small tree of operator nodes over one or two
scans. Execution happens in two stages. Before any row moves, every
scan's visit list is prepared: the filter predicate classifies
partitions from their stats (Not / Partially / Fully Matching), an
unordered LIMIT shrinks or reorders the surviving set, and a top-k
hook orders it and may install a precomputed boundary. While rows
flow, the remaining decisions happen at consume time in visit order:
top-k boundaries tighten as the heap fills, and a hash join prunes
the probe scan once the build side has been summarized.

Rows travel as (data dict, uid tuple) pairs. Scan uids are
(partition id, row index); a join concatenates probe and build uids,
using (-1, -1) for the probe half of an unmatched preserved row.
Uids are what make ties deterministic regardless of worker count:
prefetch only materializes partitions ahead of time, every decision
is taken at consume time in scan-set order.
"""

import heapq
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from . import expr as ex
from .errors import OverflowQueryError, QueryError
from .join_pruning import (
    DEFAULT_EXACT_THRESHOLD,
    DEFAULT_RANGE_BUDGET,
    ProbeEntry,
    prune_probe,
    summarize_build,
)
from .limit_planner import ScanLimitAnnotation, prune_for_limit
from .logical import JoinKind
from .partition_store import Table
from .pruning_tree import TreeConfig, build_pruning_tree, prune_scan_set
from .topk import (
    Boundary,
    Direction,
    ScanEntry,
    ScanOrderStrategy,
    TopKState,
    _Rev,
    init_boundary,
    order_scan_set,
    should_prune,
)
from .expr import TriState
from .values import INT64_MAX, INT64_MIN, compare_values, value_order_key

TECHNIQUES = ("filter", "limit", "join", "topk")


@dataclass
class EngineConfig:
    workers: int = 1
    seed: int = 0
    scan_order: ScanOrderStrategy = ScanOrderStrategy.FULL_SORT
    disable_filter: bool = False
    disable_limit: bool = False
    disable_join: bool = False
    disable_topk: bool = False
    tree: TreeConfig = field(default_factory=TreeConfig)
    join_range_budget: int = DEFAULT_RANGE_BUDGET
    join_exact_threshold: int = DEFAULT_EXACT_THRESHOLD


# ---------------------------------------------------------------------------
# Physical nodes. Built by the planner, annotated in place.


@dataclass(eq=False)
class TopKHook:
    """Ties a scan to the top-k operator whose boundary can skip it."""

    owner: object  # the PTopK or PGroupBy holding the evolving state
    mode: str  # "row" | "group"
    order_expr: object
    direction: Direction
    k_eff: int
    allow_init: bool = False
    null_count_column: Optional[str] = None  # set when order_expr is a bare column


@dataclass(eq=False)
class GroupTopKSpec:
    k_eff: int
    direction: Direction
    key: str
    key_index: int


@dataclass(eq=False)
class PScan:
    table: Table
    label: str
    predicate: object = None  # conjuncts assigned to this scan, original form
    prune_predicate: object = None  # widened copy used for the pruning tree
    covers_filter: bool = True  # assigned conjuncts == the whole WHERE
    limit_ann: Optional[ScanLimitAnnotation] = None
    topk_hook: Optional[TopKHook] = None


@dataclass(eq=False)
class PFilter:
    child: object
    predicate: object
    skip_scan: Optional[PScan] = None  # fully matching partitions skip the re-check


@dataclass(eq=False)
class PProject:
    child: object
    exprs: List[object]
    names: List[str]


@dataclass(eq=False)
class PHashJoin:
    kind: JoinKind
    build: object  # left input, always the build side
    probe: object
    build_key: str
    probe_key: str
    probe_scan: Optional[PScan]  # None when the probe input is not a bare scan
    probe_columns: List[str]


@dataclass(eq=False)
class PGroupBy:
    child: object
    keys: List[str]
    aggs: List[object]  # AggSpec
    group_topk: Optional[GroupTopKSpec] = None


@dataclass(eq=False)
class PTopK:
    child: object
    order_expr: object
    direction: Direction
    limit: int
    offset: int
    shape: str = "none"  # scan | join_probe | outer_join_build | aggregation | none


@dataclass(eq=False)
class PSort:
    child: object
    order_expr: object
    direction: Direction


@dataclass(eq=False)
class PLimit:
    child: object
    limit: int
    offset: int


@dataclass(eq=False)
class PhysicalPlan:
    root: object
    scans: List[PScan]
    output_names: List[str]
    has_order: bool = False


def plan_nodes(node):
    yield node
    for attr in ("child", "build", "probe"):
        sub = getattr(node, attr, None)
        if sub is not None:
            yield from plan_nodes(sub)


# ---------------------------------------------------------------------------
# Per-query stats


@dataclass
class ScanStats:
    label: str
    table_name: str
    partitions_total: int
    scanned_ids: List[int]
    pruned_ids: Dict[str, List[int]]
    limit_reason: Optional[str] = None
    init_boundary: object = None
    classifications: Optional[Dict[int, TriState]] = None

    @property
    def scanned(self):
        return len(self.scanned_ids)

    def pruned_by(self, technique):
        return len(self.pruned_ids[technique])

    @property
    def pruned_total(self):
        return sum(len(v) for v in self.pruned_ids.values())

    @property
    def ratio(self):
        if self.partitions_total == 0:
            return None
        return self.pruned_total / self.partitions_total

    def to_json(self):
        doc = {
            "label": self.label,
            "table": self.table_name,
            "partitions_total": self.partitions_total,
            "scanned": self.scanned,
            "scanned_ids": list(self.scanned_ids),
            "pruned_ids": {t: list(v) for t, v in self.pruned_ids.items()},
            "ratio": self.ratio,
            "limit_reason": self.limit_reason,
        }
        for t in TECHNIQUES:
            doc["pruned_by_%s" % t] = self.pruned_by(t)
        if self.init_boundary is not None:
            doc["init_boundary"] = self.init_boundary
        return doc


@dataclass
class QueryStats:
    scans: List[ScanStats]
    techniques: Dict[str, Dict[str, bool]]
    rows_out: int = 0
    wall_time_s: float = 0.0

    def to_json(self):
        return {
            "version": 1,
            "rows_out": self.rows_out,
            "wall_time_ms": round(self.wall_time_s * 1000.0, 3),
            "scans": [s.to_json() for s in self.scans],
            "techniques": self.techniques,
        }


@dataclass
class ExecResult:
    rows: List[dict]
    uids: List[tuple]
    order_values: Optional[list]
    stats: QueryStats


# ---------------------------------------------------------------------------
# Runtime state


class _ScanRuntime:
    __slots__ = (
        "order", "next_idx", "consumed", "pruned", "full_match", "entries",
        "join_pruned", "limit_reason", "init_boundary", "classifications",
        "filter_result",
    )

    def __init__(self):
        self.order: List[int] = []
        self.next_idx = 0
        self.consumed: Set[int] = set()
        self.pruned = {t: set() for t in TECHNIQUES}
        self.full_match: Set[int] = set()
        self.entries: Dict[int, ScanEntry] = {}
        self.join_pruned: Set[int] = set()
        self.limit_reason: Optional[str] = None
        self.init_boundary = None
        self.classifications: Optional[Dict[int, TriState]] = None
        self.filter_result = None


class _GroupAcc:
    __slots__ = ("raw_keys", "accs", "seq")

    def __init__(self, raw_keys, accs, seq):
        self.raw_keys = raw_keys
        self.accs = accs
        self.seq = seq


class _AggAcc:
    """One aggregate over one group; nulls are skipped per SQL rules."""

    __slots__ = ("spec", "n", "total", "best")

    def __init__(self, spec):
        self.spec = spec
        self.n = 0
        self.total = None
        self.best = None

    def add(self, data):
        spec = self.spec
        if spec.fn == "count":
            if spec.expr is None or ex.eval_row(spec.expr, data) is not None:
                self.n += 1
            return
        v = ex.eval_row(spec.expr, data)
        if v is None:
            return
        if spec.fn == "sum":
            self.total = v if self.total is None else self.total + v
            t = self.total
            if isinstance(t, int) and not isinstance(t, bool) and not (
                INT64_MIN <= t <= INT64_MAX
            ):
                raise OverflowQueryError("SUM left the int64 range")
            return
        if self.best is None:
            self.best = v
        else:
            c = compare_values(v, self.best)
            if (spec.fn == "max" and c > 0) or (spec.fn == "min" and c < 0):
                self.best = v

    def final(self):
        if self.spec.fn == "count":
            return self.n
        if self.spec.fn == "sum":
            return self.total
        return self.best


class _GroupTopKState:
    """Bounded group heap for top-k over an aggregation.

    A group is admitted while there is room, or when its order key
    strictly beats the current worst resident (null keys sort last in
    both directions, so they never beat anything). The boundary only
    tightens, so a key rejected once is rejected forever and admitted
    groups have seen every one of their rows.
    """

    def __init__(self, k, direction, key_index):
        self.k = k
        self.direction = direction
        self.key_index = key_index
        self.resident: Dict[tuple, _GroupAcc] = {}
        self._heap: List[Tuple[tuple, tuple]] = []  # (badness, norm key)

    def _badness(self, ov):
        if ov is None:
            return (0, 0.0)  # worst in either direction
        vk = value_order_key(ov)
        return (1, vk) if self.direction is Direction.DESC else (1, _Rev(vk))

    def _clean(self):
        while self._heap and self._heap[0][1] not in self.resident:
            heapq.heappop(self._heap)

    def _worst_key(self):
        self._clean()
        norm = self._heap[0][1]
        return self.resident[norm].raw_keys[self.key_index]

    def _beats(self, ov, worst):
        if ov is None:
            return False
        if worst is None:
            return True
        c = compare_values(ov, worst)
        return c > 0 if self.direction is Direction.DESC else c < 0

    def offer(self, norm, raw_keys, make_acc):
        """Return the group's accumulator, or None when it is rejected."""
        acc = self.resident.get(norm)
        if acc is not None:
            return acc
        ov = raw_keys[self.key_index]
        if len(self.resident) >= self.k:
            if not self._beats(ov, self._worst_key()):
                return None
            self._clean()
            _, worst_norm = heapq.heappop(self._heap)
            del self.resident[worst_norm]
        acc = make_acc()
        self.resident[norm] = acc
        heapq.heappush(self._heap, (self._badness(ov), norm))
        return acc

    def scan_boundary(self) -> Optional[Boundary]:
        """Strict pruning boundary, or None while pruning is unsound.

        Null keys sort worst, so whenever the worst resident key is
        non-null there is no null-keyed resident group and all-null
        partitions are safe to skip too.
        """
        if len(self.resident) < self.k:
            return None
        worst = self._worst_key()
        if worst is None:
            return None
        return Boundary(worst, strict=True)


class _ExecContext:
    def __init__(self, config: EngineConfig):
        self.config = config
        self.scan_rt: Dict[int, _ScanRuntime] = {}
        self.topk_states: Dict[int, TopKState] = {}
        self.group_states: Dict[int, _GroupTopKState] = {}
        self.order_values: Dict[tuple, object] = {}
        self._pool = None

    def pool(self):
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.config.workers)
        return self._pool

    def shutdown(self):
        if self._pool is not None:
            self._pool.shutdown(wait=False)
            self._pool = None


def _hook_boundary(ctx: _ExecContext, hook: TopKHook) -> Optional[Boundary]:
    if hook.mode == "row":
        st = ctx.topk_states.get(id(hook.owner))
        return st.boundary() if st is not None else None
    gs = ctx.group_states.get(id(hook.owner))
    return gs.scan_boundary() if gs is not None else None


# ---------------------------------------------------------------------------
# Scan preparation: filter -> limit -> top-k ordering, before any row moves


def _prepare_scan(node: PScan, ctx: _ExecContext):
    cfg = ctx.config
    rt = _ScanRuntime()
    ctx.scan_rt[id(node)] = rt
    parts = node.table.partitions
    scan_set = [p.id for p in parts]
    stats_by_id = {p.id: p.stats for p in parts}
    rows_by_id = {p.id: p.num_rows for p in parts}

    if node.predicate is not None and not cfg.disable_filter:
        tree = build_pruning_tree(node.prune_predicate)
        result = prune_scan_set(tree, parts, cfg.tree)
        rt.filter_result = result
        rt.pruned["filter"] = set(scan_set) - set(result.scan_set)
        scan_set = list(result.scan_set)
        # AlwaysTrue must hold for the original predicate; the widened
        # tree may contain pruning-true placeholders that cannot vouch
        # for actual rows.
        rt.full_match = {
            pid
            for pid in scan_set
            if ex.eval_meta(node.predicate, stats_by_id[pid]) is TriState.ALWAYS_TRUE
        }
        rt.classifications = {}
        for pid in (p.id for p in parts):
            if pid in rt.pruned["filter"]:
                rt.classifications[pid] = TriState.ALWAYS_FALSE
            elif pid in rt.full_match:
                rt.classifications[pid] = TriState.ALWAYS_TRUE
            else:
                rt.classifications[pid] = TriState.MAYBE
    elif node.predicate is not None:
        rt.full_match = set()  # pruning disabled: no classification work at all
    else:
        rt.full_match = set(scan_set)

    ann = node.limit_ann
    if ann is not None and not cfg.disable_limit:
        if not ann.requires_full_match:
            countable = list(scan_set)
        elif node.covers_filter:
            countable = [pid for pid in scan_set if pid in rt.full_match]
        else:
            countable = []
        new_set, reason = prune_for_limit(scan_set, countable, rows_by_id, ann.effective_k)
        rt.limit_reason = reason
        rt.pruned["limit"] = set(scan_set) - set(new_set)
        scan_set = new_set

    hook = node.topk_hook
    if hook is not None and not cfg.disable_topk:
        entries = []
        for pid in scan_set:
            st = stats_by_id[pid]
            ivl = ex.derive_interval(hook.order_expr, st)
            nulls = 0
            if hook.null_count_column is not None:
                nulls = st[hook.null_count_column].null_count
            entries.append(
                ScanEntry(pid, ivl.lo, ivl.hi, ivl.no_values, rows_by_id[pid], nulls)
            )
        rt.entries = {e.pid: e for e in entries}
        scan_set = order_scan_set(entries, hook.direction, cfg.scan_order, cfg.seed)
        # owner state is absent for LIMIT 0; nothing will be pulled anyway
        owner_state = ctx.topk_states.get(id(hook.owner))
        if hook.allow_init and hook.mode == "row" and owner_state is not None:
            fm = [e for e in entries if e.pid in rt.full_match]
            value = init_boundary(fm, hook.k_eff, hook.direction)
            if value is not None:
                rt.init_boundary = value
                owner_state.set_initial_boundary(value)

    rt.order = scan_set


# ---------------------------------------------------------------------------
# Operator iterators


def _materialize(table: Table, pid: int):
    part = table.partition_by_id(pid)
    names = table.column_names
    cols = [part.columns[n] for n in names]
    return [
        (dict(zip(names, vals)), (pid, i)) for i, vals in enumerate(zip(*cols))
    ]


def _iter_scan(node: PScan, ctx: _ExecContext):
    cfg = ctx.config
    rt = ctx.scan_rt[id(node)]
    hook = node.topk_hook if not cfg.disable_topk else None
    order = rt.order
    prefetch = None
    prefetch_next = [0]
    if cfg.workers > 1:
        pool = ctx.pool()
        prefetch = deque()

    def fetched(idx):
        while len(prefetch) < cfg.workers and prefetch_next[0] < len(order):
            j = prefetch_next[0]
            prefetch.append((j, pool.submit(_materialize, node.table, order[j])))
            prefetch_next[0] += 1
        j, fut = prefetch.popleft()
        assert j == idx
        return fut.result()
    while rt.next_idx < len(order):
        idx = rt.next_idx
        pid = order[idx]
        # decisions happen here, at consume time in scan-set order, so
        # results and stats do not depend on the prefetch window
        if pid in rt.join_pruned:
            rt.next_idx = idx + 1
            if prefetch is not None:
                fetched(idx)
            continue
        if hook is not None:
            b = _hook_boundary(ctx, hook)
            if b is not None:
                e = rt.entries[pid]
                if should_prune(e.lo, e.hi, e.all_null, b, hook.direction):
                    rt.pruned["topk"].add(pid)
                    rt.next_idx = idx + 1
                    if prefetch is not None:
                        fetched(idx)
                    continue
        rows = fetched(idx) if prefetch is not None else _materialize(node.table, pid)
        rt.consumed.add(pid)
        rt.next_idx = idx + 1
        yield from rows


def _iter_filter(node: PFilter, ctx):
    skip = None
    if node.skip_scan is not None:
        skip = ctx.scan_rt[id(node.skip_scan)].full_match
    pred = node.predicate
    for data, uid in _iter_node(node.child, ctx):
        if skip is not None and uid[0] in skip:
            yield data, uid
        elif ex.eval_row(pred, data) is True:
            yield data, uid


def _iter_project(node: PProject, ctx):
    exprs = node.exprs
    names = node.names
    for data, uid in _iter_node(node.child, ctx):
        yield {n: ex.eval_row(e, data) for n, e in zip(names, exprs)}, uid


def _iter_join(node: PHashJoin, ctx: _ExecContext):
    cfg = ctx.config
    build_rows: List[Tuple[dict, tuple]] = []
    matched: List[bool] = []
    index: Dict[object, List[int]] = {}
    for data, uid in _iter_node(node.build, ctx):
        i = len(build_rows)
        build_rows.append((data, uid))
        matched.append(False)
        k = data[node.build_key]
        if k is not None:
            index.setdefault(value_order_key(k), []).append(i)

    if node.probe_scan is not None and not cfg.disable_join:
        keys = [data[node.build_key] for data, _ in build_rows]
        summary = summarize_build(keys, cfg.join_range_budget, cfg.join_exact_threshold)
        rt = ctx.scan_rt[id(node.probe_scan)]
        entries = []
        for pid in rt.order[rt.next_idx:]:
            st = node.probe_scan.table.partition_by_id(pid).stats[node.probe_key]
            entries.append(ProbeEntry(pid, st.min, st.max, st.all_null))
        _, pruned = prune_probe(entries, summary, probe_preserved=False)
        rt.join_pruned = set(pruned)
        rt.pruned["join"] = set(pruned)

    preserved = node.kind is JoinKind.LEFT_OUTER
    for pdata, puid in _iter_node(node.probe, ctx):
        k = pdata[node.probe_key]
        if k is None:
            continue
        hits = index.get(value_order_key(k))
        if not hits:
            continue
        for i in hits:
            bdata, buid = build_rows[i]
            matched[i] = True
            yield {**bdata, **pdata}, puid + buid
    if preserved:
        null_probe = {c: None for c in node.probe_columns}
        for i, (bdata, buid) in enumerate(build_rows):
            if not matched[i]:
                yield {**bdata, **null_probe}, buid + (-1, -1)


def _iter_group(node: PGroupBy, ctx: _ExecContext):
    keys = node.keys
    spec = node.group_topk if not ctx.config.disable_topk else None
    gs = ctx.group_states.get(id(node)) if spec is not None else None
    groups: Dict[tuple, _GroupAcc] = {}
    seq = [0]

    def norm_of(raw):
        return tuple(
            (2, 0.0) if v is None else value_order_key(v) for v in raw
        )

    def make_acc(raw):
        acc = _GroupAcc(raw, [_AggAcc(a) for a in node.aggs], seq[0])
        seq[0] += 1
        return acc

    if not keys:
        # a global aggregate always produces one row, even over nothing
        groups[()] = make_acc(())

    for data, uid in _iter_node(node.child, ctx):
        raw = tuple(data[k] for k in keys)
        norm = norm_of(raw)
        if gs is not None:
            acc = gs.offer(norm, raw, lambda: make_acc(raw))
            if acc is None:
                continue
        else:
            acc = groups.get(norm)
            if acc is None:
                acc = make_acc(raw)
                groups[norm] = acc
        for a in acc.accs:
            a.add(data)

    out = (gs.resident if gs is not None else groups).values()
    for acc in sorted(out, key=lambda a: a.seq):
        data = dict(zip(keys, acc.raw_keys))
        for a in acc.accs:
            data[a.spec.name] = a.final()
        yield data, (acc.seq,)


def _iter_topk(node: PTopK, ctx: _ExecContext):
    if node.limit == 0:
        return
    k_eff = node.limit + node.offset
    state = ctx.topk_states[id(node)]
    nulls_aside: List[Tuple[dict, tuple]] = []
    for data, uid in _iter_node(node.child, ctx):
        v = ex.eval_row(node.order_expr, data)
        if v is None:
            if len(nulls_aside) < k_eff:
                nulls_aside.append((data, uid))
            continue
        state.insert(v, uid, payload=data)
    ranked = [(payload, uid, v) for v, uid, payload in state.results()]
    ranked.extend((data, uid, None) for data, uid in nulls_aside)
    for data, uid, v in ranked[node.offset : node.offset + node.limit]:
        ctx.order_values[uid] = v
        yield data, uid


def _iter_sort(node: PSort, ctx: _ExecContext):
    non_null = []
    nulls = []
    for data, uid in _iter_node(node.child, ctx):
        v = ex.eval_row(node.order_expr, data)
        if v is None:
            nulls.append((data, uid))
        else:
            non_null.append((data, uid, v))
    if node.direction is Direction.DESC:
        non_null.sort(key=lambda r: (_Rev(value_order_key(r[2])), r[1]))
    else:
        non_null.sort(key=lambda r: (value_order_key(r[2]), r[1]))
    nulls.sort(key=lambda r: r[1])
    for data, uid, v in non_null:
        ctx.order_values[uid] = v
        yield data, uid
    for data, uid in nulls:
        ctx.order_values[uid] = None
        yield data, uid


def _iter_limit(node: PLimit, ctx):
    if node.limit == 0:
        return
    seen = 0
    emitted = 0
    for data, uid in _iter_node(node.child, ctx):
        seen += 1
        if seen <= node.offset:
            continue
        yield data, uid
        emitted += 1
        if emitted >= node.limit:
            return


def _iter_node(node, ctx):
    if isinstance(node, PScan):
        return _iter_scan(node, ctx)
    if isinstance(node, PFilter):
        return _iter_filter(node, ctx)
    if isinstance(node, PProject):
        return _iter_project(node, ctx)
    if isinstance(node, PHashJoin):
        return _iter_join(node, ctx)
    if isinstance(node, PGroupBy):
        return _iter_group(node, ctx)
    if isinstance(node, PTopK):
        return _iter_topk(node, ctx)
    if isinstance(node, PSort):
        return _iter_sort(node, ctx)
    if isinstance(node, PLimit):
        return _iter_limit(node, ctx)
    raise QueryError("unknown physical node %r" % (node,))


# ---------------------------------------------------------------------------
# Driver


def _technique_flags(plan: PhysicalPlan, scan_stats: List[ScanStats]):
    eligible = {
        "filter": any(s.predicate is not None for s in plan.scans),
        "limit": any(s.limit_ann is not None for s in plan.scans),
        "join": any(
            isinstance(n, PHashJoin) and n.probe_scan is not None
            for n in plan_nodes(plan.root)
        ),
        "topk": any(s.topk_hook is not None for s in plan.scans),
    }
    return {
        t: {
            "eligible": eligible[t],
            "applied": any(s.pruned_by(t) > 0 for s in scan_stats),
        }
        for t in TECHNIQUES
    }


def execute(plan: PhysicalPlan, config: Optional[EngineConfig] = None) -> ExecResult:
    cfg = config or EngineConfig()
    ctx = _ExecContext(cfg)
    t0 = time.perf_counter()
    for node in plan_nodes(plan.root):
        if isinstance(node, PTopK) and node.limit > 0:
            ctx.topk_states[id(node)] = TopKState(node.limit + node.offset, node.direction)
        elif isinstance(node, PGroupBy) and node.group_topk is not None:
            if not cfg.disable_topk:
                spec = node.group_topk
                ctx.group_states[id(node)] = _GroupTopKState(
                    spec.k_eff, spec.direction, spec.key_index
                )
    for scan in plan.scans:
        _prepare_scan(scan, ctx)

    rows: List[dict] = []
    uids: List[tuple] = []
    try:
        for data, uid in _iter_node(plan.root, ctx):
            rows.append(data)
            uids.append(uid)
    finally:
        ctx.shutdown()

    scan_stats = []
    for scan in plan.scans:
        rt = ctx.scan_rt[id(scan)]
        # pids never reached because an operator above stopped pulling
        # were skipped thanks to the LIMIT; attribute them to it
        for pid in rt.order[rt.next_idx:]:
            if pid not in rt.consumed and not any(pid in s for s in rt.pruned.values()):
                rt.pruned["limit"].add(pid)
        st = ScanStats(
            label=scan.label,
            table_name=scan.table.name,
            partitions_total=len(scan.table.partitions),
            scanned_ids=sorted(rt.consumed),
            pruned_ids={t: sorted(v) for t, v in rt.pruned.items()},
            limit_reason=rt.limit_reason,
            init_boundary=rt.init_boundary,
            classifications=rt.classifications,
        )
        assert st.scanned + st.pruned_total == st.partitions_total, (
            "partition accounting must conserve: %r" % st.to_json()
        )
        scan_stats.append(st)

    stats = QueryStats(
        scans=scan_stats,
        techniques=_technique_flags(plan, scan_stats),
        rows_out=len(rows),
        wall_time_s=time.perf_counter() - t0,
    )
    order_values = None
    if plan.has_order:
        order_values = [ctx.order_values.get(uid) for uid in uids]
    return ExecResult(rows=rows, uids=uids, order_values=order_values, stats=stats)
