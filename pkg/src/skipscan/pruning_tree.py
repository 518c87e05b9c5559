"""Boolean tree of pruner leaves with adaptive reordering and cutoff.

Each scan with a predicate gets a tree of Leaf/And/Or nodes. Leaves
classify partitions through eval_meta; AND short-circuits on the first
AlwaysFalse child, OR on the first AlwaysTrue. Telemetry per node
(evaluations, passes, accumulated abstract cost) drives two periodic
adaptations: children are reordered by measured selectivity and cost,
and pruners that cost more than they save are disabled. Disabling is
legal only for direct children of an AND and never for the root; a
disabled node answers Maybe from then on, which can only grow the scan
set, never shrink it. Cost is abstract and deterministic: one unit plus
the predicate's node count per leaf evaluation.
"""

import time
from dataclasses import dataclass
from typing import Dict, List, Optional

from . import expr as ex
from .expr import TriState, tri_and, tri_or


@dataclass
class TreeConfig:
    warmup: int = 32  # node evaluations before it may be reordered or cut off
    adapt_interval: int = 64  # partitions between adaptation passes
    scan_cost: float = 100.0  # abstract cost of scanning one partition
    adaptive: bool = True
    wall_clock_cost: bool = False  # measure leaf cost in seconds instead of units


@dataclass
class NodeTelemetry:
    eval_count: int = 0
    pass_count: int = 0  # partitions where the node was not AlwaysFalse
    total_eval_cost: float = 0.0

    @property
    def pass_rate(self):
        return self.pass_count / self.eval_count if self.eval_count else 0.0

    @property
    def avg_cost(self):
        return self.total_eval_cost / self.eval_count if self.eval_count else 0.0


@dataclass(eq=False)
class PrunerLeaf:
    predicate: object
    node_id: int = 0
    enabled: bool = True
    cost: float = 0.0


@dataclass(eq=False)
class PrunerAnd:
    children: List[object]
    node_id: int = 0
    enabled: bool = True


@dataclass(eq=False)
class PrunerOr:
    children: List[object]
    node_id: int = 0
    enabled: bool = True


def build_pruning_tree(predicate) -> object:
    """Map a (widened) predicate onto pruner nodes, ids in preorder."""

    def build(e):
        if isinstance(e, ex.And) and len(e.children) >= 2:
            return PrunerAnd([build(c) for c in e.children])
        if isinstance(e, ex.Or) and len(e.children) >= 2:
            return PrunerOr([build(c) for c in e.children])
        return PrunerLeaf(predicate=e, cost=1.0 + ex.count_nodes(e))

    root = build(predicate)
    counter = [0]

    def number(node):
        node.node_id = counter[0]
        counter[0] += 1
        if isinstance(node, (PrunerAnd, PrunerOr)):
            for c in node.children:
                number(c)

    number(root)
    return root


def iter_nodes(node):
    yield node
    if isinstance(node, (PrunerAnd, PrunerOr)):
        for c in node.children:
            yield from iter_nodes(c)


@dataclass
class PruneResult:
    scan_set: List[int]
    full_match_set: List[int]
    telemetry: Dict[int, NodeTelemetry]
    disabled: set
    classifications: Dict[int, TriState]


def _eval_node(node, stats, telemetry, cfg):
    """Classify one partition; returns (tri-state, accumulated cost)."""
    if not node.enabled:
        return TriState.MAYBE, 0.0
    t = telemetry.setdefault(node.node_id, NodeTelemetry())
    if isinstance(node, PrunerLeaf):
        if cfg.wall_clock_cost:
            t0 = time.perf_counter()
            ts = ex.eval_meta(node.predicate, stats)
            cost = time.perf_counter() - t0
        else:
            ts = ex.eval_meta(node.predicate, stats)
            cost = node.cost
    elif isinstance(node, PrunerAnd):
        ts = TriState.ALWAYS_TRUE
        cost = 0.0
        for child in node.children:
            cts, ccost = _eval_node(child, stats, telemetry, cfg)
            cost += ccost
            ts = tri_and(ts, cts)
            if ts is TriState.ALWAYS_FALSE:
                break
    else:
        ts = TriState.ALWAYS_FALSE
        cost = 0.0
        for child in node.children:
            cts, ccost = _eval_node(child, stats, telemetry, cfg)
            cost += ccost
            ts = tri_or(ts, cts)
            if ts is TriState.ALWAYS_TRUE:
                break
    t.eval_count += 1
    if ts is not TriState.ALWAYS_FALSE:
        t.pass_count += 1
    t.total_eval_cost += cost
    return ts, cost


def reorder_children(node, telemetry: Dict[int, NodeTelemetry], cfg: TreeConfig) -> None:
    """Sort children by measured usefulness; under-warmed ones keep their slot.

    AND wants children that fail fast: rank by (1 - pass_rate) / avg_cost
    descending. OR wants children that succeed fast: pass_rate / avg_cost
    descending. Ties break on node_id ascending.
    """
    if not isinstance(node, (PrunerAnd, PrunerOr)):
        return
    eligible_slots = []
    eligible = []
    for i, child in enumerate(node.children):
        t = telemetry.get(child.node_id)
        if t is not None and t.eval_count >= cfg.warmup:
            eligible_slots.append(i)
            eligible.append(child)

    def score(child):
        t = telemetry[child.node_id]
        avg = max(t.avg_cost, 1e-12)
        if isinstance(node, PrunerAnd):
            return (1.0 - t.pass_rate) / avg
        return t.pass_rate / avg

    eligible.sort(key=lambda c: (-score(c), c.node_id))
    for slot, child in zip(eligible_slots, eligible):
        node.children[slot] = child


def cutoff_check(
    telemetry: NodeTelemetry,
    remaining_partitions: int,
    cfg: TreeConfig,
    *,
    is_and_child: bool,
    is_root: bool = False,
) -> str:
    """Decide keep or disable for one node.

    Benefit of keeping the pruner: prune_rate * remaining * scan_cost,
    against remaining * avg_eval_cost to keep running it. Only direct
    children of an AND may be disabled; anything under an OR and the
    root are always kept.
    """
    if is_root or not is_and_child:
        return "keep"
    if telemetry.eval_count < cfg.warmup:
        return "keep"
    prune_rate = 1.0 - telemetry.pass_rate
    benefit = (
        prune_rate * remaining_partitions * cfg.scan_cost
        - remaining_partitions * telemetry.avg_cost
    )
    return "disable" if benefit <= 0 else "keep"


def _adapt(root, telemetry, remaining, cfg):
    for node in iter_nodes(root):
        if isinstance(node, (PrunerAnd, PrunerOr)):
            reorder_children(node, telemetry, cfg)
    for node in iter_nodes(root):
        if isinstance(node, PrunerAnd):
            for child in node.children:
                if not child.enabled:
                    continue
                t = telemetry.get(child.node_id)
                if t is None:
                    continue
                verdict = cutoff_check(
                    t, remaining, cfg, is_and_child=True, is_root=child is root
                )
                if verdict == "disable":
                    child.enabled = False


def prune_scan_set(tree, partitions, config: Optional[TreeConfig] = None) -> PruneResult:
    """Classify every partition and split the scan set.

    scan_set keeps the input order (visit ordering is a separate,
    later concern); full_match_set is the AlwaysTrue subset.
    """
    cfg = config or TreeConfig()
    telemetry: Dict[int, NodeTelemetry] = {}
    scan_set: List[int] = []
    full: List[int] = []
    classes: Dict[int, TriState] = {}
    total = len(partitions)
    for i, part in enumerate(partitions):
        ts, _ = _eval_node(tree, part.stats, telemetry, cfg)
        classes[part.id] = ts
        if ts is not TriState.ALWAYS_FALSE:
            scan_set.append(part.id)
        if ts is TriState.ALWAYS_TRUE:
            full.append(part.id)
        if cfg.adaptive and (i + 1) % cfg.adapt_interval == 0 and i + 1 < total:
            # adapting after the final partition would disable every
            # pruner (zero remaining benefit) without saving anything
            _adapt(tree, telemetry, total - (i + 1), cfg)
    disabled = {n.node_id for n in iter_nodes(tree) if not n.enabled}
    return PruneResult(scan_set, full, telemetry, disabled, classes)
