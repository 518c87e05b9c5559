"""Aggregation and validation of per-query pruning statistics.

The executor emits one JSON document per query (see
``QueryStats.to_json``). This module turns a batch of those documents
into a cross-query report: how often each technique was eligible vs
actually fired, how techniques co-occur, and the distribution of
per-scan pruning ratios. It also carries the JSON schema the emitted
documents must satisfy, so external consumers can rely on the shape.
"""

import math
from typing import Dict, List, Optional, Sequence

import jsonschema

from .executor import TECHNIQUES

_ID_ARRAY = {"type": "array", "items": {"type": "integer", "minimum": 1}}

_SCAN_SCHEMA = {
    "type": "object",
    "required": [
        "label",
        "table",
        "partitions_total",
        "scanned",
        "scanned_ids",
        "pruned_ids",
        "ratio",
        "limit_reason",
    ]
    + ["pruned_by_%s" % t for t in TECHNIQUES],
    "properties": {
        "label": {"type": "string"},
        "table": {"type": "string"},
        "partitions_total": {"type": "integer", "minimum": 0},
        "scanned": {"type": "integer", "minimum": 0},
        "scanned_ids": _ID_ARRAY,
        "pruned_ids": {
            "type": "object",
            "required": list(TECHNIQUES),
            "properties": {t: _ID_ARRAY for t in TECHNIQUES},
            "additionalProperties": False,
        },
        "ratio": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "limit_reason": {
            "enum": [
                "applied",
                "minimal_already",
                "insufficient_full_match",
                "unsupported_shape",
                None,
            ]
        },
        "init_boundary": {"type": ["number", "string", "boolean"]},
        **{"pruned_by_%s" % t: {"type": "integer", "minimum": 0} for t in TECHNIQUES},
    },
    "additionalProperties": False,
}

STATS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "rows_out", "wall_time_ms", "scans", "techniques"],
    "properties": {
        "version": {"const": 1},
        "rows_out": {"type": "integer", "minimum": 0},
        "wall_time_ms": {"type": "number", "minimum": 0},
        "scans": {"type": "array", "items": _SCAN_SCHEMA},
        "techniques": {
            "type": "object",
            "required": list(TECHNIQUES),
            "properties": {
                t: {
                    "type": "object",
                    "required": ["eligible", "applied"],
                    "properties": {
                        "eligible": {"type": "boolean"},
                        "applied": {"type": "boolean"},
                    },
                    "additionalProperties": False,
                }
                for t in TECHNIQUES
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def validate_stats(doc: dict) -> None:
    """Raise jsonschema.ValidationError if doc is not a stats document."""
    jsonschema.validate(doc, STATS_SCHEMA)


def check_conservation(doc: dict) -> List[str]:
    """Every partition must be scanned or pruned by exactly one technique.

    Returns a list of violation descriptions, empty when the document
    is internally consistent.
    """
    problems = []
    for scan in doc["scans"]:
        label = scan["label"]
        seen: Dict[int, str] = {}
        for pid in scan["scanned_ids"]:
            if pid in seen:
                problems.append("%s: partition %d appears twice" % (label, pid))
            seen[pid] = "scanned"
        for tech, ids in scan["pruned_ids"].items():
            for pid in ids:
                if pid in seen:
                    problems.append(
                        "%s: partition %d both %s and pruned by %s"
                        % (label, pid, seen[pid], tech)
                    )
                seen[pid] = tech
        if len(seen) != scan["partitions_total"]:
            problems.append(
                "%s: %d partitions accounted for, table has %d"
                % (label, len(seen), scan["partitions_total"])
            )
    return problems


def pruning_ratio(pruned: int, total: int) -> Optional[float]:
    if total == 0:
        return None
    return pruned / total


def percentile(values: Sequence[float], p: float) -> float:
    """Nearest-rank percentile; p in (0, 100]."""
    if not values:
        raise ValueError("percentile of empty sequence")
    if not 0 < p <= 100:
        raise ValueError("p must be in (0, 100]")
    ordered = sorted(values)
    rank = math.ceil(p / 100.0 * len(ordered))
    return ordered[rank - 1]


_PERCENTILES = (25, 50, 75, 90, 99)


def summarize_ratios(ratios: Sequence[float]) -> Optional[dict]:
    vals = [r for r in ratios if r is not None]
    if not vals:
        return None
    return {
        "count": len(vals),
        "mean": sum(vals) / len(vals),
        **{"p%d" % p: percentile(vals, p) for p in _PERCENTILES},
    }


def flow_report(stats_docs: Sequence[dict]) -> dict:
    """Cross-query technique report.

    For each technique: in how many queries it was eligible (the plan
    contained the construct), in how many it actually pruned, and how
    many partitions it removed in total. The co_applied matrix counts
    queries where both techniques fired, diagonal entries count
    queries where the one technique fired.
    """
    eligible = {t: 0 for t in TECHNIQUES}
    applied = {t: 0 for t in TECHNIQUES}
    partitions_pruned = {t: 0 for t in TECHNIQUES}
    co = {a: {b: 0 for b in TECHNIQUES} for a in TECHNIQUES}
    total = 0
    pruned = 0
    ratios = []
    for doc in stats_docs:
        fired = set()
        for t, flags in doc["techniques"].items():
            if flags["eligible"]:
                eligible[t] += 1
            if flags["applied"]:
                applied[t] += 1
                fired.add(t)
        for a in fired:
            for b in fired:
                co[a][b] += 1
        for scan in doc["scans"]:
            total += scan["partitions_total"]
            for t in TECHNIQUES:
                n = scan["pruned_by_%s" % t]
                partitions_pruned[t] += n
                pruned += n
            ratios.append(scan["ratio"])
    return {
        "queries": len(stats_docs),
        "techniques": {
            t: {
                "eligible_queries": eligible[t],
                "applied_queries": applied[t],
                "partitions_pruned": partitions_pruned[t],
            }
            for t in TECHNIQUES
        },
        "co_applied": co,
        "partitions_total": total,
        "partitions_pruned": pruned,
        "aggregate_ratio": pruning_ratio(pruned, total),
        "ratio_percentiles": summarize_ratios(ratios),
    }


def render_flow_report(report: dict) -> str:
    lines = []
    lines.append("queries: %d" % report["queries"])
    lines.append(
        "partitions: %d total, %d pruned (ratio %s)"
        % (
            report["partitions_total"],
            report["partitions_pruned"],
            _fmt_ratio(report["aggregate_ratio"]),
        )
    )
    lines.append("")
    lines.append("%-8s %9s %9s %12s" % ("", "eligible", "applied", "pruned"))
    for t in TECHNIQUES:
        row = report["techniques"][t]
        lines.append(
            "%-8s %9d %9d %12d"
            % (t, row["eligible_queries"], row["applied_queries"], row["partitions_pruned"])
        )
    lines.append("")
    lines.append("co-applied queries (row fired with column):")
    lines.append("%-8s" % "" + "".join("%8s" % t for t in TECHNIQUES))
    for a in TECHNIQUES:
        lines.append("%-8s" % a + "".join("%8d" % report["co_applied"][a][b] for b in TECHNIQUES))
    pct = report["ratio_percentiles"]
    if pct is not None:
        lines.append("")
        lines.append(
            "per-scan pruning ratio: mean %.3f  "
            % pct["mean"]
            + "  ".join("p%d %.3f" % (p, pct["p%d" % p]) for p in _PERCENTILES)
        )
    return "\n".join(lines)


def _fmt_ratio(r) -> str:
    return "n/a" if r is None else "%.3f" % r
