"""Synthetic dataset and workload generation.

Datasets are described by a JSON spec (name, row count, partition
size, seed, column distributions) and rendered to CSV plus schema and
meta sidecars. Everything downstream of the seed is deterministic:
the same spec produces byte-identical files, which keeps benchmark
runs comparable across machines.

The clustering knob controls how well partition ranges separate on
one chosen column: rows are fully sorted by it, then
``int((1 - clustering) * rows)`` random transpositions are applied.
At 1.0 the table is perfectly clustered and a narrow range predicate
touches few partitions; at 0.0 value ranges smear across all of them.

Workloads are small SQL batches covering the four pruning techniques
at controlled selectivities, derived from the same spec so the
predicates actually line up with the data domains.
"""

import csv
import json
import os
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .executor import EngineConfig, execute
from .partition_store import ColumnType, Table, build_table, schema_to_json
from .planner import plan_query

DIST_KINDS = ("uniform_int", "uniform_float", "choice", "string_pool", "sequential")


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    dist: dict
    null_rate: float = 0.0


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    rows: int
    partition_rows: int
    seed: int
    columns: Tuple[ColumnSpec, ...]
    clustering: float = 0.0
    cluster_column: Optional[str] = None


def spec_from_json(doc: dict) -> GeneratorSpec:
    try:
        cols = tuple(
            ColumnSpec(
                name=c["name"],
                dist=dict(c["dist"]),
                null_rate=float(c.get("null_rate", 0.0)),
            )
            for c in doc["columns"]
        )
        spec = GeneratorSpec(
            name=doc["name"],
            rows=int(doc["rows"]),
            partition_rows=int(doc["partition_rows"]),
            seed=int(doc["seed"]),
            columns=cols,
            clustering=float(doc.get("clustering", 0.0)),
            cluster_column=doc.get("cluster_column"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("bad generator spec: %s" % exc)
    _validate_spec(spec)
    return spec


def spec_to_json(spec: GeneratorSpec) -> dict:
    return {
        "name": spec.name,
        "rows": spec.rows,
        "partition_rows": spec.partition_rows,
        "seed": spec.seed,
        "clustering": spec.clustering,
        "cluster_column": spec.cluster_column,
        "columns": [
            {"name": c.name, "dist": dict(c.dist), "null_rate": c.null_rate}
            for c in spec.columns
        ],
    }


def _validate_spec(spec: GeneratorSpec) -> None:
    if not spec.name:
        raise ValueError("spec needs a table name")
    if spec.rows < 0:
        raise ValueError("rows must be >= 0")
    if spec.partition_rows < 1:
        raise ValueError("partition_rows must be >= 1")
    if not spec.columns:
        raise ValueError("spec needs at least one column")
    names = [c.name for c in spec.columns]
    if len(set(names)) != len(names):
        raise ValueError("duplicate column names in spec")
    for c in spec.columns:
        kind = c.dist.get("kind")
        if kind not in DIST_KINDS:
            raise ValueError("column %s: unknown dist kind %r" % (c.name, kind))
        if not 0.0 <= c.null_rate <= 1.0:
            raise ValueError("column %s: null_rate out of [0, 1]" % c.name)
        _column_type(c.dist)  # validates dist parameters
    if not 0.0 <= spec.clustering <= 1.0:
        raise ValueError("clustering out of [0, 1]")
    if spec.cluster_column is not None and spec.cluster_column not in names:
        raise ValueError("cluster_column %s not in columns" % spec.cluster_column)


def _choice_type(values) -> ColumnType:
    if not values:
        raise ValueError("choice dist needs values")
    kinds = set()
    for v in values:
        if isinstance(v, bool):
            kinds.add("bool")
        elif isinstance(v, int):
            kinds.add("int")
        elif isinstance(v, float):
            kinds.add("float")
        elif isinstance(v, str):
            kinds.add("str")
        else:
            raise ValueError("choice value %r is not a scalar" % (v,))
    if kinds == {"int"}:
        return ColumnType.INT64
    if kinds <= {"int", "float"}:
        return ColumnType.FLOAT64
    if kinds == {"str"}:
        return ColumnType.UTF8
    if kinds == {"bool"}:
        return ColumnType.BOOL
    raise ValueError("choice values mix incompatible types")


def _column_type(dist: dict) -> ColumnType:
    kind = dist["kind"]
    if kind in ("uniform_int", "sequential"):
        return ColumnType.INT64
    if kind == "uniform_float":
        return ColumnType.FLOAT64
    if kind == "string_pool":
        return ColumnType.UTF8
    return _choice_type(dist["values"])


def _make_drawer(dist: dict, rng: random.Random):
    kind = dist["kind"]
    if kind == "uniform_int":
        lo, hi = int(dist["lo"]), int(dist["hi"])
        return lambda i: rng.randint(lo, hi)
    if kind == "uniform_float":
        lo, hi = float(dist["lo"]), float(dist["hi"])
        return lambda i: rng.uniform(lo, hi)
    if kind == "sequential":
        start = int(dist.get("start", 0))
        step = int(dist.get("step", 1))
        return lambda i: start + step * i
    if kind == "string_pool":
        prefix = dist.get("prefix", "v_")
        size = int(dist["size"])
        if size < 1:
            raise ValueError("string_pool size must be >= 1")
        pool = ["%s%04d" % (prefix, k) for k in range(size)]
        return lambda i: rng.choice(pool)
    values = list(dist["values"])
    as_float = _choice_type(values) is ColumnType.FLOAT64
    weights = dist.get("weights")
    if weights is not None and len(weights) != len(values):
        raise ValueError("weights and values differ in length")

    def draw(i):
        if weights is None:
            v = rng.choice(values)
        else:
            v = rng.choices(values, weights=weights, k=1)[0]
        return float(v) if as_float and isinstance(v, int) else v

    return draw


def spec_schema(spec: GeneratorSpec) -> List[Tuple[str, ColumnType]]:
    return [(c.name, _column_type(c.dist)) for c in spec.columns]


def generate_rows(spec: GeneratorSpec) -> List[List[object]]:
    """Deterministic row list for a spec, clustering already applied."""
    rng = random.Random(spec.seed)
    drawers = [_make_drawer(c.dist, rng) for c in spec.columns]
    rows = []
    for i in range(spec.rows):
        row = []
        for c, draw in zip(spec.columns, drawers):
            if c.null_rate > 0.0 and rng.random() < c.null_rate:
                row.append(None)
            else:
                row.append(draw(i))
        rows.append(row)
    if spec.cluster_column is not None and rows:
        ci = [c.name for c in spec.columns].index(spec.cluster_column)
        from .values import null_last_key

        rows.sort(key=lambda r: null_last_key(r[ci]))
        n = len(rows)
        for _ in range(int((1.0 - spec.clustering) * n)):
            a = rng.randrange(n)
            b = rng.randrange(n)
            rows[a], rows[b] = rows[b], rows[a]
    return rows


def build_spec_table(spec: GeneratorSpec) -> Table:
    return build_table(spec.name, spec_schema(spec), generate_rows(spec), spec.partition_rows)


def render_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_dataset(spec: GeneratorSpec, outdir: str) -> Dict[str, str]:
    """Write <name>.csv, <name>.schema.json and <name>.meta.json.

    Output bytes are a pure function of the spec.
    """
    os.makedirs(outdir, exist_ok=True)
    schema = spec_schema(spec)
    rows = generate_rows(spec)
    paths = {
        "csv": os.path.join(outdir, "%s.csv" % spec.name),
        "schema": os.path.join(outdir, "%s.schema.json" % spec.name),
        "meta": os.path.join(outdir, "%s.meta.json" % spec.name),
    }
    with open(paths["csv"], "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([n for n, _ in schema])
        for row in rows:
            writer.writerow([render_cell(v) for v in row])
    with open(paths["schema"], "w", encoding="utf-8") as fh:
        json.dump(schema_to_json(schema), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(paths["meta"], "w", encoding="utf-8") as fh:
        meta = {
            "table": spec.name,
            "partition_rows": spec.partition_rows,
            "sort_columns": [],
            "rows": spec.rows,
            "generator": spec_to_json(spec),
        }
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths


# ---------------------------------------------------------------------------
# Workloads


def _numeric_ranges(spec: GeneratorSpec) -> List[Tuple[str, float, float, bool]]:
    """(column, lo, hi, is_int) for columns with a known numeric domain."""
    out = []
    for c in spec.columns:
        kind = c.dist["kind"]
        if kind == "uniform_int":
            out.append((c.name, float(c.dist["lo"]), float(c.dist["hi"]), True))
        elif kind == "uniform_float":
            out.append((c.name, float(c.dist["lo"]), float(c.dist["hi"]), False))
        elif kind == "sequential":
            start = int(c.dist.get("start", 0))
            step = int(c.dist.get("step", 1))
            end = start + step * max(spec.rows - 1, 0)
            out.append((c.name, float(min(start, end)), float(max(start, end)), True))
    return out


def _range_predicate(rng, col, lo, hi, is_int, selectivity) -> str:
    span = hi - lo
    width = span * selectivity
    a = lo + rng.random() * max(span - width, 0.0)
    b = a + width
    if is_int:
        return "%s >= %d AND %s <= %d" % (col, round(a), col, round(b))
    return "%s >= %r AND %s <= %r" % (col, a, col, b)


def dim_spec_for(spec: GeneratorSpec, key_column: str, rows: int = 64) -> GeneratorSpec:
    """A small build-side table whose key overlaps part of the fact domain.

    The key keeps the fact column's name prefixed with ``dim_`` so the
    joined schemas never collide.
    """
    fact = next(c for c in spec.columns if c.name == key_column)
    kind = fact.dist["kind"]
    if kind in ("uniform_int", "sequential"):
        if kind == "sequential":
            start = int(fact.dist.get("start", 0))
            step = int(fact.dist.get("step", 1))
            lo, hi = start, start + step * max(spec.rows - 1, 0)
        else:
            lo, hi = int(fact.dist["lo"]), int(fact.dist["hi"])
        mid = (lo + hi) // 2
        key_dist = {"kind": "uniform_int", "lo": lo, "hi": max(lo, mid)}
    elif kind == "string_pool":
        key_dist = {
            "kind": "string_pool",
            "prefix": fact.dist.get("prefix", "v_"),
            "size": max(1, int(fact.dist["size"]) // 4),
        }
    else:
        raise ValueError("cannot derive a dimension key from dist %r" % kind)
    return GeneratorSpec(
        name="%s_dim" % spec.name,
        rows=rows,
        partition_rows=max(1, rows // 2),
        seed=spec.seed + 1,
        columns=(
            ColumnSpec(name="dim_%s" % key_column, dist=key_dist),
            ColumnSpec(name="dim_tag", dist={"kind": "string_pool", "prefix": "tag_", "size": 8}),
        ),
    )


def make_workload(
    spec: GeneratorSpec,
    seed: int = 0,
    selectivities: Tuple[float, ...] = (0.01, 0.1, 0.5),
    limits: Tuple[int, ...] = (1, 10),
    k_values: Tuple[int, ...] = (5, 20),
) -> List[dict]:
    """SQL batch exercising filter, limit, top-k and join pruning.

    Join entries reference the table from ``dim_spec_for``; callers
    that skip the dimension table should drop the join entries.
    """
    rng = random.Random(seed)
    ranges = _numeric_ranges(spec)
    if not ranges:
        raise ValueError("workload needs at least one numeric column")
    # range predicates go on the cluster column when it has a known
    # domain; selectivity only maps to partition skips on that column
    clustered = [r for r in ranges if r[0] == spec.cluster_column]
    filter_ranges = clustered or ranges
    queries = []
    for s in selectivities:
        col, lo, hi, is_int = filter_ranges[rng.randrange(len(filter_ranges))]
        pred = _range_predicate(rng, col, lo, hi, is_int, s)
        queries.append(
            {
                "kind": "filter",
                "selectivity": s,
                "sql": "SELECT * FROM %s WHERE %s" % (spec.name, pred),
            }
        )
    for k in limits:
        queries.append({"kind": "limit", "sql": "SELECT * FROM %s LIMIT %d" % (spec.name, k)})
        col, lo, hi, is_int = filter_ranges[rng.randrange(len(filter_ranges))]
        pred = _range_predicate(rng, col, lo, hi, is_int, 0.5)
        queries.append(
            {
                "kind": "limit",
                "sql": "SELECT * FROM %s WHERE %s LIMIT %d" % (spec.name, pred, k),
            }
        )
    for k in k_values:
        col, _, _, _ = ranges[rng.randrange(len(ranges))]
        for direction in ("DESC", "ASC"):
            queries.append(
                {
                    "kind": "topk",
                    "sql": "SELECT * FROM %s ORDER BY %s %s LIMIT %d"
                    % (spec.name, col, direction, k),
                }
            )
    int_keys = [c for c, _, _, is_int in ranges if is_int]
    if int_keys:
        key = spec.cluster_column if spec.cluster_column in int_keys else int_keys[0]
        dim = dim_spec_for(spec, key)
        # the narrow table goes first: the left side is the build side,
        # and its key summary is what prunes the wide scan
        queries.append(
            {
                "kind": "join",
                "dim": dim.name,
                "key": key,
                "sql": "SELECT * FROM %s JOIN %s ON dim_%s = %s"
                % (dim.name, spec.name, key, key),
            }
        )
    return queries


def run_workload(
    catalog: Dict[str, Table],
    workload: List[dict],
    config: Optional[EngineConfig] = None,
) -> List[dict]:
    """Execute a workload and collect one stats document per query."""
    out = []
    for entry in workload:
        _, physical = plan_query(entry["sql"], catalog)
        result = execute(physical, config)
        doc = dict(entry)
        doc["stats"] = result.stats.to_json()
        out.append(doc)
    return out
