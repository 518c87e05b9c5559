"""Command line front end.

Subcommands:
  ingest  parse a CSV into a catalog directory
  query   plan and execute SQL (or a saved plan) against a catalog
  bench   generate a dataset from a spec, run its workload, report
  report  aggregate saved stats documents into a flow report

A catalog is a plain directory holding <table>.csv,
<table>.schema.json and <table>.meta.json per table; tables are
rebuilt from those files on every load, so the partition layout is a
function of the stored rows plus the recorded ingest options.

Exit codes: 0 success, 1 user error (bad arguments, unknown table,
malformed input), 2 internal error (with a traceback on stderr).
"""

import argparse
import csv
import json
import os
import sys
import traceback
from typing import Dict

from . import bench as benchmod
from .errors import QueryError
from .executor import EngineConfig, TECHNIQUES, execute
from .logical import plan_from_json, plan_to_json
from .partition_store import (
    Table,
    build_table,
    ingest_csv,
    load_schema_file,
    schema_to_json,
)
from .planner import bind, explain_plan, plan_physical, plan_query
from .stats_report import flow_report, render_flow_report, validate_stats
from .topk import ScanOrderStrategy

DEFAULT_PARTITION_ROWS = 4096


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; that slot is reserved for
    # internal failures here, so remap to the user-error code.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(1)


def _meta_path(catalog: str, table: str) -> str:
    return os.path.join(catalog, "%s.meta.json" % table)


def _write_catalog_table(catalog, table, schema, rows, partition_rows, sort_columns):
    os.makedirs(catalog, exist_ok=True)
    with open(os.path.join(catalog, "%s.csv" % table), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([n for n, _ in schema])
        for row in rows:
            writer.writerow([benchmod.render_cell(v) for v in row])
    with open(os.path.join(catalog, "%s.schema.json" % table), "w", encoding="utf-8") as fh:
        json.dump(schema_to_json(schema), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(_meta_path(catalog, table), "w", encoding="utf-8") as fh:
        meta = {
            "table": table,
            "partition_rows": partition_rows,
            "sort_columns": sort_columns or [],
        }
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_catalog(path: str) -> Dict[str, Table]:
    if not os.path.isdir(path):
        raise QueryError("catalog directory %s does not exist" % path)
    tables = {}
    for entry in sorted(os.listdir(path)):
        if not entry.endswith(".meta.json"):
            continue
        with open(os.path.join(path, entry), encoding="utf-8") as fh:
            meta = json.load(fh)
        name = meta["table"]
        schema = load_schema_file(os.path.join(path, "%s.schema.json" % name))
        rows = ingest_csv(os.path.join(path, "%s.csv" % name), schema)
        tables[name] = build_table(
            name,
            schema,
            rows,
            meta["partition_rows"],
            sort_columns=meta.get("sort_columns") or None,
        )
    if not tables:
        raise QueryError("catalog %s holds no tables" % path)
    return tables


def _cmd_ingest(args) -> int:
    schema = load_schema_file(args.schema)
    rows = ingest_csv(args.csv, schema)
    sort_columns = args.sort.split(",") if args.sort else None
    # build once up front so bad cells or sort columns fail the ingest
    table = build_table(args.table, schema, rows, args.partition_rows, sort_columns=sort_columns)
    _write_catalog_table(args.catalog, args.table, schema, rows, args.partition_rows, sort_columns)
    print(
        "ingested %s: %d rows, %d partitions" % (args.table, table.num_rows, len(table.partitions))
    )
    return 0


def _engine_config(args) -> EngineConfig:
    cfg = EngineConfig(
        workers=args.workers,
        seed=args.seed,
        scan_order=ScanOrderStrategy(args.strategy),
    )
    if args.disable:
        chosen = set()
        for part in args.disable.split(","):
            part = part.strip()
            if part == "all":
                chosen.update(TECHNIQUES)
            elif part in TECHNIQUES:
                chosen.add(part)
            elif part:
                raise QueryError(
                    "unknown technique %r, expected one of %s or all"
                    % (part, ", ".join(TECHNIQUES))
                )
        cfg.disable_filter = "filter" in chosen
        cfg.disable_limit = "limit" in chosen
        cfg.disable_join = "join" in chosen
        cfg.disable_topk = "topk" in chosen
    return cfg


def _emit_stats(doc: dict, target: str) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if target == "-":
        sys.stderr.write(text + "\n")
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _cmd_query(args) -> int:
    catalog = load_catalog(args.catalog)
    if args.from_plan:
        with open(args.from_plan, encoding="utf-8") as fh:
            lroot = plan_from_json(json.load(fh))
        physical = plan_physical(lroot, catalog)
    else:
        lroot, physical = plan_query(args.sql, catalog)
    if args.plan:
        with open(args.plan, "w", encoding="utf-8") as fh:
            json.dump(plan_to_json(lroot), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.explain:
        print(explain_plan(physical))
        return 0
    result = execute(physical, _engine_config(args))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(physical.output_names)
    for row in result.rows:
        writer.writerow(
            ["NULL" if row[n] is None else benchmod.render_cell(row[n]) for n in physical.output_names]
        )
    if args.stats:
        _emit_stats(result.stats.to_json(), args.stats)
    return 0


def _cmd_bench(args) -> int:
    with open(args.spec, encoding="utf-8") as fh:
        spec = benchmod.spec_from_json(json.load(fh))
    workload = benchmod.make_workload(spec, seed=args.seed)
    specs = [spec]
    for entry in workload:
        if entry["kind"] == "join":
            specs.append(benchmod.dim_spec_for(spec, entry["key"]))
            break
    catalog = {}
    for s in specs:
        benchmod.write_dataset(s, args.out)
        catalog[s.name] = benchmod.build_spec_table(s)
    docs = benchmod.run_workload(catalog, workload, _engine_config(args))
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            for doc in docs:
                fh.write(json.dumps(doc, sort_keys=True) + "\n")
    print(render_flow_report(flow_report([d["stats"] for d in docs])))
    return 0


def _cmd_report(args) -> int:
    docs = []
    with open(args.stats, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            if "stats" in doc and "version" not in doc:
                doc = doc["stats"]
            validate_stats(doc)
            docs.append(doc)
    if not docs:
        raise QueryError("%s holds no stats documents" % args.stats)
    print(render_flow_report(flow_report(docs)))
    return 0


def _build_parser() -> _Parser:
    top = _Parser(prog="skipscan", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[], help="load a CSV into a catalog directory")
    p.add_argument("--catalog", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--schema", required=True, help="JSON schema file for the CSV")
    p.add_argument("--partition-rows", type=int, default=DEFAULT_PARTITION_ROWS)
    p.add_argument("--sort", help="comma separated sort columns applied before chunking")
    p.set_defaults(fn=_cmd_ingest)

    def engine_flags(p):
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--strategy",
            choices=[s.value for s in ScanOrderStrategy],
            default=ScanOrderStrategy.FULL_SORT.value,
            help="top-k scan ordering",
        )
        p.add_argument(
            "--disable",
            help="comma separated pruning techniques to turn off (%s or all)"
            % ", ".join(TECHNIQUES),
        )

    p = sub.add_parser("query", help="run SQL against a catalog")
    p.add_argument("--catalog", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sql")
    group.add_argument("--from-plan", help="execute a saved logical plan JSON file")
    p.add_argument("--plan", help="write the logical plan JSON here")
    p.add_argument("--explain", action="store_true", help="print the physical plan, do not run")
    p.add_argument("--stats", help="write the stats JSON here ('-' for stderr)")
    engine_flags(p)
    p.set_defaults(fn=_cmd_query)

    p = sub.add_parser("bench", help="generate a dataset and run its workload")
    p.add_argument("--spec", required=True, help="generator spec JSON")
    p.add_argument("--out", required=True, help="output directory (dataset + catalog)")
    p.add_argument("--stats", help="write one stats document per line here")
    engine_flags(p)
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("report", help="aggregate stats documents (JSON lines)")
    p.add_argument("--stats", required=True)
    p.set_defaults(fn=_cmd_report)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (QueryError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
