"""Analytical mini engine over min/max annotated micro partitions.

Tables are stored as row chunks with per-column zone maps; the planner
turns a SQL subset into a physical plan whose scans know how to skip
chunks via four techniques (filter, LIMIT, top-k heap boundaries and
join build summaries). A full-scan interpreter doubles as the oracle
that pruning never changes query results.
"""

from .errors import (
    BindError,
    IngestError,
    OverflowQueryError,
    ParseError,
    QueryError,
    TypeCheckError,
)
from .executor import EngineConfig, ExecResult, execute
from .logical import plan_from_json, plan_to_json
from .naive import naive_execute, oracle_check
from .parser import parse_sql
from .partition_store import ColumnType, MicroPartition, Table, build_table, ingest_csv
from .planner import bind, explain_plan, plan_physical, plan_query, validate_logical
from .stats_report import STATS_SCHEMA, flow_report, validate_stats
from .topk import Direction, ScanOrderStrategy

__version__ = "0.1.0"

__all__ = [
    "BindError",
    "ColumnType",
    "Direction",
    "EngineConfig",
    "ExecResult",
    "IngestError",
    "MicroPartition",
    "OverflowQueryError",
    "ParseError",
    "QueryError",
    "STATS_SCHEMA",
    "ScanOrderStrategy",
    "Table",
    "TypeCheckError",
    "__version__",
    "bind",
    "build_table",
    "execute",
    "explain_plan",
    "flow_report",
    "ingest_csv",
    "naive_execute",
    "oracle_check",
    "parse_sql",
    "plan_from_json",
    "plan_physical",
    "plan_query",
    "plan_to_json",
    "validate_logical",
    "validate_stats",
]
