"""Tables as ordered lists of immutable micro-partitions.

A table is horizontally chunked at a fixed row-count boundary; every
chunk carries per-column min/max plus row and null counts. That
metadata is the only thing the pruning layers are allowed to look at,
so this module is deliberately dumb: build, recompute, read.
"""

import csv
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import IngestError, QueryError, TypeCheckError
from .values import compare_values, null_last_key, value_kind

Value = object  # int | float | str | bool | None


class ColumnType(Enum):
    INT64 = "int64"
    FLOAT64 = "float64"
    UTF8 = "utf8"
    BOOL = "bool"

    @classmethod
    def parse(cls, text):
        for t in cls:
            if t.value == text:
                return t
        raise IngestError("unknown column type %r" % (text,))


_KIND_FOR_TYPE = {
    ColumnType.INT64: "int",
    ColumnType.FLOAT64: "float",
    ColumnType.UTF8: "str",
    ColumnType.BOOL: "bool",
}


@dataclass(frozen=True)
class ColumnStats:
    """Zone-map entry for one column of one partition.

    min/max are None only when every value in the chunk is Null; they
    never include Null otherwise.
    """

    min: Optional[Value]
    max: Optional[Value]
    row_count: int
    null_count: int

    @property
    def all_null(self):
        return self.null_count == self.row_count


def compute_stats(column_vector: Sequence[Value]) -> ColumnStats:
    """Min/max over non-null values plus exact counts."""
    if not column_vector:
        raise QueryError("cannot compute stats of an empty vector")
    mn = mx = None
    nulls = 0
    kind = None
    for v in column_vector:
        if v is None:
            nulls += 1
            continue
        k = value_kind(v)
        if kind is None:
            kind = "num" if k in ("int", "float") else k
        elif k not in (("int", "float") if kind == "num" else (kind,)):
            raise TypeCheckError("mixed non-null types in column: %s vs %s" % (kind, k))
        if mn is None:
            mn = mx = v
        else:
            if compare_values(v, mn) < 0:
                mn = v
            if compare_values(v, mx) > 0:
                mx = v
    return ColumnStats(min=mn, max=mx, row_count=len(column_vector), null_count=nulls)


@dataclass(frozen=True)
class MicroPartition:
    id: int
    columns: Dict[str, List[Value]]
    stats: Dict[str, ColumnStats]

    @property
    def num_rows(self):
        return len(next(iter(self.columns.values())))

    def column(self, name):
        return self.columns[name]


@dataclass
class Table:
    name: str
    schema: List[Tuple[str, ColumnType]]
    partitions: List[MicroPartition] = field(default_factory=list)

    @property
    def column_names(self):
        return [n for n, _ in self.schema]

    def column_type(self, name):
        for n, t in self.schema:
            if n == name:
                return t
        raise QueryError("table %s has no column %s" % (self.name, name))

    @property
    def num_rows(self):
        return sum(p.num_rows for p in self.partitions)

    def partition_by_id(self, pid):
        for p in self.partitions:
            if p.id == pid:
                return p
        raise QueryError("table %s has no partition %d" % (self.name, pid))


def _validate_cell(v, ctype, col, rix):
    if v is None:
        return
    expected = _KIND_FOR_TYPE[ctype]
    if value_kind(v) != expected:
        raise QueryError(
            "row %d, column %s: expected %s, got %s" % (rix, col, ctype.value, value_kind(v))
        )


def build_table(name, schema, rows, target_rows_per_partition, sort_columns=None) -> Table:
    """Chunk rows into partitions of the target size and compute stats.

    Partition ids start at 1 and increase in chunk order. When
    sort_columns is given, rows are globally sorted by those columns
    (nulls last) before chunking, which is what gives clustered tables
    their disjoint per-partition ranges.
    """
    if not schema:
        raise QueryError("empty schema")
    if target_rows_per_partition < 1:
        raise QueryError("target_rows_per_partition must be >= 1")
    names = [n for n, _ in schema]
    if len(set(names)) != len(names):
        raise QueryError("duplicate column names in schema")
    for rix, row in enumerate(rows):
        if len(row) != len(schema):
            raise QueryError("row %d has %d cells, schema has %d" % (rix, len(row), len(schema)))
        for (col, ctype), v in zip(schema, row):
            _validate_cell(v, ctype, col, rix)

    rows = list(rows)
    if sort_columns:
        idx = {}
        for c in sort_columns:
            if c not in names:
                raise QueryError("sort column %s not in schema" % c)
            idx[c] = names.index(c)
        rows.sort(key=lambda r: tuple(null_last_key(r[idx[c]]) for c in sort_columns))

    partitions = []
    for start in range(0, len(rows), target_rows_per_partition):
        chunk = rows[start : start + target_rows_per_partition]
        columns = {col: [r[i] for r in chunk] for i, (col, _) in enumerate(schema)}
        stats = {col: compute_stats(vec) for col, vec in columns.items()}
        partitions.append(MicroPartition(id=len(partitions) + 1, columns=columns, stats=stats))
    return Table(name=name, schema=list(schema), partitions=partitions)


def _parse_cell(text, ctype, null_token, line, col):
    if text == null_token:
        return None
    try:
        if ctype is ColumnType.INT64:
            v = int(text)
            return v
        if ctype is ColumnType.FLOAT64:
            return float(text)
        if ctype is ColumnType.BOOL:
            low = text.strip().lower()
            if low in ("true", "1"):
                return True
            if low in ("false", "0"):
                return False
            raise ValueError(text)
        return text
    except ValueError:
        raise IngestError(
            "line %d, column %s: cannot parse %r as %s" % (line, col, text, ctype.value)
        )


def ingest_csv(path, schema, null_token="") -> List[List[Value]]:
    """Read a CSV file (RFC 4180, UTF-8) into typed rows."""
    names = [n for n, _ in schema]
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError("%s: empty file, expected a header row" % path)
        if header != names:
            raise IngestError("%s: header %r does not match schema %r" % (path, header, names))
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(schema):
                raise IngestError(
                    "%s: line %d has %d cells, schema has %d" % (path, lineno, len(raw), len(schema))
                )
            rows.append(
                [
                    _parse_cell(cell, ctype, null_token, lineno, col)
                    for cell, (col, ctype) in zip(raw, schema)
                ]
            )
    return rows


def schema_from_json(doc) -> List[Tuple[str, ColumnType]]:
    """Parse {"columns": [{"name": ..., "type": ...}, ...]}."""
    if not isinstance(doc, dict) or "columns" not in doc:
        raise IngestError("schema document must have a 'columns' list")
    schema = []
    for entry in doc["columns"]:
        try:
            schema.append((entry["name"], ColumnType.parse(entry["type"])))
        except (KeyError, TypeError):
            raise IngestError("bad schema entry: %r" % (entry,))
    if not schema:
        raise IngestError("schema has no columns")
    return schema


def schema_to_json(schema) -> dict:
    return {"columns": [{"name": n, "type": t.value} for n, t in schema]}


def load_schema_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return schema_from_json(json.load(fh))
    except OSError as exc:
        raise IngestError("cannot read schema %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise IngestError("schema %s is not valid JSON: %s" % (path, exc))
