import json

import pytest

from skipscan.errors import IngestError, QueryError
from skipscan.partition_store import (
    ColumnType,
    build_table,
    compute_stats,
    ingest_csv,
    load_schema_file,
    schema_from_json,
    schema_to_json,
)

NAN = float("nan")


def test_compute_stats_basic():
    s = compute_stats([3, 1, None, 7, None])
    assert (s.min, s.max, s.row_count, s.null_count) == (1, 7, 5, 2)


def test_compute_stats_all_null():
    s = compute_stats([None, None])
    assert s.min is None and s.max is None
    assert s.all_null
    assert (s.row_count, s.null_count) == (2, 2)


def test_compute_stats_nan_is_max():
    s = compute_stats([1.0, NAN, -5.0])
    assert s.min == -5.0
    assert s.max != s.max  # NaN


def test_build_table_chunks_in_order():
    schema = [("x", ColumnType.INT64)]
    t = build_table("t", schema, [[i] for i in range(10)], 4)
    assert [p.id for p in t.partitions] == [1, 2, 3]
    assert [p.num_rows for p in t.partitions] == [4, 4, 2]
    assert t.partitions[0].columns["x"] == [0, 1, 2, 3]
    assert t.num_rows == 10


def test_build_table_sorted_nulls_last():
    schema = [("x", ColumnType.INT64)]
    rows = [[3], [None], [1], [2], [None], [0]]
    t = build_table("t", schema, rows, 2, sort_columns=["x"])
    flat = [v for p in t.partitions for v in p.columns["x"]]
    assert flat == [0, 1, 2, 3, None, None]
    assert t.partitions[2].stats["x"].all_null


def test_build_table_rejects_wrong_cell_type():
    schema = [("x", ColumnType.INT64)]
    with pytest.raises(QueryError):
        build_table("t", schema, [["nope"]], 4)


def test_build_table_rejects_bad_partition_size():
    with pytest.raises(QueryError):
        build_table("t", [("x", ColumnType.INT64)], [], 0)


def test_empty_table_has_no_partitions():
    t = build_table("t", [("x", ColumnType.INT64)], [], 5)
    assert t.partitions == []
    assert t.num_rows == 0


def test_ingest_csv_roundtrip(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a,b,c,d\n1,2.5,hi,true\n,,,\n-3,1e3,with;semicolon,false\n")
    schema = [
        ("a", ColumnType.INT64),
        ("b", ColumnType.FLOAT64),
        ("c", ColumnType.UTF8),
        ("d", ColumnType.BOOL),
    ]
    rows = ingest_csv(str(p), schema)
    assert rows == [
        [1, 2.5, "hi", True],
        [None, None, None, None],
        [-3, 1000.0, "with;semicolon", False],
    ]


def test_ingest_csv_header_mismatch(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("x,y\n1,2\n")
    with pytest.raises(IngestError):
        ingest_csv(str(p), [("a", ColumnType.INT64), ("y", ColumnType.INT64)])


def test_ingest_csv_bad_cell(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a\nnope\n")
    with pytest.raises(IngestError) as err:
        ingest_csv(str(p), [("a", ColumnType.INT64)])
    assert "line 2" in str(err.value)


def test_schema_json_roundtrip(tmp_path):
    schema = [("a", ColumnType.INT64), ("b", ColumnType.UTF8)]
    doc = schema_to_json(schema)
    assert schema_from_json(doc) == schema
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    assert load_schema_file(str(f)) == schema


def test_schema_from_json_rejects_garbage():
    with pytest.raises(IngestError):
        schema_from_json({"columns": [{"name": "a", "type": "decimal"}]})
    with pytest.raises(IngestError):
        schema_from_json({})


def test_alpine_partition_stats(alpine_table):
    p1 = alpine_table.partition_by_id(1)
    assert (p1.stats["species"].min, p1.stats["species"].max) == ("Brown Bear", "Snow Vole")
    assert (p1.stats["sightings"].min, p1.stats["sightings"].max) == (7, 133)
    p3 = alpine_table.partition_by_id(3)
    assert (p3.stats["species"].min, p3.stats["species"].max) == ("Alpine Goat", "Alpine Sheep")
    assert (p3.stats["sightings"].min, p3.stats["sightings"].max) == (76, 101)
