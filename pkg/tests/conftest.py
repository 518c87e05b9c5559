import pytest

from skipscan.partition_store import ColumnType, build_table

# Four partitions of alpine wildlife observations; the classic zone-map
# walkthrough: partition 1 can be skipped outright, partition 3 matches
# in full, partitions 2 and 4 stay undecided until their rows are read.
ALPINE_ROWS = [
    ["Snow Vole", 7],
    ["Brown Bear", 133],
    ["Gray Wolf", 82],
    ["Lynx", 71],
    ["Red Fox", 40],
    ["Alpine Bat", 6],
    ["Alpine Ibex", 101],
    ["Alpine Goat", 76],
    ["Alpine Sheep", 83],
    ["Europ. Mole", 4],
    ["Polecat", 16],
    ["Alpine Ibex", 97],
]

ALPINE_PREDICATE = "species LIKE 'Alpine%' AND sightings >= 50"


def make_alpine_table():
    schema = [("species", ColumnType.UTF8), ("sightings", ColumnType.INT64)]
    return build_table("obs", schema, ALPINE_ROWS, 3)


@pytest.fixture
def alpine_table():
    return make_alpine_table()


@pytest.fixture
def alpine_catalog(alpine_table):
    return {"obs": alpine_table}
