"""Error types shared across the engine.

Everything that stems from user input (bad SQL, bad data, bad schema,
overflow during aggregation) derives from QueryError so the CLI can map
it to a single exit code. Anything else escaping the engine is a bug.
"""


class QueryError(Exception):
    """Base class for user-facing errors."""


class TypeCheckError(QueryError):
    """Expression is ill-typed for the schema it runs against."""


class ParseError(QueryError):
    """SQL text could not be parsed; carries a 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


class BindError(QueryError):
    """Unknown table/column, ambiguous name, or unsupported query shape."""


class IngestError(QueryError):
    """CSV or schema input could not be read."""


class OverflowQueryError(QueryError):
    """Int64 aggregation left the representable range."""
