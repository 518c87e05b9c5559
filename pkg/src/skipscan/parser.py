"""Recursive-descent parser for the SQL subset.

Grammar:

    query      := SELECT select_list FROM ident [join] [WHERE expr]
                  [GROUP BY ident ("," ident)*]
                  [ORDER BY expr [ASC | DESC]]
                  [LIMIT int [OFFSET int]]
    select_list:= "*" | expr ("," expr)*
    join       := [LEFT [OUTER]] JOIN ident ON ident "=" ident
    expr       := or_expr
    or_expr    := and_expr (OR and_expr)*
    and_expr   := not_expr (AND not_expr)*
    not_expr   := NOT not_expr | predicate
    predicate  := additive [cmp additive | IS [NOT] NULL
                  | LIKE string | IN "(" literal ("," literal)* ")"]
    additive   := multiplicative (("+" | "-") multiplicative)*
    multiplicative := unary (("*" | "/") unary)*
    unary      := "-" unary | primary
    primary    := literal | ident | ident "(" args ")" | "(" expr ")"

Functions: IF(cond, a, b), STARTSWITH(col, 'prefix'), and the
aggregates COUNT(*), COUNT(e), SUM(e), MIN(e), MAX(e). Aggregates are
parsed here and validated during binding. Every error carries a
1-based line and column.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import expr as ex
from .errors import ParseError
from .logical import JoinKind
from .topk import Direction
from .values import INT64_MAX, INT64_MIN

KEYWORDS = {
    "select", "from", "where", "group", "by", "order", "limit", "offset",
    "join", "left", "outer", "inner", "on", "and", "or", "not", "in",
    "is", "null", "like", "asc", "desc", "true", "false", "if",
}
AGG_FUNCS = ("count", "sum", "min", "max")
SYMBOLS = ("<=", ">=", "!=", "<>", "<", ">", "=", "+", "-", "*", "/", "(", ")", ",")


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | ident | int | float | string | symbol | end
    text: str
    value: object
    line: int
    column: int


def _tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    line = 1
    line_start = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch.isspace():
            i += 1
            continue
        col = i - line_start + 1
        if ch == "'":
            j = i + 1
            buf = []
            while True:
                if j >= n:
                    raise ParseError("unterminated string literal", line, col)
                if text[j] == "'":
                    if j + 1 < n and text[j + 1] == "'":
                        buf.append("'")
                        j += 2
                        continue
                    break
                buf.append(text[j])
                j += 1
            tokens.append(Token("string", text[i : j + 1], "".join(buf), line, col))
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            is_float = False
            while j < n and (text[j].isdigit() or text[j] in ".eE" or
                             (text[j] in "+-" and j > i and text[j - 1] in "eE")):
                if text[j] in ".eE":
                    is_float = True
                j += 1
            raw = text[i:j]
            try:
                if is_float:
                    tokens.append(Token("float", raw, float(raw), line, col))
                else:
                    v = int(raw)
                    if not (INT64_MIN <= v <= INT64_MAX):
                        raise ParseError("integer literal out of int64 range", line, col)
                    tokens.append(Token("int", raw, v, line, col))
            except ValueError:
                raise ParseError("bad numeric literal %r" % raw, line, col)
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            raw = text[i:j]
            low = raw.lower()
            kind = "keyword" if low in KEYWORDS else "ident"
            tokens.append(Token(kind, raw, low if kind == "keyword" else raw, line, col))
            i = j
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("symbol", sym, sym, line, col))
                i += len(sym)
                break
        else:
            raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(Token("end", "", None, line, (n - line_start) + 1))
    return tokens


@dataclass
class SelectStmt:
    """Raw parsed query; binding happens against a catalog later."""

    select_star: bool
    select_items: List[object]  # scalar exprs, possibly containing _AggCall
    table: str
    join: Optional[Tuple[JoinKind, str, str, str]]  # kind, right table, lkey, rkey
    where: Optional[object]
    group_by: List[str]
    order_by: Optional[Tuple[object, Direction]]
    limit: Optional[Tuple[int, int]]  # (limit, offset)


@dataclass(frozen=True)
class AggCall:
    """Placeholder for an aggregate inside a select/order expression."""

    fn: str
    arg: Optional[object]  # None for count(*)

    @property
    def name(self):
        if self.arg is None:
            return "count(*)"
        return "%s(%s)" % (self.fn, ex.render_expr(self.arg))


class Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    # ------------------------------------------------------------------
    # token helpers

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def accept_keyword(self, word) -> bool:
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == word:
            self.advance()
            return True
        return False

    def expect_keyword(self, word):
        if not self.accept_keyword(word):
            self.error("expected %s" % word.upper())

    def accept_symbol(self, sym) -> bool:
        tok = self.peek()
        if tok.kind == "symbol" and tok.value == sym:
            self.advance()
            return True
        return False

    def expect_symbol(self, sym):
        if not self.accept_symbol(sym):
            self.error("expected %r" % sym)

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.error("expected identifier")
        self.advance()
        return tok.value

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.error("expected integer")
        self.advance()
        return tok.value

    # ------------------------------------------------------------------
    # grammar

    def parse_query(self) -> SelectStmt:
        self.expect_keyword("select")
        star = False
        items: List[object] = []
        if self.accept_symbol("*"):
            star = True
        else:
            items.append(self.parse_expr())
            while self.accept_symbol(","):
                items.append(self.parse_expr())
        self.expect_keyword("from")
        table = self.expect_ident()

        join = None
        if self.accept_keyword("left"):
            self.accept_keyword("outer")
            self.expect_keyword("join")
            join = self._parse_join_tail(JoinKind.LEFT_OUTER)
        elif self.accept_keyword("inner"):
            self.expect_keyword("join")
            join = self._parse_join_tail(JoinKind.INNER)
        elif self.accept_keyword("join"):
            join = self._parse_join_tail(JoinKind.INNER)

        where = None
        if self.accept_keyword("where"):
            where = self.parse_expr()

        group_by: List[str] = []
        if self.accept_keyword("group"):
            self.expect_keyword("by")
            group_by.append(self.expect_ident())
            while self.accept_symbol(","):
                group_by.append(self.expect_ident())

        order_by = None
        if self.accept_keyword("order"):
            self.expect_keyword("by")
            order_expr = self.parse_expr()
            direction = Direction.ASC
            if self.accept_keyword("desc"):
                direction = Direction.DESC
            else:
                self.accept_keyword("asc")
            order_by = (order_expr, direction)

        limit = None
        if self.accept_keyword("limit"):
            k = self.expect_int()
            offset = 0
            if self.accept_keyword("offset"):
                offset = self.expect_int()
            limit = (k, offset)

        tok = self.peek()
        if tok.kind != "end":
            self.error("unexpected trailing input %r" % tok.text, tok)
        return SelectStmt(star, items, table, join, where, group_by, order_by, limit)

    def _parse_join_tail(self, kind):
        right = self.expect_ident()
        self.expect_keyword("on")
        lkey = self.expect_ident()
        self.expect_symbol("=")
        rkey = self.expect_ident()
        return (kind, right, lkey, rkey)

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        children = [self.parse_and()]
        while self.accept_keyword("or"):
            children.append(self.parse_and())
        if len(children) == 1:
            return children[0]
        return ex.Or(tuple(children))

    def parse_and(self):
        children = [self.parse_not()]
        while self.accept_keyword("and"):
            children.append(self.parse_not())
        if len(children) == 1:
            return children[0]
        return ex.And(tuple(children))

    def parse_not(self):
        if self.accept_keyword("not"):
            return ex.Not(self.parse_not())
        return self.parse_predicate()

    def parse_predicate(self):
        lhs = self.parse_additive()
        tok = self.peek()
        if tok.kind == "symbol" and tok.value in ("<", "<=", "=", "!=", "<>", ">=", ">"):
            self.advance()
            op = "!=" if tok.value == "<>" else tok.value
            return ex.Cmp(op, lhs, self.parse_additive())
        if tok.kind == "keyword" and tok.value == "is":
            self.advance()
            negated = self.accept_keyword("not")
            self.expect_keyword("null")
            node = ex.IsNull(lhs)
            return ex.Not(node) if negated else node
        if tok.kind == "keyword" and tok.value == "like":
            self.advance()
            if not isinstance(lhs, ex.ColumnRef):
                self.error("LIKE requires a column on the left", tok)
            pat = self.peek()
            if pat.kind != "string":
                self.error("LIKE requires a string pattern")
            self.advance()
            return ex.Like(lhs.name, pat.value)
        if tok.kind == "keyword" and tok.value == "in":
            self.advance()
            self.expect_symbol("(")
            values = [self._parse_literal_value()]
            while self.accept_symbol(","):
                values.append(self._parse_literal_value())
            self.expect_symbol(")")
            return ex.InList(lhs, tuple(values))
        return lhs

    def _parse_literal_value(self):
        tok = self.peek()
        if tok.kind == "symbol" and tok.value == "-":
            self.advance()
            num = self.peek()
            if num.kind not in ("int", "float"):
                self.error("expected a number after '-'")
            self.advance()
            return -num.value
        if tok.kind in ("int", "float", "string"):
            self.advance()
            return tok.value
        if tok.kind == "keyword" and tok.value in ("true", "false"):
            self.advance()
            return tok.value == "true"
        self.error("expected a literal")

    def parse_additive(self):
        node = self.parse_multiplicative()
        while True:
            tok = self.peek()
            if tok.kind == "symbol" and tok.value in ("+", "-"):
                self.advance()
                node = ex.Arith(tok.value, node, self.parse_multiplicative())
            else:
                return node

    def parse_multiplicative(self):
        node = self.parse_unary()
        while True:
            tok = self.peek()
            if tok.kind == "symbol" and tok.value in ("*", "/"):
                self.advance()
                node = ex.Arith(tok.value, node, self.parse_unary())
            else:
                return node

    def parse_unary(self):
        tok = self.peek()
        if tok.kind == "symbol" and tok.value == "-":
            self.advance()
            inner = self.parse_unary()
            if isinstance(inner, ex.Literal) and isinstance(inner.value, (int, float)):
                return ex.Literal(-inner.value)
            return ex.Arith("-", ex.Literal(0), inner)
        return self.parse_primary()

    def parse_primary(self):
        tok = self.peek()
        if tok.kind in ("int", "float", "string"):
            self.advance()
            return ex.Literal(tok.value)
        if tok.kind == "keyword":
            if tok.value == "true":
                self.advance()
                return ex.Literal(True)
            if tok.value == "false":
                self.advance()
                return ex.Literal(False)
            if tok.value == "null":
                self.advance()
                return ex.Literal(None)
            if tok.value == "if":
                self.advance()
                self.expect_symbol("(")
                cond = self.parse_expr()
                self.expect_symbol(",")
                then = self.parse_expr()
                self.expect_symbol(",")
                orelse = self.parse_expr()
                self.expect_symbol(")")
                return ex.If(cond, then, orelse)
            self.error("unexpected keyword %s" % tok.text.upper())
        if tok.kind == "symbol" and tok.value == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_symbol(")")
            return node
        if tok.kind == "ident":
            name = tok.value
            self.advance()
            if not self.accept_symbol("("):
                return ex.ColumnRef(name)
            low = name.lower()
            if low == "startswith":
                col = self.peek()
                if col.kind != "ident":
                    self.error("STARTSWITH requires a column")
                self.advance()
                self.expect_symbol(",")
                pref = self.peek()
                if pref.kind != "string":
                    self.error("STARTSWITH requires a string prefix")
                self.advance()
                self.expect_symbol(")")
                return ex.StartsWith(col.value, pref.value)
            if low in AGG_FUNCS:
                if low == "count" and self.accept_symbol("*"):
                    self.expect_symbol(")")
                    return AggCall("count", None)
                arg = self.parse_expr()
                self.expect_symbol(")")
                return AggCall(low, arg)
            self.error("unknown function %s" % name, tok)
        self.error("unexpected token %r" % (tok.text or "end of input"))


def parse_sql(text: str) -> SelectStmt:
    """Parse SQL text into a raw select statement."""
    return Parser(text).parse_query()
