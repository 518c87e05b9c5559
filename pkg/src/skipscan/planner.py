"""Binding and physical planning.

bind() turns a parsed statement into a logical plan with every name
resolved: * expanded, aggregates extracted into group-by specs (with
hidden columns for aggregates that only appear in ORDER BY), and all
expressions type checked. The canonical shape is

    Project -> [Limit] -> [Sort] -> [GroupBy] -> [Filter] -> Join | Scan

plan_physical() lowers that to executor nodes and decides which
pruning techniques each scan can use:

  * filter: WHERE conjuncts that mention only one scan's columns form
    that scan's pruning tree (widened for pruning; the original runs
    row by row). The probe side of a left outer join is never filter
    pruned, an IS NULL conjunct there could flip null-extended rows.
  * limit: annotations come from pushing each LIMIT down through
    Project, Filter (then only fully matching partitions count), and
    the preserved side of a left outer join.
  * top-k: LIMIT directly above ORDER BY fuses into a heap operator,
    and the scan that supplies the order column gets a boundary hook
    when that is sound for the plan shape.
  * join: the executor prunes the probe scan from the build summary;
    the planner only records which scan that is.
"""

from typing import Dict, List, Mapping, Tuple

from . import expr as ex
from . import parser
from .errors import BindError
from .executor import (
    GroupTopKSpec,
    PFilter,
    PGroupBy,
    PHashJoin,
    PLimit,
    PProject,
    PScan,
    PSort,
    PTopK,
    PhysicalPlan,
    TopKHook,
)
from .limit_planner import limit_pushdown
from .logical import (
    AggSpec,
    JoinKind,
    LFilter,
    LGroupBy,
    LJoin,
    LLimit,
    LProject,
    LScan,
    LSort,
    iter_scans,
)
from .partition_store import ColumnType, Table

_NAME_TO_TYPE = {
    "int64": ColumnType.INT64,
    "float64": ColumnType.FLOAT64,
    "utf8": ColumnType.UTF8,
    "bool": ColumnType.BOOL,
}


# ---------------------------------------------------------------------------
# Binding helpers


def _contains_agg(e) -> bool:
    if isinstance(e, parser.AggCall):
        return True
    if isinstance(e, (ex.Arith, ex.Cmp)):
        return _contains_agg(e.lhs) or _contains_agg(e.rhs)
    if isinstance(e, (ex.And, ex.Or)):
        return any(_contains_agg(c) for c in e.children)
    if isinstance(e, (ex.Not, ex.IsNull)):
        return _contains_agg(e.child)
    if isinstance(e, ex.If):
        return _contains_agg(e.cond) or _contains_agg(e.then) or _contains_agg(e.orelse)
    if isinstance(e, ex.InList):
        return _contains_agg(e.child)
    return False


def _check_columns(e, schema, where="expression"):
    missing = sorted(c for c in ex.columns_of(e) if c not in schema)
    if missing:
        raise BindError("unknown column %s in %s" % (missing[0], where))


def _flatten_and(e) -> List[object]:
    if isinstance(e, ex.And):
        out = []
        for c in e.children:
            out.extend(_flatten_and(c))
        return out
    return [e]


def _conjoin(conjuncts):
    if len(conjuncts) == 1:
        return conjuncts[0]
    return ex.And(tuple(conjuncts))


def _join_compatible(lt: ColumnType, rt: ColumnType) -> bool:
    numeric = (ColumnType.INT64, ColumnType.FLOAT64)
    if lt in numeric and rt in numeric:
        return True
    return lt == rt


class _Binder:
    def __init__(self, catalog: Mapping[str, Table]):
        self.catalog = catalog

    def _table(self, name):
        if name not in self.catalog:
            raise BindError("unknown table %s" % name)
        return self.catalog[name]

    def bind(self, stmt: parser.SelectStmt) -> LProject:
        left = self._table(stmt.table)
        schema = dict(left.schema)
        column_order = list(left.column_names)
        base = LScan(stmt.table)
        if stmt.join is not None:
            kind, rname, akey, bkey = stmt.join
            right = self._table(rname)
            clash = sorted(set(left.column_names) & set(right.column_names))
            if clash:
                raise BindError(
                    "column %s exists in both %s and %s" % (clash[0], stmt.table, rname)
                )
            rschema = dict(right.schema)
            if akey in schema and bkey in rschema:
                lkey, rkey = akey, bkey
            elif bkey in schema and akey in rschema:
                lkey, rkey = bkey, akey
            else:
                raise BindError(
                    "join keys %s and %s must name one column per table" % (akey, bkey)
                )
            if not _join_compatible(schema[lkey], rschema[rkey]):
                raise BindError(
                    "join keys %s and %s have incompatible types" % (lkey, rkey)
                )
            schema.update(rschema)
            column_order.extend(right.column_names)
            base = LJoin(kind, base, LScan(rname), lkey, rkey)

        if stmt.where is not None:
            if _contains_agg(stmt.where):
                raise BindError("aggregates are not allowed in WHERE")
            _check_columns(stmt.where, schema, "WHERE")
            t = ex.expr_type(stmt.where, schema)
            if t not in ("bool", "null"):
                raise BindError("WHERE must be boolean, not %s" % t)
            base = LFilter(base, stmt.where)

        has_agg = any(_contains_agg(it) for it in stmt.select_items)
        if stmt.order_by is not None:
            has_agg = has_agg or _contains_agg(stmt.order_by[0])
        grouped = bool(stmt.group_by) or has_agg

        if stmt.select_star:
            if grouped:
                raise BindError("SELECT * cannot be used with GROUP BY or aggregates")
            names = list(column_order)
            exprs = [ex.ColumnRef(n) for n in names]
        elif grouped:
            names, exprs, base = self._bind_grouped(stmt, base, schema)
        else:
            names, exprs = [], []
            for item in stmt.select_items:
                _check_columns(item, schema, "SELECT")
                ex.expr_type(item, schema)
                exprs.append(item)
                names.append(item.name if isinstance(item, ex.ColumnRef) else ex.render_expr(item))

        dup = _first_duplicate(names)
        if dup is not None:
            raise BindError("duplicate output column %s" % dup)

        node = base
        if stmt.order_by is not None and not grouped:
            oe, direction = stmt.order_by
            _check_columns(oe, schema, "ORDER BY")
            ex.expr_type(oe, schema)
            node = LSort(node, oe, direction)
        if stmt.limit is not None:
            limit, offset = stmt.limit
            node = LLimit(node, limit, offset)
        return LProject(node, exprs, names, star=stmt.select_star)

    def _bind_grouped(self, stmt, base, schema):
        keys = list(stmt.group_by)
        for k in keys:
            if k not in schema:
                raise BindError("unknown GROUP BY column %s" % k)
        if _first_duplicate(keys) is not None:
            raise BindError("duplicate GROUP BY column %s" % _first_duplicate(keys))

        reg: Dict[str, AggSpec] = {}
        names, exprs = [], []
        for item in stmt.select_items:
            bound = self._rewrite_aggs(item, reg, schema)
            if isinstance(item, parser.AggCall):
                name = item.name
            elif isinstance(item, ex.ColumnRef):
                name = item.name
            else:
                name = ex.render_expr(bound)
            bad = sorted(
                c for c in ex.columns_of(bound) if c not in keys and c not in reg
            )
            if bad:
                raise BindError(
                    "column %s must appear in GROUP BY or inside an aggregate" % bad[0]
                )
            names.append(name)
            exprs.append(bound)

        order = None
        if stmt.order_by is not None:
            oe, direction = stmt.order_by
            bound = self._rewrite_aggs(oe, reg, schema)
            bad = sorted(
                c for c in ex.columns_of(bound) if c not in keys and c not in reg
            )
            if bad:
                raise BindError(
                    "ORDER BY column %s must appear in GROUP BY or inside an aggregate"
                    % bad[0]
                )
            order = (bound, direction)

        aggs = list(reg.values())
        post = {k: schema[k] for k in keys}
        for spec in aggs:
            post[spec.name] = _agg_result_type(spec, schema)
        for e in exprs:
            ex.expr_type(e, post)
        node = LGroupBy(base, keys, aggs)
        if order is not None:
            ex.expr_type(order[0], post)
            node = LSort(node, order[0], order[1])
        return names, exprs, node

    def _rewrite_aggs(self, e, reg, schema):
        if isinstance(e, parser.AggCall):
            self._validate_agg(e, schema)
            name = e.name
            if name not in reg:
                reg[name] = AggSpec(e.fn, e.arg, name)
            return ex.ColumnRef(name)
        rw = lambda c: self._rewrite_aggs(c, reg, schema)
        if isinstance(e, ex.Arith):
            return ex.Arith(e.op, rw(e.lhs), rw(e.rhs))
        if isinstance(e, ex.Cmp):
            return ex.Cmp(e.op, rw(e.lhs), rw(e.rhs))
        if isinstance(e, ex.And):
            return ex.And(tuple(rw(c) for c in e.children))
        if isinstance(e, ex.Or):
            return ex.Or(tuple(rw(c) for c in e.children))
        if isinstance(e, ex.Not):
            return ex.Not(rw(e.child))
        if isinstance(e, ex.IsNull):
            return ex.IsNull(rw(e.child))
        if isinstance(e, ex.If):
            return ex.If(rw(e.cond), rw(e.then), rw(e.orelse))
        if isinstance(e, ex.InList):
            return ex.InList(rw(e.child), e.values)
        return e

    def _validate_agg(self, call: parser.AggCall, schema):
        if call.arg is None:
            return
        if _contains_agg(call.arg):
            raise BindError("aggregates cannot nest")
        _check_columns(call.arg, schema, call.name)
        t = ex.expr_type(call.arg, schema)
        if call.fn == "sum" and t not in ("int64", "float64"):
            raise BindError("SUM needs a numeric argument, got %s" % t)
        if call.fn in ("min", "max") and t == "null":
            raise BindError("%s over a null literal" % call.fn.upper())


def _first_duplicate(names):
    seen = set()
    for n in names:
        if n in seen:
            return n
        seen.add(n)
    return None


def _agg_result_type(spec: AggSpec, schema) -> ColumnType:
    if spec.fn == "count":
        return ColumnType.INT64
    t = ex.expr_type(spec.expr, schema)
    if spec.fn == "sum":
        return ColumnType.INT64 if t == "int64" else ColumnType.FLOAT64
    return _NAME_TO_TYPE.get(t, ColumnType.FLOAT64)


def bind(stmt: parser.SelectStmt, catalog: Mapping[str, Table]) -> LProject:
    return _Binder(catalog).bind(stmt)


# ---------------------------------------------------------------------------
# Physical lowering


class _Lowerer:
    def __init__(self, catalog: Mapping[str, Table]):
        self.catalog = catalog
        self.scans: List[PScan] = []
        self.by_lscan: Dict[int, PScan] = {}
        self.pending_group = None  # (PTopK, LGroupBy, order key) to wire later

    def _table(self, name):
        if name not in self.catalog:
            raise BindError("unknown table %s" % name)
        return self.catalog[name]

    def lower(self, node):
        if isinstance(node, LScan):
            table = self._table(node.table)
            label = node.table
            taken = {s.label for s in self.scans}
            n = 2
            while label in taken:
                label = "%s#%d" % (node.table, n)
                n += 1
            p = PScan(table=table, label=label)
            self.scans.append(p)
            self.by_lscan[id(node)] = p
            return p
        if isinstance(node, LFilter):
            child = self.lower(node.child)
            skip = child if isinstance(child, PScan) else None
            return PFilter(child, node.predicate, skip_scan=skip)
        if isinstance(node, LJoin):
            build = self.lower(node.left)
            probe = self.lower(node.right)
            probe_scan = probe if isinstance(probe, PScan) else None
            probe_columns = list(self._table(_scan_table_name(node.right)).column_names) \
                if probe_scan is not None else _columns_under(node.right, self.catalog)
            return PHashJoin(
                kind=node.kind,
                build=build,
                probe=probe,
                build_key=node.left_key,
                probe_key=node.right_key,
                probe_scan=probe_scan,
                probe_columns=probe_columns,
            )
        if isinstance(node, LGroupBy):
            return PGroupBy(self.lower(node.child), list(node.keys), list(node.aggs))
        if isinstance(node, LSort):
            return PSort(self.lower(node.child), node.order_expr, node.direction)
        if isinstance(node, LLimit):
            if isinstance(node.child, LSort):
                sort = node.child
                p = PTopK(
                    self.lower(sort.child),
                    sort.order_expr,
                    sort.direction,
                    node.limit,
                    node.offset,
                )
                self._hook_topk(p, sort.child)
                return p
            return PLimit(self.lower(node.child), node.limit, node.offset)
        if isinstance(node, LProject):
            return PProject(self.lower(node.child), list(node.exprs), list(node.names))
        raise BindError("unknown logical node %r" % (node,))

    def _hook_topk(self, p: PTopK, below):
        """Attach a boundary hook when the plan shape allows one."""
        k_eff = p.limit + p.offset
        if k_eff == 0:
            return
        inner = below
        filtered = False
        while isinstance(inner, LFilter):
            filtered = True
            inner = inner.child
        cols = ex.columns_of(p.order_expr)
        bare = p.order_expr.name if isinstance(p.order_expr, ex.ColumnRef) else None

        if isinstance(inner, LScan):
            scan = self.by_lscan[id(inner)]
            if not cols <= set(scan.table.column_names):
                return
            p.shape = "scan"
            scan.topk_hook = TopKHook(
                owner=p,
                mode="row",
                order_expr=p.order_expr,
                direction=p.direction,
                k_eff=k_eff,
                allow_init=bare is not None,
                null_count_column=bare,
            )
            return
        if isinstance(inner, LJoin):
            left_scan = self.by_lscan.get(id(inner.left))
            right_scan = self.by_lscan.get(id(inner.right))
            if inner.kind is JoinKind.INNER:
                if right_scan is None or not cols <= set(right_scan.table.column_names):
                    return
                p.shape = "join_probe"
                right_scan.topk_hook = TopKHook(
                    owner=p,
                    mode="row",
                    order_expr=p.order_expr,
                    direction=p.direction,
                    k_eff=k_eff,
                    allow_init=False,
                    null_count_column=bare,
                )
                return
            # left outer: the preserved build side replicates its order
            # values onto every output row it produces
            if left_scan is None or not cols <= set(left_scan.table.column_names):
                return
            p.shape = "outer_join_build"
            left_scan.topk_hook = TopKHook(
                owner=p,
                mode="row",
                order_expr=p.order_expr,
                direction=p.direction,
                k_eff=k_eff,
                # sound only when every conjunct of the WHERE lives on
                # this side, otherwise full match does not imply output
                allow_init=bare is not None and not filtered,
                null_count_column=bare,
            )
            return
        if isinstance(inner, LGroupBy) and not filtered:
            if bare is None or bare not in inner.keys:
                return
            p.shape = "aggregation"
            # the lowered PGroupBy does not exist yet; wired in plan_physical
            self.pending_group = (p, inner, bare)


def _scan_table_name(lnode):
    if isinstance(lnode, LScan):
        return lnode.table
    raise BindError("expected a scan node")


def _columns_under(lnode, catalog) -> List[str]:
    out = []
    for s in iter_scans(lnode):
        out.extend(catalog[s.table].column_names)
    return out


def plan_physical(root: LProject, catalog: Mapping[str, Table]) -> PhysicalPlan:
    if not isinstance(root, LProject):
        raise BindError("plan root must be a projection")
    validate_logical(root, catalog)
    low = _Lowerer(catalog)
    proot = low.lower(root)

    # limit annotations carry over from logical scans to physical ones
    for lnode, ann in limit_pushdown(root).items():
        pscan = low.by_lscan.get(lnode)
        if pscan is not None:
            pscan.limit_ann = ann

    # conjunct assignment for filter pruning
    for lf, assignments in _filter_assignments(root, catalog).items():
        for lscan_id, (conjuncts, covers) in assignments.items():
            pscan = low.by_lscan.get(lscan_id)
            if pscan is None or not conjuncts:
                if pscan is not None:
                    pscan.covers_filter = pscan.covers_filter and covers
                continue
            pred = _conjoin(conjuncts)
            if pscan.predicate is None:
                pscan.predicate = pred
            else:
                pscan.predicate = ex.And((pscan.predicate, pred))
            pscan.prune_predicate = ex.widen_rewrite(pscan.predicate)
            pscan.covers_filter = pscan.covers_filter and covers

    # group top-k hook: locate the lowered PGroupBy and wire its scan
    if low.pending_group is not None:
        p, lgroup, key = low.pending_group
        _attach_group_hook(p, lgroup, key, low)

    names = list(root.names)
    has_order = any(isinstance(n, (PSort, PTopK)) for n in _pnodes(proot))
    return PhysicalPlan(root=proot, scans=low.scans, output_names=names, has_order=has_order)


def _pnodes(node):
    yield node
    for attr in ("child", "build", "probe"):
        sub = getattr(node, attr, None)
        if sub is not None:
            yield from _pnodes(sub)


def _attach_group_hook(p: PTopK, lgroup: LGroupBy, key: str, low: _Lowerer):
    pgroup = None
    for n in _pnodes(p):
        if isinstance(n, PGroupBy):
            pgroup = n
            break
    if pgroup is None:
        return
    k_eff = p.limit + p.offset
    pgroup.group_topk = GroupTopKSpec(
        k_eff=k_eff,
        direction=p.direction,
        key=key,
        key_index=lgroup.keys.index(key),
    )
    inner = lgroup.child
    while isinstance(inner, LFilter):
        inner = inner.child
    scan = low.by_lscan.get(id(inner)) if isinstance(inner, LScan) else None
    if scan is not None:
        scan.topk_hook = TopKHook(
            owner=pgroup,
            mode="group",
            order_expr=ex.ColumnRef(key),
            direction=p.direction,
            k_eff=k_eff,
            allow_init=False,
            null_count_column=key,
        )


def validate_logical(root, catalog: Mapping[str, Table]) -> None:
    """Check a logical plan against the catalog; plans can arrive from
    JSON files as well as from bind(), so nothing here is trusted."""

    def schema_of(node) -> Dict[str, ColumnType]:
        if isinstance(node, LScan):
            if node.table not in catalog:
                raise BindError("unknown table %s" % node.table)
            return dict(catalog[node.table].schema)
        if isinstance(node, LJoin):
            ls = schema_of(node.left)
            rs = schema_of(node.right)
            clash = sorted(set(ls) & set(rs))
            if clash:
                raise BindError("column %s exists on both join sides" % clash[0])
            if node.left_key not in ls or node.right_key not in rs:
                raise BindError("join keys must name one column per side")
            if not _join_compatible(ls[node.left_key], rs[node.right_key]):
                raise BindError("join keys have incompatible types")
            ls.update(rs)
            return ls
        if isinstance(node, LFilter):
            s = schema_of(node.child)
            _check_columns(node.predicate, s, "filter")
            if ex.expr_type(node.predicate, s) not in ("bool", "null"):
                raise BindError("filter predicate must be boolean")
            return s
        if isinstance(node, LGroupBy):
            s = schema_of(node.child)
            out = {}
            for k in node.keys:
                if k not in s:
                    raise BindError("unknown GROUP BY column %s" % k)
                out[k] = s[k]
            for spec in node.aggs:
                if spec.fn not in ("count", "sum", "min", "max"):
                    raise BindError("unknown aggregate %s" % spec.fn)
                if spec.expr is not None:
                    _check_columns(spec.expr, s, spec.name)
                    t = ex.expr_type(spec.expr, s)
                    if spec.fn == "sum" and t not in ("int64", "float64"):
                        raise BindError("SUM needs a numeric argument, got %s" % t)
                out[spec.name] = _agg_result_type(spec, s)
            return out
        if isinstance(node, LSort):
            s = schema_of(node.child)
            _check_columns(node.order_expr, s, "ORDER BY")
            ex.expr_type(node.order_expr, s)
            return s
        if isinstance(node, LLimit):
            if node.limit < 0 or node.offset < 0:
                raise BindError("LIMIT and OFFSET must be non-negative")
            return schema_of(node.child)
        if isinstance(node, LProject):
            s = schema_of(node.child)
            if len(node.exprs) != len(node.names):
                raise BindError("projection names and expressions must align")
            dup = _first_duplicate(node.names)
            if dup is not None:
                raise BindError("duplicate output column %s" % dup)
            for e in node.exprs:
                _check_columns(e, s, "SELECT")
                ex.expr_type(e, s)
            return s
        raise BindError("unknown logical node %r" % (node,))

    schema_of(root)


def _filter_assignments(root, catalog):
    """For every filter: id(scan) -> (conjunct list, covers whole filter)."""
    out = {}

    def visit(node):
        if isinstance(node, LFilter):
            out[id(node)] = _assign_filter(node, catalog)
        for attr in ("child", "left", "right"):
            sub = getattr(node, attr, None)
            if sub is not None:
                visit(sub)

    visit(root)
    return out


def _assign_filter(lf: LFilter, catalog):
    conjuncts = _flatten_and(lf.predicate)
    child = lf.child
    assignments = {}
    if isinstance(child, LScan):
        assignments[id(child)] = (conjuncts, True)
        return assignments
    if isinstance(child, LJoin) and isinstance(child.left, LScan) and isinstance(child.right, LScan):
        lcols = set(catalog[child.left.table].column_names) if child.left.table in catalog else set()
        rcols = set(catalog[child.right.table].column_names) if child.right.table in catalog else set()
        left_c, right_c = [], []
        for c in conjuncts:
            cols = ex.columns_of(c)
            if cols and cols <= lcols:
                left_c.append(c)
            elif cols and cols <= rcols:
                right_c.append(c)
        total = len(conjuncts)
        assignments[id(child.left)] = (left_c, len(left_c) == total)
        if child.kind is JoinKind.INNER:
            assignments[id(child.right)] = (right_c, len(right_c) == total)
        else:
            # never filter-prune the null-extendable side of an outer join
            assignments[id(child.right)] = ([], len(right_c) == total and total == 0)
        return assignments
    # non-canonical child shapes execute the filter but get no pruning
    return assignments


# ---------------------------------------------------------------------------
# Front door and explain


def plan_query(sql: str, catalog: Mapping[str, Table]) -> Tuple[LProject, PhysicalPlan]:
    stmt = parser.parse_sql(sql)
    lroot = bind(stmt, catalog)
    return lroot, plan_physical(lroot, catalog)


def explain_plan(plan: PhysicalPlan) -> str:
    lines = []

    def describe_scan(s: PScan):
        bits = ["Scan %s partitions=%d" % (s.label, len(s.table.partitions))]
        if s.predicate is not None:
            bits.append("prune=[%s]" % ex.render_expr(s.prune_predicate))
        if s.limit_ann is not None:
            bits.append(
                "limit_k=%d%s"
                % (
                    s.limit_ann.effective_k,
                    " full_match_only" if s.limit_ann.requires_full_match else "",
                )
            )
        if s.topk_hook is not None:
            h = s.topk_hook
            bits.append(
                "topk=%s %s%s"
                % (
                    ex.render_expr(h.order_expr),
                    h.direction.name,
                    " init" if h.allow_init else "",
                )
            )
        return " ".join(bits)

    def walk(node, depth):
        pad = "  " * depth
        if isinstance(node, PScan):
            lines.append(pad + describe_scan(node))
            return
        if isinstance(node, PFilter):
            lines.append(pad + "Filter %s" % ex.render_expr(node.predicate))
            walk(node.child, depth + 1)
        elif isinstance(node, PProject):
            lines.append(pad + "Project [%s]" % ", ".join(node.names))
            walk(node.child, depth + 1)
        elif isinstance(node, PHashJoin):
            lines.append(
                pad
                + "HashJoin %s build.%s = probe.%s"
                % (node.kind.name, node.build_key, node.probe_key)
            )
            walk(node.build, depth + 1)
            walk(node.probe, depth + 1)
        elif isinstance(node, PGroupBy):
            extra = ""
            if node.group_topk is not None:
                g = node.group_topk
                extra = " topk(%s %s k=%d)" % (g.key, g.direction.name, g.k_eff)
            lines.append(
                pad
                + "GroupBy [%s] aggs=[%s]%s"
                % (", ".join(node.keys), ", ".join(a.name for a in node.aggs), extra)
            )
            walk(node.child, depth + 1)
        elif isinstance(node, PTopK):
            lines.append(
                pad
                + "TopK %s %s limit=%d offset=%d shape=%s"
                % (
                    ex.render_expr(node.order_expr),
                    node.direction.name,
                    node.limit,
                    node.offset,
                    node.shape,
                )
            )
            walk(node.child, depth + 1)
        elif isinstance(node, PSort):
            lines.append(
                pad
                + "Sort %s %s" % (ex.render_expr(node.order_expr), node.direction.name)
            )
            walk(node.child, depth + 1)
        elif isinstance(node, PLimit):
            lines.append(pad + "Limit %d offset=%d" % (node.limit, node.offset))
            walk(node.child, depth + 1)
        else:
            lines.append(pad + repr(node))

    walk(plan.root, 0)
    return "\n".join(lines)
