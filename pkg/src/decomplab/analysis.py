"""Dataflow analysis and task annotations over a program's main function.

All analyses here look at main only: helper functions are opaque, and a call
contributes the variables in its arguments as uses.  Definition sites are
statement ids plus one pseudo-site per main parameter.

The dependence graph keeps only forward edges (smaller statement id to
larger); loop-carried flows are intentionally dropped, since the downstream
structure measures care about the textual ordering of work, not about
iteration-to-iteration cycles.
"""

from dataclasses import dataclass, field

from . import lang
from .lang import (
    Assign, Call, ForRange, If, Index, IndexAssign, Len, ListLit, Print,
    Return, Unary, While, Binary, Var,
    all_stmts, stmt_blocks, stmt_exprs,
)


# ---------------------------------------------------------------------------
# def/use sets

def expr_vars(e):
    """All variable names read by an expression."""
    out = set()

    def go(x):
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, Binary):
            go(x.lhs)
            go(x.rhs)
        elif isinstance(x, Unary):
            go(x.operand)
        elif isinstance(x, Index):
            go(x.base)
            go(x.index)
        elif isinstance(x, Len):
            go(x.arg)
        elif isinstance(x, Call):
            for a in x.args:
                go(a)
        elif isinstance(x, ListLit):
            for el in x.elements:
                go(el)

    go(e)
    return out


def stmt_defs(s):
    """Variables written by the statement itself (headers define loop vars)."""
    if isinstance(s, (Assign, IndexAssign)):
        return {s.target}
    if isinstance(s, ForRange):
        return {s.var}
    return set()


def stmt_uses(s):
    """Variables read by the statement itself (compound bodies excluded)."""
    uses = set()
    for e in stmt_exprs(s):
        uses |= expr_vars(e)
    if isinstance(s, IndexAssign):
        uses.add(s.target)  # the untouched elements survive the write
    return uses


def main_stmts(program):
    """main's statements in pre-order (ascending sid)."""
    return list(all_stmts(program.main.body))


def owner_map(program):
    """sid -> sid of the enclosing compound statement in main (None if top-level)."""
    owners = {}

    def go(stmts, owner):
        for s in stmts:
            owners[s.sid] = owner
            for b in stmt_blocks(s):
                go(b, s.sid)

    go(program.main.body, None)
    return owners


def unbound_uses(program):
    """Textual-order check: uses of variables with no parameter or earlier def.

    A use of v at statement s is flagged unless v is a main parameter or some
    statement with a smaller id defines v.  Loop variables count as defined at
    their header, so uses inside the body are fine while uses in the bounds of
    the same header are not.
    """
    params = {p.name for p in program.main.params}
    stmts = main_stmts(program)
    first_def = {}
    for s in stmts:
        for v in stmt_defs(s):
            first_def.setdefault(v, s.sid)
    problems = []
    for s in stmts:
        for v in sorted(stmt_uses(s)):
            if v in params:
                continue
            if v not in first_def or first_def[v] >= s.sid:
                problems.append((s.sid, v))
    return problems


# ---------------------------------------------------------------------------
# control flow and reaching definitions

EXIT = -2  # virtual exit node


def build_cfg(program):
    """Successor map over main's statement ids; returns (entry, succs)."""
    succs = {s.sid: [] for s in main_stmts(program)}

    def link(stmts, follow):
        """Wire a block whose fallthrough target is `follow`; returns its entry."""
        entry = follow
        for s in reversed(stmts):
            nxt = entry
            if isinstance(s, Return):
                succs[s.sid] = [EXIT]
            elif isinstance(s, If):
                then_e = link(s.then, nxt)
                else_e = link(s.orelse, nxt)
                succs[s.sid] = sorted({then_e, else_e}, key=lambda x: (x == EXIT, x))
            elif isinstance(s, (While, ForRange)):
                body_e = link(s.body, s.sid)  # back edge to the header
                succs[s.sid] = sorted({body_e, nxt}, key=lambda x: (x == EXIT, x))
            else:
                succs[s.sid] = [nxt]
            entry = s.sid
        return entry

    entry = link(program.main.body, EXIT)
    return entry, succs


def param_site(name):
    return f"param:{name}"


def reaching_definitions(program):
    """Statement-level may reaching-defs: sid -> set of definition sites.

    A site is either the sid of a defining statement or "param:<name>" for a
    main parameter.  The returned set for sid s is IN[s]: definitions that may
    reach the start of s along some path from entry.  Statements that no
    control-flow path reaches keep empty sets.
    """
    stmts = main_stmts(program)
    by_sid = {s.sid: s for s in stmts}
    entry, succs = build_cfg(program)

    site_var = {s.sid: next(iter(stmt_defs(s))) for s in stmts if stmt_defs(s)}
    param_sites = {param_site(p.name): p.name for p in program.main.params}

    preds = {s.sid: set() for s in stmts}
    for sid, outs in succs.items():
        for t in outs:
            if t != EXIT:
                preds[t].add(sid)

    ins = {s.sid: set() for s in stmts}
    outs = {s.sid: set() for s in stmts}
    if entry != EXIT:
        ins[entry] = set(param_sites)

    reachable = set()
    frontier = [entry] if entry != EXIT else []
    while frontier:
        sid = frontier.pop()
        if sid in reachable:
            continue
        reachable.add(sid)
        frontier.extend(t for t in succs[sid] if t != EXIT)

    work = [s.sid for s in stmts if s.sid in reachable]
    in_work = set(work)
    while work:
        sid = work.pop(0)
        in_work.discard(sid)
        s = by_sid[sid]
        new_in = set(param_sites) if sid == entry else set()
        for p in preds[sid]:
            new_in |= outs[p]
        defined = stmt_defs(s)
        if defined:
            v = next(iter(defined))
            new_out = {d for d in new_in
                       if (site_var.get(d) or param_sites.get(d)) != v}
            new_out.add(sid)
        else:
            new_out = set(new_in)
        if new_in != ins[sid] or new_out != outs[sid]:
            ins[sid] = new_in
            outs[sid] = new_out
            for t in succs[sid]:
                if t != EXIT and t not in in_work:
                    work.append(t)
                    in_work.add(t)
    return ins


def site_variable(program, site):
    """The variable a definition site writes."""
    if isinstance(site, str):
        return site.split(":", 1)[1]
    for s in main_stmts(program):
        if s.sid == site:
            d = stmt_defs(s)
            return next(iter(d)) if d else None
    return None


# ---------------------------------------------------------------------------
# dependence graph

FLOW = "flow"
ANTI = "anti"
OUTPUT = "output"
CONSOLE = "console"


@dataclass(frozen=True, order=True)
class DepEdge:
    src: int
    dst: int
    kind: str


@dataclass
class DepGraph:
    edges: set = field(default_factory=set)

    def of_kind(self, kind):
        return sorted(e for e in self.edges if e.kind == kind)

    def consumers_of(self, src, kind=FLOW):
        return sorted(e.dst for e in self.edges if e.src == src and e.kind == kind)


def build_depgraph(program):
    """Forward dependence edges between main's statements.

    flow:    a definition reaches a later statement that reads the variable
    anti:    a read happens before a later write of the same variable
    output:  two writes to the same variable, in id order
    console: consecutive print statements, chained pairwise
    """
    stmts = main_stmts(program)
    rd_in = reaching_definitions(program)
    edges = set()

    stmt_def_var = {s.sid: next(iter(stmt_defs(s))) for s in stmts if stmt_defs(s)}

    for t in stmts:
        uses = stmt_uses(t)
        if not uses:
            continue
        for d in rd_in[t.sid]:
            if isinstance(d, int) and d < t.sid and stmt_def_var[d] in uses:
                edges.add(DepEdge(d, t.sid, FLOW))

    readers = [(s.sid, stmt_uses(s)) for s in stmts]
    writers = [(s.sid, stmt_def_var[s.sid]) for s in stmts if s.sid in stmt_def_var]
    for r_sid, uses in readers:
        for w_sid, wv in writers:
            if r_sid < w_sid and wv in uses:
                edges.add(DepEdge(r_sid, w_sid, ANTI))
    for i, (a_sid, av) in enumerate(writers):
        for b_sid, bv in writers[i + 1:]:
            if av == bv and a_sid < b_sid:
                edges.add(DepEdge(a_sid, b_sid, OUTPUT))

    prints = [s.sid for s in stmts if isinstance(s, Print)]
    for a, b in zip(prints, prints[1:]):
        edges.add(DepEdge(a, b, CONSOLE))

    return DepGraph(edges)


# ---------------------------------------------------------------------------
# literal abstraction

_HOLES = {lang.IntLit: 0, lang.FloatLit: 0.0, lang.BoolLit: False, lang.StrLit: ""}


def abstract_literals(stmts):
    """Replace every literal in a statement sequence with a hole.

    Returns (shape, vector): a cloned statement list whose literal values are
    canonical placeholders, and the extracted literals in pre-order as
    (kind, value) pairs.  Two sequences have the same shape exactly when the
    holed clones are ast_equal.
    """
    vector = []

    def go(node):
        if isinstance(node, lang.Node):
            for cls, hole in _HOLES.items():
                if isinstance(node, cls):
                    kind = {lang.IntLit: "int", lang.FloatLit: "float",
                            lang.BoolLit: "bool", lang.StrLit: "string"}[cls]
                    vector.append((kind, node.value))
                    node.value = hole
                    return
            for name in node.__dataclass_fields__:
                go(getattr(node, name))
        elif isinstance(node, list):
            for x in node:
                go(x)

    shape = lang.clone(list(stmts))
    go(shape)
    return shape, vector


# ---------------------------------------------------------------------------
# task annotations

GLUE = 0


class AnnotationError(ValueError):
    pass


@dataclass
class TaskAnnotation:
    """Ground-truth grouping of main's statements into tasks.

    task_of maps every statement id in main to a task number; task 0 is glue
    (setup, plumbing, output that belongs to no task).  instance_of maps the
    statements of each task to a repetition-instance index, counted from 0 per
    task.  task_names optionally titles the non-glue tasks.
    """
    task_of: dict
    instance_of: dict
    task_names: dict = field(default_factory=dict)

    def tasks(self):
        return sorted({t for t in self.task_of.values() if t != GLUE})

    def stmts_of(self, task):
        return sorted(sid for sid, t in self.task_of.items() if t == task)

    def instances_of(self, task):
        groups = {}
        for sid in self.stmts_of(task):
            groups.setdefault(self.instance_of[sid], []).append(sid)
        return [sorted(groups[k]) for k in sorted(groups)]

    def to_json(self):
        return {
            "task_of": {str(k): v for k, v in sorted(self.task_of.items())},
            "instance_of": {str(k): v for k, v in sorted(self.instance_of.items())},
            "task_names": {str(k): v for k, v in sorted(self.task_names.items())},
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise AnnotationError("annotation must be an object")
        extra = set(data) - {"task_of", "instance_of", "task_names"}
        if extra:
            raise AnnotationError(f"unknown annotation fields: {sorted(extra)}")
        try:
            task_of = {int(k): int(v) for k, v in data["task_of"].items()}
            instance_of = {int(k): int(v) for k, v in data.get("instance_of", {}).items()}
            task_names = {int(k): str(v) for k, v in data.get("task_names", {}).items()}
        except (KeyError, AttributeError, TypeError, ValueError) as err:
            raise AnnotationError(f"malformed annotation: {err}") from None
        return cls(task_of, instance_of, task_names)


def validate_annotation(program, ann):
    """Check an annotation against a program; raises AnnotationError."""
    sids = {s.sid for s in main_stmts(program)}
    if set(ann.task_of) != sids:
        missing = sorted(sids - set(ann.task_of))
        extra = sorted(set(ann.task_of) - sids)
        raise AnnotationError(
            f"task_of must cover main exactly (missing {missing}, extra {extra})")
    for sid, t in ann.task_of.items():
        if t < 0:
            raise AnnotationError(f"negative task id {t} at statement {sid}")
    non_glue = {sid for sid, t in ann.task_of.items() if t != GLUE}
    if set(ann.instance_of) != non_glue:
        raise AnnotationError("instance_of must cover exactly the non-glue statements")
    for task in ann.tasks():
        idxs = sorted({ann.instance_of[sid] for sid in ann.stmts_of(task)})
        if idxs != list(range(len(idxs))):
            raise AnnotationError(f"task {task} instances must count 0..k-1, got {idxs}")
    for t in ann.task_names:
        if t not in set(ann.tasks()):
            raise AnnotationError(f"task_names refers to unknown task {t}")
