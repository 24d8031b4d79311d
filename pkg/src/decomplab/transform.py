"""Program transformations for building exercises out of reference solutions.

The generation pipeline starts from a decomposed program in call-normal form
(helpers are call-free; main calls them only as bare statements or as the
entire right side of an assignment) and produces a single-main unstructured
program plus the task annotation that remembers where every statement came
from:

  inline_all     splice every callee into main; each call site becomes one
                 instance of the callee's task (arguments become fresh-name
                 binds, a trailing return becomes an assignment)
  fold_affine    collapse integer-literal arithmetic left behind by scaled
                 instantiation
  hoist_common   pull a duplicated pure expression shared by several tasks
                 into one glue definition
  reorder        shuffle main's independent top-level statements
                 (dependence-preserving, seeded)

Scaled inlining substitutes a designated integer "scale" argument directly
into the template body instead of binding it, then folds, so the instances
differ only in literals that are affine in the scale.
"""

from dataclasses import dataclass

from . import lang
from .analysis import (
    TaskAnnotation,
    build_depgraph,
    main_stmts,
    owner_map,
    param_site,
    reaching_definitions,
    stmt_defs,
)
from .classifier import Classification, Provenance, classify, instance_roots
from .interp import INT_MAX, INT_MIN
from .rng import SplitMix64


class TransformError(Exception):
    pass


class NotCallNormal(TransformError):
    """The program violates call-normal form (see check_call_normal)."""


class NonTailReturn(TransformError):
    """A callee returns somewhere other than as its single last statement."""


class OnlyOneOrder(TransformError):
    """The dependence graph admits exactly one order; nothing to shuffle."""


class IntOverflow(TransformError):
    """Literal folding produced a value outside the 64-bit signed range."""


class NoCommonComputation(TransformError):
    """No pure expression is shared by two or more tasks."""


# ---------------------------------------------------------------------------
# call-normal form

def _calls_in(e):
    out = []

    def go(x):
        if isinstance(x, lang.Call):
            out.append(x)
            for a in x.args:
                go(a)
        elif isinstance(x, lang.Binary):
            go(x.lhs)
            go(x.rhs)
        elif isinstance(x, lang.Unary):
            go(x.operand)
        elif isinstance(x, lang.Index):
            go(x.base)
            go(x.index)
        elif isinstance(x, lang.Len):
            go(x.arg)
        elif isinstance(x, lang.ListLit):
            for el in x.elements:
                go(el)

    go(e)
    return out


def check_call_normal(program):
    """Violations of call-normal form, as human-readable strings.

    Call-normal means: helpers never call; main calls only as a bare
    statement or as the entire right side of an assignment, and an assigned
    call must target a non-void function.
    """
    problems = []
    by_name = {f.name: f for f in program.functions}
    for f in program.functions:
        if f.name == "main":
            continue
        for s in lang.all_stmts(f.body):
            for e in lang.stmt_exprs(s):
                if _calls_in(e):
                    problems.append(
                        f"{f.name}: helper calls are not allowed "
                        f"(statement at {s.pos})")
    for s in lang.all_stmts(program.main.body):
        allowed = None
        if isinstance(s, lang.ExprStmt):
            allowed = s.call
        elif isinstance(s, lang.Assign) and isinstance(s.value, lang.Call):
            allowed = s.value
            if by_name[allowed.func].return_type == "void":
                problems.append(
                    f"main: void call {allowed.func}() cannot be assigned "
                    f"(statement at {s.pos})")
        for e in lang.stmt_exprs(s):
            for c in _calls_in(e):
                if c is not allowed:
                    problems.append(
                        f"main: call to {c.func}() must be a bare statement or "
                        f"a whole assignment (statement at {s.pos})")
        if allowed is not None and any(_calls_in(a) for a in allowed.args):
            problems.append(
                f"main: arguments of {allowed.func}() must be call-free "
                f"(statement at {s.pos})")
    return problems


# ---------------------------------------------------------------------------
# expression rewriting helpers

def _map_exprs_stmt(s, fn):
    if isinstance(s, lang.Assign):
        s.value = fn(s.value)
    elif isinstance(s, lang.IndexAssign):
        s.index = fn(s.index)
        s.value = fn(s.value)
    elif isinstance(s, lang.Print):
        s.args = [fn(a) for a in s.args]
    elif isinstance(s, lang.If):
        s.cond = fn(s.cond)
    elif isinstance(s, lang.While):
        s.cond = fn(s.cond)
    elif isinstance(s, lang.ForRange):
        s.lo = fn(s.lo)
        s.hi = fn(s.hi)
    elif isinstance(s, lang.Return):
        if s.value is not None:
            s.value = fn(s.value)
    elif isinstance(s, lang.ExprStmt):
        s.call = fn(s.call)


def map_exprs(stmts, fn):
    """Rewrite every expression in a statement forest, in place."""
    for s in lang.all_stmts(stmts):
        _map_exprs_stmt(s, fn)


def rename_vars(stmts, mapping):
    """Rename variables (uses and definitions) in place."""

    def rex(e):
        if isinstance(e, lang.Var) and e.name in mapping:
            return lang.Var(mapping[e.name])
        if isinstance(e, lang.Binary):
            return lang.Binary(e.op, rex(e.lhs), rex(e.rhs))
        if isinstance(e, lang.Unary):
            return lang.Unary(e.op, rex(e.operand))
        if isinstance(e, lang.Index):
            return lang.Index(rex(e.base), rex(e.index))
        if isinstance(e, lang.Len):
            return lang.Len(rex(e.arg))
        if isinstance(e, lang.Call):
            return lang.Call(e.func, [rex(a) for a in e.args])
        if isinstance(e, lang.ListLit):
            return lang.ListLit([rex(x) for x in e.elements])
        return e

    for s in lang.all_stmts(stmts):
        if isinstance(s, (lang.Assign, lang.IndexAssign)) and s.target in mapping:
            s.target = mapping[s.target]
        if isinstance(s, lang.ForRange) and s.var in mapping:
            s.var = mapping[s.var]
        _map_exprs_stmt(s, rex)


def subst_var(stmts, name, replacement):
    """Replace every read of a variable with (clones of) an expression."""

    def rex(e):
        if isinstance(e, lang.Var) and e.name == name:
            return lang.clone(replacement)
        if isinstance(e, lang.Binary):
            return lang.Binary(e.op, rex(e.lhs), rex(e.rhs))
        if isinstance(e, lang.Unary):
            return lang.Unary(e.op, rex(e.operand))
        if isinstance(e, lang.Index):
            return lang.Index(rex(e.base), rex(e.index))
        if isinstance(e, lang.Len):
            return lang.Len(rex(e.arg))
        if isinstance(e, lang.Call):
            return lang.Call(e.func, [rex(a) for a in e.args])
        if isinstance(e, lang.ListLit):
            return lang.ListLit([rex(x) for x in e.elements])
        return e

    map_exprs(stmts, rex)


def fold_expr(e):
    """Fold integer-literal arithmetic under +, - and * (bottom-up).

    Negative results become a unary minus over a positive literal so the
    output prints and reparses to the same tree; such nodes do not fold
    further.  A fold that leaves the 64-bit signed range raises IntOverflow.
    """
    if isinstance(e, lang.Binary):
        lhs = fold_expr(e.lhs)
        rhs = fold_expr(e.rhs)
        if (e.op in ("+", "-", "*") and isinstance(lhs, lang.IntLit)
                and isinstance(rhs, lang.IntLit)):
            v = {"+": lhs.value + rhs.value,
                 "-": lhs.value - rhs.value,
                 "*": lhs.value * rhs.value}[e.op]
            if not INT_MIN <= v <= INT_MAX:
                raise IntOverflow(f"folding {lhs.value} {e.op} {rhs.value} overflows")
            if v < 0:
                return lang.Unary("-", lang.IntLit(-v))
            return lang.IntLit(v)
        return lang.Binary(e.op, lhs, rhs)
    if isinstance(e, lang.Unary):
        return lang.Unary(e.op, fold_expr(e.operand))
    if isinstance(e, lang.Index):
        return lang.Index(fold_expr(e.base), fold_expr(e.index))
    if isinstance(e, lang.Len):
        return lang.Len(fold_expr(e.arg))
    if isinstance(e, lang.Call):
        return lang.Call(e.func, [fold_expr(a) for a in e.args])
    if isinstance(e, lang.ListLit):
        return lang.ListLit([fold_expr(x) for x in e.elements])
    return e


def fold_affine(stmts):
    """Apply fold_expr to every expression of a statement forest, in place."""
    map_exprs(stmts, fold_expr)


# ---------------------------------------------------------------------------
# scale-parameter designation

def _affine_material(e, s):
    """True if e is built only from int literals, the scale variable, and
    the operators +, - and *."""
    if isinstance(e, lang.IntLit):
        return True
    if isinstance(e, lang.Var):
        return e.name == s
    if isinstance(e, lang.Binary) and e.op in ("+", "-", "*"):
        return _affine_material(e.lhs, s) and _affine_material(e.rhs, s)
    return False


def _degree(e, s):
    if isinstance(e, lang.IntLit):
        return 0
    if isinstance(e, lang.Var):
        return 1 if e.name == s else 0
    if e.op in ("+", "-"):
        return max(_degree(e.lhs, s), _degree(e.rhs, s))
    return _degree(e.lhs, s) + _degree(e.rhs, s)  # "*"


def _children(e):
    if isinstance(e, lang.Binary):
        return [e.lhs, e.rhs]
    if isinstance(e, lang.Unary):
        return [e.operand]
    if isinstance(e, lang.Index):
        return [e.base, e.index]
    if isinstance(e, lang.Len):
        return [e.arg]
    if isinstance(e, lang.Call):
        return list(e.args)
    if isinstance(e, lang.ListLit):
        return list(e.elements)
    return []


def _occurrences_affine(e, s):
    """Every maximal {int literal, s, +, -, *} subexpression has degree <= 1
    in s, so substituting a literal for s keeps all folds affine."""
    if _affine_material(e, s):
        return _degree(e, s) <= 1
    return all(_occurrences_affine(c, s) for c in _children(e))


def designate_scale_param(func, calls_args):
    """Pick the first int parameter usable as a scale: never reassigned,
    affine everywhere in the body, and an int literal at every call site."""
    defined = set()
    for st in lang.all_stmts(func.body):
        defined |= stmt_defs(st)
    for idx, prm in enumerate(func.params):
        if prm.type != "int" or prm.name in defined:
            continue
        if not all(isinstance(args[idx], lang.IntLit) for args in calls_args):
            continue
        ok = True
        for st in lang.all_stmts(func.body):
            for e in lang.stmt_exprs(st):
                if not _occurrences_affine(e, prm.name):
                    ok = False
        if ok:
            return idx
    return None


# ---------------------------------------------------------------------------
# template instantiation

@dataclass
class ScaledTemplate:
    """A callee together with its designated integer scale parameter; the
    parameter appears only where substituting a literal keeps every foldable
    subexpression affine in it."""
    base: object  # FuncDef
    scale_index: int

    @property
    def scale_param(self):
        return self.base.params[self.scale_index].name


def scaled_template(func, calls_args):
    """Wrap func as a ScaledTemplate when a scale parameter is designatable
    for the given call-site argument lists; None otherwise."""
    idx = designate_scale_param(func, calls_args)
    if idx is None:
        return None
    return ScaledTemplate(func, idx)


def _callee_names(func):
    names = {p.name for p in func.params}
    for st in lang.all_stmts(func.body):
        names |= stmt_defs(st)
        for e in lang.stmt_exprs(st):
            names |= _all_var_names(e)
    return names


def _all_var_names(e):
    out = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, lang.Var):
            out.add(x.name)
        stack.extend(_children(x))
    return out


def _check_tail_return(func):
    rets = [s for s in lang.all_stmts(func.body) if isinstance(s, lang.Return)]
    trailing = func.body[-1] if func.body and isinstance(func.body[-1], lang.Return) else None
    if func.return_type == "void":
        if any(r is not trailing for r in rets):
            raise NonTailReturn(f"{func.name}: return must be the last statement")
    else:
        if len(rets) != 1 or rets[0] is not trailing:
            raise NonTailReturn(
                f"{func.name}: exactly one trailing return is required for inlining")


def _ret_name(func):
    names = _callee_names(func)
    name = "ret"
    while name in names:
        name += "_"
    return name


def instantiate_template(template, scale_value):
    """The template body with the scale parameter replaced by a literal and
    the literal arithmetic folded; a trailing valued return becomes an
    assignment to a fresh name.  Variable names are the callee's own (rename
    afterwards to embed the result)."""
    if scale_value < 0:
        raise TransformError("scale values must be non-negative")
    func = template.base
    _check_tail_return(func)
    body = lang.clone(func.body)
    subst_var(body, template.scale_param, lang.IntLit(scale_value))
    fold_affine(body)
    if body and isinstance(body[-1], lang.Return):
        ret = body.pop()
        if ret.value is not None:
            body.append(lang.Assign(_ret_name(func), ret.value, pos=ret.pos))
    return body


# ---------------------------------------------------------------------------
# inlining

@dataclass
class InlineResult:
    program: lang.Program
    annotation: TaskAnnotation
    provenance: Provenance


def _mark_all(stmts, marks, value):
    for s in lang.all_stmts(stmts):
        marks[s] = value


def inline_all(program, scaled=False):
    """Inline every call in main, producing a single-function program and the
    annotation that maps each statement to its originating task and call site.

    Each callee becomes a task (numbered by first call, 1 upward); main's own
    statements become glue.  Call arguments are bound to prefixed fresh names
    (always, even for literals), the callee body is renamed with the same
    prefix, and a trailing valued return turns into an assignment that the
    call site then consumes.  With scaled=True, a callee whose designated
    scale parameter receives int literals at every call site is instantiated
    per call instead of bound, and the scales are recorded as provenance.
    """
    problems = check_call_normal(program)
    if problems:
        raise NotCallNormal("not in call-normal form:\n" + "\n".join(problems))

    callees = {f.name: f for f in program.functions if f.name != "main"}
    main = program.main

    call_sites = []  # (stmt, call) in pre-order
    for s in lang.all_stmts(main.body):
        if isinstance(s, lang.ExprStmt):
            call_sites.append((s, s.call))
        elif isinstance(s, lang.Assign) and isinstance(s.value, lang.Call):
            call_sites.append((s, s.value))

    task_of_callee = {}
    for _, c in call_sites:
        if c.func not in task_of_callee:
            task_of_callee[c.func] = len(task_of_callee) + 1

    main_names = {p.name for p in main.params}
    for s in lang.all_stmts(main.body):
        main_names |= stmt_defs(s)
        for e in lang.stmt_exprs(s):
            main_names |= _all_var_names(e)
    for name, task in task_of_callee.items():
        prefix = f"t{task - 1}_"
        if any(v.startswith(prefix) for v in main_names):
            raise TransformError(f"main already uses names with prefix {prefix!r}")

    templates = {}
    if scaled:
        args_by_callee = {}
        for _, c in call_sites:
            args_by_callee.setdefault(c.func, []).append(c.args)
        for name, argsets in args_by_callee.items():
            t = scaled_template(callees[name], argsets)
            if t is not None:
                templates[name] = t

    for name in task_of_callee:
        _check_tail_return(callees[name])

    marks = {}  # stmt object -> (task, instance)
    instance_counter = {name: 0 for name in task_of_callee}
    scales_by_task = {}
    renames_by_task = {}

    def expand(stmt, call):
        f = callees[call.func]
        task = task_of_callee[call.func]
        prefix = f"t{task - 1}_"
        inst = instance_counter[call.func]
        instance_counter[call.func] = inst + 1

        template = templates.get(call.func)
        sidx = template.scale_index if template is not None else None
        out = []
        for i, (prm, arg) in enumerate(zip(f.params, call.args)):
            if i == sidx:
                continue
            out.append(lang.Assign(prefix + prm.name, lang.clone(arg), pos=stmt.pos))
        if template is not None:
            value = call.args[sidx].value
            scales_by_task.setdefault(task, []).append(value)
            body = instantiate_template(template, value)
            renames = {n: prefix + n for n in _callee_names(f)
                       if n != template.scale_param}
        else:
            body = lang.clone(f.body)
            if body and isinstance(body[-1], lang.Return):
                ret = body.pop()
                if ret.value is not None:
                    body.append(lang.Assign(_ret_name(f), ret.value, pos=ret.pos))
            renames = {n: prefix + n for n in _callee_names(f)}
        renames[_ret_name(f)] = prefix + _ret_name(f)
        rename_vars(body, renames)
        renames_by_task[task] = renames
        out.extend(body)
        if isinstance(stmt, lang.Assign):
            out.append(lang.Assign(stmt.target, lang.Var(prefix + _ret_name(f)),
                                   pos=stmt.pos))
        _mark_all(out, marks, (task, inst))
        return out

    def transform_block(stmts):
        out = []
        for s in stmts:
            if isinstance(s, lang.ExprStmt):
                out.extend(expand(s, s.call))
                continue
            if isinstance(s, lang.Assign) and isinstance(s.value, lang.Call):
                out.extend(expand(s, s.value))
                continue
            if isinstance(s, lang.If):
                s.then = transform_block(s.then)
                s.orelse = transform_block(s.orelse)
            elif isinstance(s, (lang.While,)):
                s.body = transform_block(s.body)
            elif isinstance(s, lang.ForRange):
                s.body = transform_block(s.body)
            if s not in marks:
                marks[s] = (0, None)
            out.append(s)
        return out

    new_body = transform_block(lang.clone(main.body))
    new_main = lang.FuncDef("main", lang.clone(main.params), main.return_type,
                            new_body, pos=main.pos)
    new_program = lang.Program([new_main])
    lang.validate_program(new_program)
    lang.assign_ids(new_program)

    task_of, instance_of = {}, {}
    for s in main_stmts(new_program):
        task, inst = marks[s]
        task_of[s.sid] = task
        if task != 0:
            instance_of[s.sid] = inst
    task_names = {t: name for name, t in task_of_callee.items()}
    ann = TaskAnnotation(task_of, instance_of, task_names)

    prov = Provenance(scales_by_task, dict(task_names), renames_by_task)
    return InlineResult(new_program, ann, prov)


# ---------------------------------------------------------------------------
# annotation-preserving renumbering

def _ann_by_object(program, ann):
    return {s: (ann.task_of[s.sid], ann.instance_of.get(s.sid))
            for s in main_stmts(program)}


def _ann_from_objects(program, by_obj, task_names):
    task_of, instance_of = {}, {}
    for s in main_stmts(program):
        task, inst = by_obj[s]
        task_of[s.sid] = task
        if task != 0:
            instance_of[s.sid] = inst
    return TaskAnnotation(task_of, instance_of, dict(task_names))


# ---------------------------------------------------------------------------
# reorder

def reorder(program, ann, seed, max_tries=64):
    """Shuffle main's top-level statements without breaking dependences.

    Units are main's top-level statements (compounds move whole); everything
    from the first top-level return onward is pinned in place.  Unit A must
    stay before unit B when any dependence edge links a statement of A to a
    statement of B.  The permutation is sampled with a seeded Kahn walk and
    resampled (up to max_tries) until it differs from the input order.
    Raises OnlyOneOrder when the dependences admit exactly one order.

    Returns (program, annotation, permutation) where permutation[i] is the
    original unit index now at position i (pinned units map to themselves).
    """
    program = lang.clone(program)
    main = program.main
    by_obj = _ann_by_object(program, ann)

    units = list(main.body)
    # everything from the first terminating unit onward stays put, so the
    # every-path-returns rule keeps holding after the shuffle
    pin_at = next((i for i, s in enumerate(units) if lang._ends_in_return([s])),
                  len(units))
    prefix, tail = units[:pin_at], units[pin_at:]

    unit_index = {}
    for i, u in enumerate(prefix):
        for s in lang.all_stmts([u]):
            unit_index[s.sid] = i

    graph = build_depgraph(program)
    succs = {i: set() for i in range(len(prefix))}
    indeg = {i: 0 for i in range(len(prefix))}
    for e in sorted(graph.edges):
        u, v = unit_index.get(e.src), unit_index.get(e.dst)
        if u is None or v is None or u == v:
            continue
        if v not in succs[u]:
            succs[u].add(v)
            indeg[v] += 1

    def kahn(rng=None):
        remaining = dict(indeg)
        ready = sorted(i for i in remaining if remaining[i] == 0)
        order = []
        unique = True
        while ready:
            if len(ready) > 1:
                unique = False
            pick = ready.pop(0 if rng is None else rng.randrange(len(ready)))
            order.append(pick)
            for t in sorted(succs[pick]):
                remaining[t] -= 1
                if remaining[t] == 0:
                    ready.append(t)
            ready.sort()
        return order, unique

    _, unique = kahn()
    if unique:
        raise OnlyOneOrder("dependences force a single order of main's statements")

    rng = SplitMix64(seed)
    identity = list(range(len(prefix)))
    order = identity
    for _ in range(max_tries):
        order, _ = kahn(rng)
        if order != identity:
            break

    main.body = [prefix[i] for i in order] + tail
    lang.assign_ids(program)
    lang.validate_program(program)
    permutation = order + list(range(pin_at, len(units)))
    return program, _ann_from_objects(program, by_obj, ann.task_names), permutation


# ---------------------------------------------------------------------------
# hoisting a shared expression

@dataclass
class HoistResult:
    program: lang.Program
    annotation: TaskAnnotation
    name: str
    replaced: list  # new sids of the statements whose expression was replaced


def _is_pure_compound(e):
    return (isinstance(e, (lang.Binary, lang.Unary, lang.Index, lang.Len))
            and not _calls_in(e))


def _subexprs(e):
    out = [e]
    for c in _children(e):
        out.extend(_subexprs(c))
    return out


def _expr_size(e):
    return 1 + sum(_expr_size(c) for c in _children(e))


def _replace_node(stmt, target, replacement):
    def rex(e):
        if e is target:
            return replacement
        if isinstance(e, lang.Binary):
            return lang.Binary(e.op, rex(e.lhs), rex(e.rhs))
        if isinstance(e, lang.Unary):
            return lang.Unary(e.op, rex(e.operand))
        if isinstance(e, lang.Index):
            return lang.Index(rex(e.base), rex(e.index))
        if isinstance(e, lang.Len):
            return lang.Len(rex(e.arg))
        if isinstance(e, lang.Call):
            return lang.Call(e.func, [rex(a) for a in e.args])
        if isinstance(e, lang.ListLit):
            return lang.ListLit([rex(x) for x in e.elements])
        return e

    _map_exprs_stmt(stmt, rex)


def hoist_common(program, ann):
    """Introduce one glue definition for the best duplicated pure expression.

    Candidates are compound call-free subexpressions at top-level statements
    of main.  Occurrences are grouped by a canonical form that resolves each
    variable through unique-definition copy chains to a root (parameter,
    definition site, or reaching-definition set), so t1_r and t2_r match when
    both are untouched copies of the same parameter.  The chosen group must
    span at least two non-glue tasks; ties break toward more tasks, larger
    expressions, then earliest occurrence.  A fresh shared_<k> assignment is
    inserted right before the first occurrence and every occurrence becomes a
    read of it.
    """
    program = lang.clone(program)
    main = program.main
    by_obj = _ann_by_object(program, ann)
    rd_ins = reaching_definitions(program)
    by_sid = {s.sid: s for s in main_stmts(program)}

    site_of_var = {}
    for s in main_stmts(program):
        for v in stmt_defs(s):
            site_of_var.setdefault(v, set()).add(s.sid)

    def sites_for(v, at_sid):
        sites = {d for d in rd_ins[at_sid]
                 if (d == param_site(v)) or (isinstance(d, int) and
                                             v in stmt_defs(by_sid[d]))}
        return frozenset(sites)

    def var_root(v, at_sid, seen):
        sites = sites_for(v, at_sid)
        if len(sites) == 1:
            (d,) = sites
            if d in seen:
                return ("set", sites)
            if isinstance(d, str):
                return ("param", d)
            st = by_sid[d]
            if isinstance(st, lang.Assign) and isinstance(st.value, lang.Var):
                w = st.value.name
                if sites_for(w, d) == sites_for(w, at_sid):
                    return var_root(w, at_sid, seen | {d})
            return ("def", d)
        return ("set", sites)

    def canon(e, at_sid):
        if isinstance(e, lang.Var):
            return ("var", var_root(e.name, at_sid, frozenset()))
        if isinstance(e, lang.IntLit):
            return ("int", e.value)
        if isinstance(e, lang.FloatLit):
            return ("float", e.value)
        if isinstance(e, lang.BoolLit):
            return ("bool", e.value)
        if isinstance(e, lang.StrLit):
            return ("str", e.value)
        if isinstance(e, lang.Binary):
            return ("bin", e.op, canon(e.lhs, at_sid), canon(e.rhs, at_sid))
        if isinstance(e, lang.Unary):
            return ("un", e.op, canon(e.operand, at_sid))
        if isinstance(e, lang.Index):
            return ("index", canon(e.base, at_sid), canon(e.index, at_sid))
        if isinstance(e, lang.Len):
            return ("len", canon(e.arg, at_sid))
        raise TypeError(type(e))

    groups = {}
    for s in main.body:  # top-level statements only
        # loop headers are evaluated repeatedly (while) or have reaching sets
        # polluted by their own back edge (for), so value-matching there is
        # unsound; plain statements and if-conditions evaluate exactly once
        if isinstance(s, (lang.While, lang.ForRange)):
            continue
        for root_expr in lang.stmt_exprs(s):
            for node in _subexprs(root_expr):
                if _is_pure_compound(node):
                    key = canon(node, s.sid)
                    groups.setdefault(key, []).append((s, node))

    best = None
    for key, occ in groups.items():
        if len(occ) < 2:
            continue
        tasks = {by_obj[s][0] for s, _ in occ if by_obj[s][0] != 0}
        if len(tasks) < 2:
            continue
        size = _expr_size(occ[0][1])
        first_sid = min(s.sid for s, _ in occ)
        rank = (len(tasks), size, -first_sid)
        if best is None or rank > best[0]:
            best = (rank, occ)

    if best is None:
        raise NoCommonComputation(
            "no pure expression is shared by two or more tasks")
    occ = best[1]

    used = set()
    for s in main_stmts(program):
        used |= stmt_defs(s)
        for e in lang.stmt_exprs(s):
            used |= _all_var_names(e)
    k = 0
    while f"shared_{k}" in used:
        k += 1
    name = f"shared_{k}"

    first_stmt = min((s for s, _ in occ), key=lambda s: s.sid)
    hoisted = lang.Assign(name, lang.clone(occ[0][1]), pos=first_stmt.pos)
    by_obj[hoisted] = (0, None)
    replaced_objs = []
    for s, node in occ:
        _replace_node(s, node, lang.Var(name))
        replaced_objs.append(s)
    main.body.insert(main.body.index(first_stmt), hoisted)

    lang.assign_ids(program)
    lang.validate_program(program)
    new_ann = _ann_from_objects(program, by_obj, ann.task_names)
    return HoistResult(program, new_ann, name,
                       sorted({s.sid for s in replaced_objs}))


# ---------------------------------------------------------------------------
# alpha equivalence

def alpha_equal(a, b):
    """Structural equality up to a bijective renaming of variables.

    Literals, operators, call targets, and statement kinds must match
    exactly; only variable names may differ, consistently in both directions.
    sid and pos are ignored.
    """
    fwd, bwd = {}, {}

    def names_ok(x, y):
        if x in fwd:
            return fwd[x] == y
        if y in bwd:
            return False
        fwd[x] = y
        bwd[y] = x
        return True

    def go(x, y):
        if type(x) is not type(y):
            return False
        if isinstance(x, lang.Var):
            return names_ok(x.name, y.name)
        if isinstance(x, lang.Call):
            return x.func == y.func and go(list(x.args), list(y.args))
        if isinstance(x, (lang.Assign, lang.IndexAssign)):
            if not names_ok(x.target, y.target):
                return False
        if isinstance(x, lang.ForRange):
            if not names_ok(x.var, y.var):
                return False
        if isinstance(x, lang.Node):
            for fname in x.__dataclass_fields__:
                if fname in ("sid", "pos", "target", "var"):
                    continue
                if not go(getattr(x, fname), getattr(y, fname)):
                    return False
            return True
        if isinstance(x, list):
            return len(x) == len(y) and all(go(p, q) for p, q in zip(x, y))
        return x == y

    return go(a, b)


# ---------------------------------------------------------------------------
# verifying scaled provenance

def verify_template_instances(unstructured, ann, provenance, decomposed):
    """Check that each scaled task's instances really are instantiations of
    the recorded template.  Returns a list of mismatch descriptions."""
    problems = []
    for task, scales in sorted(provenance.scales_by_task.items()):
        fname = ann.task_names.get(task)
        if fname is None:
            problems.append(f"task {task}: no task name to locate the template")
            continue
        try:
            f = decomposed.function(fname)
        except KeyError:
            problems.append(f"task {task}: no function {fname!r} in the decomposed program")
            continue
        argsets = []
        for s in lang.all_stmts(decomposed.main.body):
            call = None
            if isinstance(s, lang.ExprStmt) and s.call.func == fname:
                call = s.call
            elif (isinstance(s, lang.Assign) and isinstance(s.value, lang.Call)
                  and s.value.func == fname):
                call = s.value
            if call is not None:
                argsets.append(call.args)
        template = scaled_template(f, argsets)
        if template is None:
            problems.append(f"task {task}: {fname} has no designatable scale parameter")
            continue
        recorded = [args[template.scale_index].value for args in argsets]
        if recorded != list(scales):
            problems.append(
                f"task {task}: call-site scales {recorded} != recorded {list(scales)}")
            continue
        binds = len(f.params) - 1
        roots = instance_roots(unstructured, ann, task)
        for j, inst in enumerate(roots):
            body = instantiate_template(template, scales[j])
            got = inst[binds:binds + len(body)]
            if not alpha_equal(got, body):
                problems.append(
                    f"task {task} instance {j}: statements do not match the "
                    f"template at scale {scales[j]}")
    return problems


# ---------------------------------------------------------------------------
# generation pipeline

@dataclass
class GenerateResult:
    unstructured: lang.Program
    annotation: TaskAnnotation
    provenance: Provenance
    classification: Classification
    reorder_applied: bool = False


def generate(decomposed, scales=None, hoist=False, reorder_seed=None):
    """Turn a decomposed reference program into an exercise: inline, then
    optionally hoist a shared expression and shuffle independent statements,
    and classify the result.

    scales, when given, switches inlining to template instantiation and is
    checked against the scale literals actually found at the call sites of
    every templated callee.  A reorder_seed whose dependence graph admits only
    one order falls back to the original order (and is not recorded).
    """
    inl = inline_all(decomposed, scaled=scales is not None)
    prog, ann, prov = inl.program, inl.annotation, inl.provenance
    if scales is not None:
        if not prov.scales_by_task:
            raise TransformError("no callee admits a scale parameter")
        for task, found in sorted(prov.scales_by_task.items()):
            if found != list(scales):
                raise TransformError(
                    f"task {task} is called at scales {found}, expected {list(scales)}")
    if hoist:
        h = hoist_common(prog, ann)
        prog, ann = h.program, h.annotation
        prov.hoisted = True
    reorder_applied = False
    if reorder_seed is not None:
        try:
            prog, ann, _ = reorder(prog, ann, reorder_seed)
        except OnlyOneOrder:
            pass
        else:
            prov.reorder_seed = reorder_seed
            reorder_applied = True
    cls = classify(prog, ann, prov)
    return GenerateResult(prog, ann, prov, cls, reorder_applied)


def replay(decomposed, provenance):
    """Re-run the generation pipeline that a Provenance records.  Returns
    (program, annotation); the result is byte-identical (after pretty_print)
    to the unstructured program the provenance was recorded from."""
    inl = inline_all(decomposed, scaled=bool(provenance.scales_by_task))
    prog, ann = inl.program, inl.annotation
    if inl.provenance.scales_by_task != provenance.scales_by_task:
        raise TransformError(
            f"reference yields scales {inl.provenance.scales_by_task}, "
            f"provenance records {provenance.scales_by_task}")
    if provenance.hoisted:
        h = hoist_common(prog, ann)
        prog, ann = h.program, h.annotation
    if provenance.reorder_seed is not None:
        prog, ann, _ = reorder(prog, ann, provenance.reorder_seed)
    return prog, ann
