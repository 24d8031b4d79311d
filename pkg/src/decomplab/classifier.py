"""Structure labels: how much repetition, composition, and data coupling a
program's task layout exhibits.

Given a program and a task annotation over its main function, each dimension
gets a level from 0 to 3:

repetition   0 no task repeats
             1 a task repeats verbatim
             2 a task repeats with different literals (same shape)
             3 a task repeats with literals that are affine in a scale

composition  0 fewer than two tasks
             1 tasks appear one after another (concatenation)
             2 some task sits inside another task's control structure
             3 some tasks' statement ranges interleave

data         0 no dataflow between tasks
             1 a value flows from one task (or glue) into another
             2 a foreign statement interrupts a task's statement range
             3 one definition feeds two or more different tasks

Every level comes with evidence naming the statements or tasks that earned
it, so a reader can check the claim against the source.
"""

from dataclasses import dataclass, field

from . import lang
from .analysis import (
    FLOW,
    GLUE,
    abstract_literals,
    build_depgraph,
    main_stmts,
    owner_map,
    stmt_defs,
    validate_annotation,
)


class ClassificationError(Exception):
    pass


class InstanceShapeMismatch(ClassificationError):
    """Instances of one task differ structurally (beyond their literals)."""


@dataclass(frozen=True)
class Label:
    repetition: int
    composition: int
    data: int

    def astuple(self):
        return (self.repetition, self.composition, self.data)

    def to_json(self):
        return {"repetition": self.repetition, "composition": self.composition,
                "data": self.data}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["repetition"]), int(data["composition"]), int(data["data"]))


@dataclass
class Provenance:
    """Generation-time facts, enough to replay the generation on the
    reference program: the callee behind each task, the per-task variable
    rename maps, the scale argument of each scaled instance, and which extra
    transforms ran."""
    scales_by_task: dict = field(default_factory=dict)  # task id -> [int, ...]
    origin: dict = field(default_factory=dict)          # task id -> function name
    renames: dict = field(default_factory=dict)         # task id -> {orig: fresh}
    reorder_seed: int | None = None
    hoisted: bool = False

    def to_json(self):
        out = {}
        if self.scales_by_task:
            out["scales"] = {str(k): list(v)
                             for k, v in sorted(self.scales_by_task.items())}
        if self.origin:
            out["origin"] = {str(k): v for k, v in sorted(self.origin.items())}
        if self.renames:
            out["renames"] = {str(k): dict(sorted(v.items()))
                              for k, v in sorted(self.renames.items())}
        if self.reorder_seed is not None:
            out["reorder_seed"] = self.reorder_seed
        if self.hoisted:
            out["hoisted"] = True
        return out

    @classmethod
    def from_json(cls, data):
        known = {"scales", "origin", "renames", "reorder_seed", "hoisted"}
        if not isinstance(data, dict) or set(data) - known:
            raise ValueError("malformed provenance")
        return cls(
            {int(k): [int(x) for x in v]
             for k, v in data.get("scales", {}).items()},
            {int(k): str(v) for k, v in data.get("origin", {}).items()},
            {int(k): dict(v) for k, v in data.get("renames", {}).items()},
            data.get("reorder_seed"),
            bool(data.get("hoisted", False)),
        )


@dataclass
class Classification:
    label: Label
    evidence: dict


# ---------------------------------------------------------------------------
# repetition

@dataclass
class ScaledFit:
    scales: list    # one scale value per instance
    coeffs: dict    # literal position -> (a, b) with literal == a * scale + b
    varying: list   # positions where a != 0


def fit_scaled(vectors, scales=None):
    """Fit literal vectors to an affine model per int position.

    Without provenance scales, at least three instances are required and the
    scale of each instance is derived from the first varying int position,
    normalized so instance 0 maps to 0 and instance 1 to 1.  With provenance
    scales the given values are used directly and a single varying position
    suffices.  Non-int literals must agree across instances.  Returns a
    ScaledFit or None.
    """
    k = len(vectors)
    if k < 2:
        return None
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        return None
    int_positions = [p for p in range(length) if vectors[0][p][0] == "int"]
    for p in range(length):
        if p in int_positions:
            continue
        if any(v[p] != vectors[0][p] for v in vectors):
            return None

    if scales is not None:
        s = [int(x) for x in scales]
        if len(s) != k or len(set(s)) < 2:
            return None
    else:
        if k < 3:
            return None
        pstar = next((p for p in int_positions
                      if any(v[p][1] != vectors[0][p][1] for v in vectors)), None)
        if pstar is None:
            return None
        base = vectors[0][pstar][1]
        step = vectors[1][pstar][1] - base
        if step == 0:
            return None
        s = []
        for v in vectors:
            delta = v[pstar][1] - base
            if delta % step:
                return None
            s.append(delta // step)

    first_other = next((i for i in range(1, k) if s[i] != s[0]), None)
    if first_other is None:
        return None
    denom = s[first_other] - s[0]
    coeffs = {}
    for p in int_positions:
        diff = vectors[first_other][p][1] - vectors[0][p][1]
        if diff % denom:
            return None
        a = diff // denom
        b = vectors[0][p][1] - a * s[0]
        if any(a * s[i] + b != vectors[i][p][1] for i in range(k)):
            return None
        coeffs[p] = (a, b)
    varying = sorted(p for p, (a, _) in coeffs.items() if a != 0)
    if len(varying) < (1 if scales is not None else 2):
        return None
    return ScaledFit(s, coeffs, varying)


def instance_roots(program, ann, task):
    """Each instance of a task as its root statement sequence.

    A root is a statement of the instance whose owning compound is not itself
    part of the instance; roots carry their whole subtrees, so comparing root
    sequences compares the complete instances.
    """
    owners = owner_map(program)
    by_sid = {s.sid: s for s in main_stmts(program)}
    roots = []
    for inst in ann.instances_of(task):
        sid_set = set(inst)
        roots.append([by_sid[sid] for sid in inst if owners[sid] not in sid_set])
    return roots


def repetition_level(program, ann, provenance=None):
    by_task = {}
    level = 0
    for task in ann.tasks():
        roots = instance_roots(program, ann, task)
        entry = {"instances": len(roots), "level": 0}
        if len(roots) >= 2:
            if all(lang.ast_equal(roots[0], r) for r in roots[1:]):
                entry["level"] = 1
            else:
                shaped = [abstract_literals(r) for r in roots]
                shape0 = shaped[0][0]
                for i, (shape, _) in enumerate(shaped[1:], start=1):
                    if not lang.ast_equal(shape0, shape):
                        raise InstanceShapeMismatch(
                            f"task {task}: instance {i} differs structurally "
                            f"from instance 0")
                vectors = [vec for _, vec in shaped]
                scales = None
                if provenance is not None:
                    scales = provenance.scales_by_task.get(task)
                fit = fit_scaled(vectors, scales)
                if fit is not None:
                    entry["level"] = 3
                    entry["scales"] = list(fit.scales)
                    entry["varying_positions"] = list(fit.varying)
                else:
                    entry["level"] = 2
        by_task[str(task)] = entry
        level = max(level, entry["level"])
    return level, by_task


# ---------------------------------------------------------------------------
# composition

CONCATENATION = "concatenation"
INCLUSION = "inclusion"
INTERLEAVED = "interleaved"


def _ancestor_tasks(sid, owners, task_of):
    out = set()
    cur = owners.get(sid)
    while cur is not None:
        out.add(task_of[cur])
        cur = owners.get(cur)
    return out


def _included_in(program, ann, inner, outer, owners):
    sids = ann.stmts_of(inner)
    return all(outer in _ancestor_tasks(sid, owners, ann.task_of) for sid in sids)


def _interval(ann, task):
    sids = ann.stmts_of(task)
    return (min(sids), max(sids))


def composition_level(program, ann):
    tasks = ann.tasks()
    owners = owner_map(program)
    pairs = []
    for i, a in enumerate(tasks):
        for b in tasks[i + 1:]:
            if _included_in(program, ann, b, a, owners):
                rel = {"a": a, "b": b, "relation": INCLUSION, "inner": b}
            elif _included_in(program, ann, a, b, owners):
                rel = {"a": a, "b": b, "relation": INCLUSION, "inner": a}
            else:
                lo_a, hi_a = _interval(ann, a)
                lo_b, hi_b = _interval(ann, b)
                if hi_a < lo_b or hi_b < lo_a:
                    rel = {"a": a, "b": b, "relation": CONCATENATION}
                else:
                    rel = {"a": a, "b": b, "relation": INTERLEAVED}
            pairs.append(rel)
    relations = {p["relation"] for p in pairs}
    if INTERLEAVED in relations:
        level = 3
    elif INCLUSION in relations:
        level = 2
    elif len(tasks) >= 2:
        level = 1
    else:
        level = 0
    return level, pairs


# ---------------------------------------------------------------------------
# data dependency

def _nested_in_task(sid, task, owners, task_of):
    return task in _ancestor_tasks(sid, owners, task_of)


def data_level(program, ann):
    graph = build_depgraph(program)
    flows = graph.of_kind(FLOW)
    task_of = ann.task_of
    stmts = main_stmts(program)
    owners = owner_map(program)

    # level 3: one definition feeding two or more foreign tasks
    def_sids = sorted(s.sid for s in stmts if stmt_defs(s))
    for d in def_sids:
        consumers = [e.dst for e in flows if e.src == d]
        foreign = sorted({task_of[c] for c in consumers
                          if task_of[c] != GLUE and task_of[c] != task_of[d]})
        if len(foreign) >= 2:
            return 3, {"kind": "shared-definition", "def_sid": d,
                       "def_task": task_of[d],
                       "consumer_tasks": foreign,
                       "consumer_sids": sorted(set(consumers))}

    # level 2: a foreign statement strictly inside a task's statement range,
    # not nested under one of that task's own compounds
    for task in ann.tasks():
        lo, hi = _interval(ann, task)
        for s in stmts:
            if task_of[s.sid] != task and lo < s.sid < hi \
                    and not _nested_in_task(s.sid, task, owners, task_of):
                return 2, {"kind": "interval-foreign", "task": task,
                           "foreign_sid": s.sid, "foreign_task": task_of[s.sid],
                           "interval": [lo, hi]}

    # level 1: any cross-task flow edge; glue endpoints count
    for e in flows:
        if task_of[e.src] != task_of[e.dst]:
            return 1, {"kind": "cross-task-flow", "edge": [e.src, e.dst],
                       "tasks": [task_of[e.src], task_of[e.dst]]}

    return 0, {"kind": "independent"}


# ---------------------------------------------------------------------------
# entry point

def classify(program, ann, provenance=None):
    """Label a program against its task annotation, with evidence."""
    validate_annotation(program, ann)
    rep, rep_ev = repetition_level(program, ann, provenance)
    comp, comp_ev = composition_level(program, ann)
    data, data_ev = data_level(program, ann)
    label = Label(rep, comp, data)
    evidence = {
        "repetition": {"level": rep, "by_task": rep_ev},
        "composition": {"level": comp, "pairs": comp_ev},
        "data": {"level": data, "witness": data_ev},
    }
    return Classification(label, evidence)


def verify_scaled(template, instances, scales):
    """True iff each instance is exactly the template instantiated at its
    scale.  instances and scales map instance ids to statement sequences and
    integers; instance variable names must already match the template's."""
    from .transform import instantiate_template

    return all(
        lang.ast_equal(instantiate_template(template, scales[key]), list(stmts))
        for key, stmts in instances.items())
