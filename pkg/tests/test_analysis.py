"""Dataflow analysis tests: def/use, reaching definitions, dependence graph,
literal abstraction, and task annotations."""

import pytest

from decomplab import analysis, lang
from decomplab.analysis import (
    ANTI,
    CONSOLE,
    FLOW,
    OUTPUT,
    AnnotationError,
    TaskAnnotation,
    abstract_literals,
    build_depgraph,
    main_stmts,
    owner_map,
    param_site,
    reaching_definitions,
    stmt_defs,
    stmt_uses,
    unbound_uses,
    validate_annotation,
)
from helpers import gen_loop_free_program, oracle_reaching_definitions


def prog(body, params=""):
    return lang.parse(f"func main({params}) -> void {{ {body} }}")


def stmts(body, params=""):
    return main_stmts(prog(body, params))


# ---------------------------------------------------------------------------
# def/use sets

def test_assign_def_use():
    (s,) = stmts("x = y + z * 2", params="y: int, z: int")
    assert stmt_defs(s) == {"x"}
    assert stmt_uses(s) == {"y", "z"}


def test_index_assign_defs_and_uses_target():
    (s,) = stmts("xs[i] = v", params="xs: list, i: int, v: int")
    assert stmt_defs(s) == {"xs"}
    assert stmt_uses(s) == {"xs", "i", "v"}


def test_for_header_defines_loop_var():
    s = stmts("for i in range(lo, hi) { print(i) }", params="lo: int, hi: int")[0]
    assert stmt_defs(s) == {"i"}
    assert stmt_uses(s) == {"lo", "hi"}


def test_compound_headers_use_only_their_condition():
    s = stmts("if a < b { x = c }", params="a: int, b: int, c: int")[0]
    assert stmt_uses(s) == {"a", "b"}
    assert stmt_defs(s) == set()


def test_call_args_are_uses():
    p = lang.parse("""
    func f(n: int) -> int { return n }
    func main(a: int) -> void { x = f(a + 1) f(x) }
    """)
    assign, call = main_stmts(p)
    assert stmt_defs(assign) == {"x"} and stmt_uses(assign) == {"a"}
    assert stmt_defs(call) == set() and stmt_uses(call) == {"x"}


def test_print_uses():
    (s,) = stmts("print(a, len(bs), cs[0])", params="a: int, bs: list, cs: list")
    assert stmt_uses(s) == {"a", "bs", "cs"}


# ---------------------------------------------------------------------------
# unbound-variable check (textual id order)

def test_unbound_use_flagged():
    p = prog("y = x x = 1")
    assert unbound_uses(p) == [(0, "x")]


def test_params_are_bound():
    assert unbound_uses(prog("y = x", params="x: int")) == []


def test_loop_var_bound_in_body_not_in_own_bounds():
    p = prog("for i in range(0, i) { print(i) }")
    assert unbound_uses(p) == [(0, "i")]
    p2 = prog("for i in range(0, 3) { print(i) }")
    assert unbound_uses(p2) == []


def test_branch_def_counts_textually():
    # the check is order-based, not path-based: a def inside a branch with a
    # smaller id clears later uses
    p = prog("if true { x = 1 } print(x)")
    assert unbound_uses(p) == []


# ---------------------------------------------------------------------------
# reaching definitions

def rd_by_sid(p):
    return reaching_definitions(p)


def test_rd_kill_on_reassign():
    p = prog("x = 1 x = 2 y = x")
    ins = rd_by_sid(p)
    assert ins[2] == {1}
    assert ins[1] == {0}


def test_rd_if_join_keeps_both():
    p = prog("x = 1 if c { x = 2 } else { x = 3 } y = x", params="c: bool")
    ins = rd_by_sid(p)
    # after the if, both branch defs may reach; the initial def is killed
    assert ins[4] == {2, 3, param_site("c")}


def test_rd_if_without_else_keeps_initial():
    p = prog("x = 1 if c { x = 2 } y = x", params="c: bool")
    ins = rd_by_sid(p)
    assert ins[3] == {0, 2, param_site("c")}


def test_rd_param_reaches_until_killed():
    p = prog("y = x x = 1 z = x", params="x: int")
    ins = rd_by_sid(p)
    assert param_site("x") in ins[0]
    assert 1 in ins[2] and param_site("x") not in ins[2]


def test_rd_while_back_edge():
    p = prog("x = 0 while x < 3 { x = x + 1 } y = x")
    ins = rd_by_sid(p)
    # the header sees the initial def and the loop-carried one
    assert ins[1] == {0, 2}
    assert ins[2] == {0, 2}
    assert ins[3] == {0, 2}


def test_rd_for_header_def():
    p = prog("for i in range(0, 3) { x = i } print(x)")
    ins = rd_by_sid(p)
    assert ins[1] == {0, 1}  # loop var def + loop-carried x def
    assert ins[2] == {1, 0}


def test_rd_dead_code_after_return():
    p = lang.parse("func main(c: bool) -> int { if c { return 1 y = 2 } return 0 }")
    ins = reaching_definitions(p)
    assert ins[2] == set()  # y = 2 is unreachable


def test_rd_matches_bruteforce_oracle_on_samples():
    for seed in range(40):
        p = lang.parse(gen_loop_free_program(seed))
        assert reaching_definitions(p) == oracle_reaching_definitions(p), f"seed {seed}"


# ---------------------------------------------------------------------------
# dependence graph

def edges_of(p, kind):
    return [(e.src, e.dst) for e in build_depgraph(p).of_kind(kind)]


def test_single_flow_edge():
    p = prog("x = 1 y = x")
    g = build_depgraph(p)
    assert [(e.src, e.dst, e.kind) for e in sorted(g.edges)] == [(0, 1, FLOW)]


def test_console_edge_between_adjacent_prints():
    p = prog("print(1) print(2)")
    g = build_depgraph(p)
    assert [(e.src, e.dst, e.kind) for e in sorted(g.edges)] == [(0, 1, CONSOLE)]


def test_console_edges_chain_pairwise():
    p = prog("print(1) x = 2 print(x) print(3)")
    assert edges_of(p, CONSOLE) == [(0, 2), (2, 3)]


def test_anti_edge_read_then_write():
    p = prog("y = x x = 1", params="x: int")
    assert edges_of(p, ANTI) == [(0, 1)]


def test_output_edge_write_write():
    p = prog("x = 1 x = 2")
    assert edges_of(p, OUTPUT) == [(0, 1)]


def test_flow_edges_after_branch_join():
    p = prog("x = 1 if c { x = 2 } y = x", params="c: bool")
    assert edges_of(p, FLOW) == [(0, 3), (2, 3)]


def test_loop_carried_flow_dropped():
    p = prog("x = 0 while x < 3 { x = x + 1 } y = x")
    flows = edges_of(p, FLOW)
    assert (2, 1) not in flows and (2, 2) not in flows
    assert set(flows) == {(0, 1), (0, 2), (2, 3), (0, 3)}


def test_flow_requires_reachability():
    # the first def is killed before the use, so no edge from it
    p = prog("x = 1 x = 2 y = x")
    assert edges_of(p, FLOW) == [(1, 2)]


def test_consumers_of():
    p = prog("x = 1 y = x z = x")
    g = build_depgraph(p)
    assert g.consumers_of(0) == [1, 2]


# ---------------------------------------------------------------------------
# owner map

def test_owner_map_nesting():
    p = prog("x = 0 if true { y = 1 while true { z = 2 } } w = 3")
    owners = owner_map(p)
    assert owners == {0: None, 1: None, 2: 1, 3: 1, 4: 3, 5: None}


# ---------------------------------------------------------------------------
# literal abstraction

def test_abstract_literals_same_shape_different_strings():
    a = prog('print("cow")').main.body
    b = prog('print("moo")').main.body
    shape_a, vec_a = abstract_literals(a)
    shape_b, vec_b = abstract_literals(b)
    assert lang.ast_equal(shape_a, shape_b)
    assert vec_a == [("string", "cow")]
    assert vec_b == [("string", "moo")]


def test_abstract_literals_sequence_order():
    seq = prog('print("cow") print("moo")').main.body
    _, vec = abstract_literals(seq)
    assert vec == [("string", "cow"), ("string", "moo")]


def test_abstract_literals_mixed_kinds():
    seq = prog("x = 2 + 2.5 y = true").main.body
    _, vec = abstract_literals(seq)
    assert vec == [("int", 2), ("float", 2.5), ("bool", True)]


def test_abstract_literals_kind_changes_shape():
    a, _ = abstract_literals(prog("x = 1").main.body)
    b, _ = abstract_literals(prog("x = 1.0").main.body)
    assert not lang.ast_equal(a, b)


def test_abstract_literals_does_not_mutate_input():
    body = prog('print("cow")').main.body
    abstract_literals(body)
    assert body[0].args[0].value == "cow"


def test_abstract_literals_nested_bodies_included():
    a = prog("for i in range(0, 3) { print(i, 7) }").main.body
    b = prog("for i in range(0, 5) { print(i, 9) }").main.body
    shape_a, vec_a = abstract_literals(a)
    shape_b, vec_b = abstract_literals(b)
    assert lang.ast_equal(shape_a, shape_b)
    assert vec_a == [("int", 0), ("int", 3), ("int", 7)]
    assert vec_b == [("int", 0), ("int", 5), ("int", 9)]


# ---------------------------------------------------------------------------
# task annotations

def ann_for(p, mapping, instances=None, names=None):
    task_of = dict(mapping)
    if instances is None:
        instances = {sid: 0 for sid, t in task_of.items() if t != 0}
    return TaskAnnotation(task_of, instances, names or {})


def test_annotation_roundtrip():
    ann = TaskAnnotation({0: 1, 1: 0}, {0: 0}, {1: "compute"})
    data = ann.to_json()
    assert data["task_of"] == {"0": 1, "1": 0}
    back = TaskAnnotation.from_json(data)
    assert back == ann


def test_annotation_rejects_unknown_fields():
    with pytest.raises(AnnotationError, match="unknown"):
        TaskAnnotation.from_json({"task_of": {}, "instance_of": {}, "color": "red"})


def test_validate_requires_full_coverage():
    p = prog("x = 1 y = 2")
    with pytest.raises(AnnotationError, match="cover"):
        validate_annotation(p, ann_for(p, {0: 1}))


def test_validate_instance_indices_contiguous():
    p = prog("x = 1 y = 2")
    ann = TaskAnnotation({0: 1, 1: 1}, {0: 0, 1: 2})
    with pytest.raises(AnnotationError, match="instances"):
        validate_annotation(p, ann)


def test_validate_instance_cover_non_glue_only():
    p = prog("x = 1 y = 2")
    ann = TaskAnnotation({0: 1, 1: 0}, {0: 0, 1: 0})
    with pytest.raises(AnnotationError, match="non-glue"):
        validate_annotation(p, ann)


def test_validate_names_refer_to_tasks():
    p = prog("x = 1")
    ann = TaskAnnotation({0: 1}, {0: 0}, {9: "ghost"})
    with pytest.raises(AnnotationError, match="unknown task"):
        validate_annotation(p, ann)


def test_instances_of_groups_and_sorts():
    ann = TaskAnnotation({0: 1, 1: 1, 2: 0, 3: 1, 4: 1},
                         {0: 0, 1: 0, 3: 1, 4: 1})
    assert ann.instances_of(1) == [[0, 1], [3, 4]]
    assert ann.tasks() == [1]
    assert ann.stmts_of(0) == [2]


def test_valid_annotation_passes():
    p = prog("x = 1 y = x print(y)")
    ann = TaskAnnotation({0: 1, 1: 1, 2: 0}, {0: 0, 1: 0}, {1: "compute"})
    validate_annotation(p, ann)
