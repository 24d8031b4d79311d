"""Tests for inlining, literal folding, reordering, and hoisting."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decomplab import lang
from decomplab.analysis import TaskAnnotation, validate_annotation
from decomplab.classifier import verify_scaled
from decomplab.interp import equivalent
from decomplab.lang import parse, pretty_print, pretty_print_with_lines
from decomplab.transform import (
    IntOverflow,
    NoCommonComputation,
    NonTailReturn,
    NotCallNormal,
    OnlyOneOrder,
    TransformError,
    alpha_equal,
    check_call_normal,
    designate_scale_param,
    fold_expr,
    generate,
    hoist_common,
    inline_all,
    instantiate_template,
    reorder,
    replay,
    scaled_template,
    verify_template_instances,
)


def expr(src):
    return lang.Parser(src).parse_expr()


# ---------------------------------------------------------------------------
# call-normal form

INC = """\
func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    x = f(2)
    print(x)
    return x
}
"""


def test_call_normal_accepts_clean_program():
    assert check_call_normal(parse(INC)) == []


def test_call_normal_rejects_calling_helper():
    src = """\
func g() -> int {
    return 1
}

func f() -> int {
    return g()
}

func main() -> int {
    return f()
}
"""
    problems = check_call_normal(parse(src))
    assert any("helper calls" in p for p in problems)


def test_call_normal_rejects_nested_call():
    src = """\
func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    x = f(2) + 1
    return x
}
"""
    problems = check_call_normal(parse(src))
    assert any("bare statement or a whole assignment" in p for p in problems)


def test_call_normal_rejects_call_in_condition():
    src = """\
func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    if f(1) > 0 {
        return 1
    }
    return 0
}
"""
    assert check_call_normal(parse(src)) != []


def test_call_normal_rejects_assigned_void_call():
    src = """\
func f() -> void {
    print(1)
}

func main() -> int {
    x = f()
    return 0
}
"""
    problems = check_call_normal(parse(src))
    assert any("void call" in p for p in problems)


def test_call_normal_rejects_call_in_arguments():
    src = """\
func g() -> int {
    return 1
}

func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    x = f(g())
    return x
}
"""
    problems = check_call_normal(parse(src))
    assert any("call-free" in p for p in problems)


# ---------------------------------------------------------------------------
# folding

def test_fold_adds_and_multiplies():
    e = fold_expr(expr("2 * 3 + 1"))
    assert isinstance(e, lang.IntLit) and e.value == 7


def test_fold_negative_result_becomes_unary_minus():
    e = fold_expr(expr("1 - 5"))
    assert isinstance(e, lang.Unary) and e.op == "-"
    assert isinstance(e.operand, lang.IntLit) and e.operand.value == 4


def test_fold_does_not_refold_through_unary():
    e = fold_expr(expr("(1 - 5) * 2"))
    assert isinstance(e, lang.Binary) and e.op == "*"
    assert isinstance(e.lhs, lang.Unary)


def test_fold_overflow_raises():
    big = 2**63 - 1
    with pytest.raises(IntOverflow):
        fold_expr(expr(f"{big} * 2"))


def test_fold_is_idempotent():
    once = fold_expr(expr("x * (4 * (2 + 1) + 3) - (1 - 5)"))
    assert lang.ast_equal(fold_expr(once), once)


def test_fold_ignores_floats():
    e = fold_expr(expr("1.5 * 2"))
    assert isinstance(e, lang.Binary)
    assert isinstance(e.lhs, lang.FloatLit)


def test_fold_output_reparses():
    e = fold_expr(expr("0 - 3"))
    prog = parse("func main() -> int {\n    return 0 - 3\n}\n")
    ret = prog.main.body[0]
    ret.value = e
    text = pretty_print(prog)
    assert "return -3" in text
    parse(text)


def _lit_value(e):
    if isinstance(e, lang.IntLit):
        return e.value
    assert isinstance(e, lang.Unary) and isinstance(e.operand, lang.IntLit)
    return -e.operand.value


@given(st.integers(0, 1000), st.integers(0, 1000), st.integers(0, 1000))
def test_fold_preserves_value(a, b, c):
    e = lang.Binary("-", lang.Binary("*", lang.Binary("+", lang.IntLit(a),
                                                      lang.IntLit(b)),
                                     lang.IntLit(c)),
                    lang.IntLit(a))
    assert _lit_value(fold_expr(e)) == (a + b) * c - a


# ---------------------------------------------------------------------------
# inlining

def test_inline_splices_callee_with_binds_and_result():
    res = inline_all(parse(INC))
    assert pretty_print(res.program) == (
        "func main() -> int {\n"
        "    t0_n = 2\n"
        "    t0_ret = t0_n + 1\n"
        "    x = t0_ret\n"
        "    print(x)\n"
        "    return x\n"
        "}\n"
    )


def test_inline_annotation_marks_tasks_and_glue():
    res = inline_all(parse(INC))
    ann = res.annotation
    validate_annotation(res.program, ann)
    assert ann.task_of == {0: 1, 1: 1, 2: 1, 3: 0, 4: 0}
    assert ann.instance_of == {0: 0, 1: 0, 2: 0}
    assert ann.task_names == {1: "f"}


def test_inline_provenance_records_origin_and_renames():
    res = inline_all(parse(INC))
    prov = res.provenance
    assert prov.origin == {1: "f"}
    assert prov.renames == {1: {"n": "t0_n", "ret": "t0_ret"}}
    assert prov.scales_by_task == {}
    assert prov.reorder_seed is None
    assert not prov.hoisted


def test_inline_preserves_behaviour():
    decomposed = parse(INC)
    res = inline_all(decomposed)
    assert equivalent(decomposed, res.program, [[]]) == []


def test_inline_void_call_drops_trailing_bare_return():
    src = """\
func greet(name: string) -> void {
    print("hi", name)
    return
}

func main() -> void {
    greet("ada")
}
"""
    res = inline_all(parse(src))
    assert pretty_print(res.program) == (
        "func main() -> void {\n"
        "    t0_name = \"ada\"\n"
        "    print(\"hi\", t0_name)\n"
        "}\n"
    )


def test_inline_numbers_instances_per_task():
    src = """\
func cheer() -> void {
    print("hip")
}

func main() -> void {
    cheer()
    cheer()
}
"""
    res = inline_all(parse(src))
    ann = res.annotation
    assert sorted(ann.instance_of.values()) == [0, 1]
    assert set(ann.task_of.values()) == {1}


def test_inline_numbers_tasks_by_first_call():
    src = """\
func a() -> void {
    print("a")
}

func b() -> void {
    print("b")
}

func main() -> void {
    b()
    a()
    b()
}
"""
    res = inline_all(parse(src))
    assert res.annotation.task_names == {1: "b", 2: "a"}


def test_inline_rejects_non_tail_return():
    src = """\
func f(c: bool) -> int {
    if c {
        return 1
    }
    return 0
}

func main() -> int {
    x = f(true)
    return x
}
"""
    with pytest.raises(NonTailReturn):
        inline_all(parse(src))


def test_inline_rejects_void_early_return():
    src = """\
func f(c: bool) -> void {
    if c {
        return
    }
    print(1)
}

func main() -> void {
    f(true)
}
"""
    with pytest.raises(NonTailReturn):
        inline_all(parse(src))


def test_inline_rejects_prefix_collision():
    src = """\
func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    t0_x = 3
    y = f(t0_x)
    return y
}
"""
    with pytest.raises(TransformError, match="prefix"):
        inline_all(parse(src))


def test_inline_requires_call_normal_form():
    src = """\
func f(n: int) -> int {
    return n + 1
}

func main() -> int {
    return f(1) + f(2)
}
"""
    with pytest.raises(NotCallNormal, match="call-normal"):
        inline_all(parse(src))


def test_inline_expands_call_inside_if_block():
    src = """\
func f() -> void {
    print(1)
}

func main(c: bool) -> int {
    if c {
        f()
    }
    return 0
}
"""
    decomposed = parse(src)
    res = inline_all(decomposed)
    validate_annotation(res.program, res.annotation)
    assert equivalent(decomposed, res.program, [[True], [False]]) == []
    if_stmt = res.program.main.body[0]
    assert res.annotation.task_of[if_stmt.sid] == 0
    assert res.annotation.task_of[if_stmt.then[0].sid] == 1


def test_inline_avoids_callee_variable_named_ret():
    src = """\
func f(n: int) -> int {
    ret = n + 1
    return ret
}

func main() -> int {
    x = f(2)
    return x
}
"""
    decomposed = parse(src)
    res = inline_all(decomposed)
    text = pretty_print(res.program)
    assert "t0_ret_ = t0_ret" in text
    assert "x = t0_ret_" in text
    assert equivalent(decomposed, res.program, [[]]) == []


# ---------------------------------------------------------------------------
# scaled inlining

RECT = """\
func rect(s: int) -> void {
    for i in range(0, 2 * s + 1) {
        print("x")
    }
}

func main() -> int {
    rect(1)
    rect(2)
    rect(3)
    return 0
}
"""


def test_scaled_inline_substitutes_and_folds():
    res = inline_all(parse(RECT), scaled=True)
    text = pretty_print(res.program)
    assert "range(0, 3)" in text
    assert "range(0, 5)" in text
    assert "range(0, 7)" in text
    assert "t0_s" not in text  # the scale argument is substituted, not bound
    assert res.provenance is not None
    assert res.provenance.scales_by_task == {1: [1, 2, 3]}


def test_scaled_inline_preserves_behaviour():
    decomposed = parse(RECT)
    res = inline_all(decomposed, scaled=True)
    assert equivalent(decomposed, res.program, [[]]) == []


def test_scaled_inline_reaches_full_repetition_level():
    res = generate(parse(RECT), scales=[1, 2, 3])
    assert res.classification.label.repetition == 3


def test_unscaled_inline_of_same_program_stays_lower():
    res = generate(parse(RECT))
    assert res.classification.label.repetition < 3


def test_generate_checks_declared_scales():
    with pytest.raises(TransformError, match="scales"):
        generate(parse(RECT), scales=[1, 2, 4])


def test_generate_rejects_scales_without_template():
    src = """\
func greet(name: string) -> void {
    print("hi", name)
}

func main() -> void {
    greet("ada")
}
"""
    with pytest.raises(TransformError, match="scale"):
        generate(parse(src), scales=[2])


def _argsets(*values):
    return [[lang.IntLit(v)] for v in values]


def test_scale_param_designation_basic():
    f = parse(RECT).function("rect")
    assert designate_scale_param(f, _argsets(1, 2, 3)) == 0


def test_scale_param_requires_literal_arguments():
    f = parse(RECT).function("rect")
    assert designate_scale_param(f, [[lang.Var("n")], [lang.IntLit(2)]]) is None


def test_scale_param_rejects_quadratic_use():
    src = """\
func f(s: int) -> int {
    return s * s
}

func main() -> int {
    x = f(2)
    return x
}
"""
    f = parse(src).function("f")
    assert designate_scale_param(f, _argsets(2, 3)) is None


def test_scale_param_rejects_reassignment():
    src = """\
func f(s: int) -> int {
    s = s + 1
    return s
}

func main() -> int {
    x = f(2)
    return x
}
"""
    f = parse(src).function("f")
    assert designate_scale_param(f, _argsets(2, 3)) is None


def test_scale_param_allows_negation_and_mixed_products():
    # -s and s * other are fine: the occurrence itself is degree one
    src = """\
func f(s: int, w: int) -> int {
    a = 0 - s
    b = s * w
    return a + b
}

func main() -> int {
    x = f(2, 10)
    return x
}
"""
    f = parse(src).function("f")
    assert designate_scale_param(f, [[lang.IntLit(2), lang.Var("n")]]) == 0


def _rect_template():
    f = parse(RECT).function("rect")
    t = scaled_template(f, _argsets(1, 2, 3))
    assert t is not None and t.scale_index == 0
    return t


def test_instantiate_template_substitutes_scale():
    got = instantiate_template(_rect_template(), 2)
    expected = parse("""\
func main() -> void {
    for i in range(0, 5) {
        print("x")
    }
}
""").main.body
    assert alpha_equal(got, expected)


def test_instantiate_template_rejects_negative_scale():
    with pytest.raises(TransformError, match="non-negative"):
        instantiate_template(_rect_template(), -1)


def test_verify_scaled_accepts_own_instantiation():
    t = _rect_template()
    instances = {i: instantiate_template(t, s) for i, s in enumerate([0, 2, 5])}
    assert verify_scaled(t, instances, {0: 0, 1: 2, 2: 5})


def test_verify_scaled_rejects_perturbed_literal():
    t = _rect_template()
    instances = {0: instantiate_template(t, 2)}
    for s in lang.all_stmts(instances[0]):
        if isinstance(s, lang.ForRange):
            s.lo = lang.IntLit(1)
    assert not verify_scaled(t, instances, {0: 2})


def test_verify_template_instances_accepts_generated():
    decomposed = parse(RECT)
    res = generate(decomposed, scales=[1, 2, 3])
    assert verify_template_instances(res.unstructured, res.annotation,
                                     res.provenance, decomposed) == []


def test_verify_template_instances_detects_tampering():
    decomposed = parse(RECT)
    res = generate(decomposed, scales=[1, 2, 3])
    prog = lang.clone(res.unstructured)
    for s in lang.all_stmts(prog.main.body):
        if isinstance(s, lang.ForRange) and isinstance(s.hi, lang.IntLit) and s.hi.value == 5:
            s.hi = lang.IntLit(6)
    problems = verify_template_instances(prog, res.annotation,
                                         res.provenance, decomposed)
    assert any("instance 1" in p for p in problems)


# ---------------------------------------------------------------------------
# alpha equivalence

def test_alpha_equal_accepts_consistent_renaming():
    a = parse("func main() -> int {\n    x = 1\n    y = x + 2\n    return y\n}\n")
    b = parse("func main() -> int {\n    u = 1\n    v = u + 2\n    return v\n}\n")
    assert alpha_equal(a.main.body, b.main.body)


def test_alpha_equal_requires_bijection():
    a = parse("func main() -> int {\n    x = 1\n    y = x + 2\n    return y\n}\n")
    b = parse("func main() -> int {\n    u = 1\n    u = u + 2\n    return u\n}\n")
    assert not alpha_equal(a.main.body, b.main.body)


def test_alpha_equal_literals_must_match():
    assert not alpha_equal(expr("x + 1"), expr("y + 2"))
    assert alpha_equal(expr("x + 1"), expr("y + 1"))


def test_alpha_equal_call_names_must_match():
    assert not alpha_equal(expr("f(x)"), expr("g(y)"))
    assert alpha_equal(expr("f(x)"), expr("f(y)"))


# ---------------------------------------------------------------------------
# reorder

REORDERABLE = """\
func main(a: int) -> int {
    x = a + 1
    y = a * 2
    print(x)
    print(y)
    return 0
}
"""


def _glue_annotation(program):
    return TaskAnnotation({s.sid: 0 for s in lang.all_stmts(program.main.body)}, {})


def test_reorder_changes_order_and_preserves_behaviour():
    prog = parse(REORDERABLE)
    ann = _glue_annotation(prog)
    out, out_ann, _ = reorder(prog, ann, seed=0)
    validate_annotation(out, out_ann)
    assert pretty_print(out) != pretty_print(prog)
    assert equivalent(prog, out, [[i] for i in range(5)]) == []


def test_reorder_returns_the_applied_permutation():
    prog = parse(REORDERABLE)
    out, _, perm = reorder(prog, _glue_annotation(prog), seed=0)
    assert sorted(perm) == list(range(len(prog.main.body)))
    originals = [pretty_print_with_lines(prog)[0].splitlines()[1 + i].strip()
                 for i in perm]
    shuffled = [line.strip()
                for line in pretty_print(out).splitlines()[1:-1]]
    assert originals == shuffled


def test_reorder_is_deterministic_per_seed():
    prog = parse(REORDERABLE)
    ann = _glue_annotation(prog)
    a, _, pa = reorder(prog, ann, seed=7)
    b, _, pb = reorder(prog, ann, seed=7)
    assert pretty_print(a) == pretty_print(b)
    assert pa == pb


def test_reorder_many_seeds_stay_equivalent():
    prog = parse(REORDERABLE)
    ann = _glue_annotation(prog)
    suite = [[i] for i in range(5)]
    for seed in range(20):
        out, _, _ = reorder(prog, ann, seed=seed)
        assert equivalent(prog, out, suite) == []


def test_reorder_rejects_forced_order():
    src = """\
func main() -> int {
    x = 1
    y = x
    z = y
    return z
}
"""
    prog = parse(src)
    with pytest.raises(OnlyOneOrder):
        reorder(prog, _glue_annotation(prog), seed=0)


def test_reorder_pins_trailing_if_return():
    src = """\
func main(c: bool) -> int {
    x = 1
    y = 2
    if c {
        return x
    } else {
        return y
    }
}
"""
    prog = parse(src)
    for seed in range(5):
        out, _, perm = reorder(prog, _glue_annotation(prog), seed=seed)
        assert isinstance(out.main.body[-1], lang.If)
        assert perm[-1] == len(prog.main.body) - 1
        assert equivalent(prog, out, [[True], [False]]) == []


def test_reorder_keeps_annotation_with_statements():
    prog = parse(REORDERABLE)
    ann = TaskAnnotation({0: 1, 1: 2, 2: 1, 3: 2, 4: 0},
                         {0: 0, 1: 0, 2: 0, 3: 0},
                         {1: "first", 2: "second"})
    validate_annotation(prog, ann)
    out, out_ann, _ = reorder(prog, ann, seed=3)
    validate_annotation(out, out_ann)
    text, lines = pretty_print_with_lines(out)
    by_line = {n: sid for sid, n in lines.items()}
    for n, line in enumerate(text.splitlines(), start=1):
        if line.strip() == "x = a + 1":
            assert out_ann.task_of[by_line[n]] == 1
        if line.strip() == "y = a * 2":
            assert out_ann.task_of[by_line[n]] == 2


# ---------------------------------------------------------------------------
# hoisting

SHARED = """\
func main(r: float) -> float {
    t0_r = r
    t0_area = 3.141592 * t0_r * t0_r
    print(t0_area)
    t1_r = r
    t1_area = 3.141592 * t1_r * t1_r
    print(t1_area)
    return t0_area + t1_area
}
"""

SHARED_ANN = TaskAnnotation(
    {0: 1, 1: 1, 2: 1, 3: 2, 4: 2, 5: 2, 6: 0},
    {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0},
    {1: "soil", 2: "water"},
)


def test_hoist_extracts_shared_expression():
    prog = parse(SHARED)
    res = hoist_common(prog, SHARED_ANN)
    validate_annotation(res.program, res.annotation)
    text = pretty_print(res.program)
    assert "shared_0 = 3.141592 * t0_r * t0_r" in text
    assert text.count("3.141592") == 1
    assert res.name == "shared_0"
    assert res.replaced == [2, 5]
    hoisted_sid = res.program.main.body[1].sid
    assert res.annotation.task_of[hoisted_sid] == 0
    assert equivalent(prog, res.program, [[1.0], [2.5], [0.0]]) == []


def test_hoist_matches_copies_of_the_same_source():
    # t0_r and t1_r are both untouched copies of r, so the two area
    # expressions count as the same value
    prog = parse(SHARED)
    res = hoist_common(prog, SHARED_ANN)
    assert len(res.replaced) == 2


def test_hoist_requires_two_tasks():
    ann = TaskAnnotation(
        {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 0},
        {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1},
        {1: "area"},
    )
    with pytest.raises(NoCommonComputation):
        hoist_common(parse(SHARED), ann)


def test_hoist_requires_a_candidate():
    src = """\
func main(r: float) -> float {
    x = r + 1.0
    y = r * 2.0
    return x + y
}
"""
    prog = parse(src)
    ann = TaskAnnotation({0: 1, 1: 2, 2: 0}, {0: 0, 1: 0}, {1: "a", 2: "b"})
    with pytest.raises(NoCommonComputation):
        hoist_common(prog, ann)


def test_hoist_prefers_larger_expressions():
    src = """\
func main(r: int) -> int {
    x = r * r + 1
    y = r * r + 1
    return x + y
}
"""
    prog = parse(src)
    ann = TaskAnnotation({0: 1, 1: 2, 2: 0}, {0: 0, 1: 0}, {1: "a", 2: "b"})
    res = hoist_common(prog, ann)
    assert "shared_0 = r * r + 1" in pretty_print(res.program)
    assert equivalent(prog, res.program, [[3], [4]]) == []


def test_hoist_skips_loop_headers():
    src = """\
func main(a: int) -> int {
    t0_x = a * 2 + 1
    print(t0_x)
    t1_i = 0
    while t1_i < a * 2 + 1 {
        t1_i = t1_i + 1
    }
    print(t1_i)
    return 0
}
"""
    prog = parse(src)
    ann = TaskAnnotation(
        {0: 1, 1: 1, 2: 2, 3: 2, 4: 2, 5: 2, 6: 0},
        {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0},
        {1: "direct", 2: "loop"},
    )
    with pytest.raises(TransformError):
        hoist_common(prog, ann)


def test_hoist_picks_fresh_name():
    src = """\
func main(r: int) -> int {
    shared_0 = 9
    x = r * r
    y = r * r
    return x + y + shared_0
}
"""
    prog = parse(src)
    ann = TaskAnnotation({0: 0, 1: 1, 2: 2, 3: 0}, {1: 0, 2: 0},
                         {1: "a", 2: "b"})
    res = hoist_common(prog, ann)
    assert res.name == "shared_1"
    assert equivalent(prog, res.program, [[5]]) == []


# ---------------------------------------------------------------------------
# generation pipeline

TWO_TASKS = """\
func area(w: int, h: int) -> int {
    return w * h
}

func perimeter(w: int, h: int) -> int {
    p = w + h
    return p * 2
}

func main(w: int, h: int) -> int {
    a = area(w, h)
    p = perimeter(w, h)
    print(a, p)
    return a - p
}
"""


def test_generate_end_to_end():
    decomposed = parse(TWO_TASKS)
    res = generate(decomposed)
    validate_annotation(res.unstructured, res.annotation)
    assert res.classification.label.astuple() == (0, 1, 1)
    assert equivalent(decomposed, res.unstructured, [[3, 4], [5, 6]]) == []


MINI_GARDEN = """\
func soil(r: float) -> float {
    area = 3.141592 * r * r
    return 10.0 - area
}

func water(r: float) -> float {
    area = 3.141592 * r * r
    return area * 2.0
}

func main(r: float) -> float {
    s = soil(r)
    w = water(r)
    print(s, w)
    return s
}
"""


def test_generate_hoist_creates_shared_dependency():
    decomposed = parse(MINI_GARDEN)
    res = generate(decomposed, hoist=True)
    assert res.provenance.hoisted
    assert res.classification.label.data == 3
    assert equivalent(decomposed, res.unstructured, [[1.0], [0.5]]) == []


def test_generate_reorder_falls_back_on_forced_order():
    res = generate(parse(INC), reorder_seed=5)
    assert not res.reorder_applied
    assert res.provenance.reorder_seed is None
    assert pretty_print(res.unstructured) == \
        pretty_print(inline_all(parse(INC)).program)


def test_generate_records_reorder_seed():
    decomposed = parse(TWO_TASKS)
    res = generate(decomposed, reorder_seed=11)
    assert res.reorder_applied
    assert res.provenance.reorder_seed == 11
    assert equivalent(decomposed, res.unstructured, [[3, 4]]) == []


def test_replay_reproduces_generated_program():
    decomposed = parse(TWO_TASKS)
    res = generate(decomposed, reorder_seed=11)
    prog, ann = replay(decomposed, res.provenance)
    assert pretty_print(prog) == pretty_print(res.unstructured)
    assert ann.task_of == res.annotation.task_of


def test_replay_reproduces_scaled_and_hoisted():
    cases = [(RECT, dict(scales=[1, 2, 3])), (MINI_GARDEN, dict(hoist=True))]
    for src, kwargs in cases:
        decomposed = parse(src)
        res = generate(decomposed, **kwargs)
        prog, _ = replay(decomposed, res.provenance)
        assert pretty_print(prog) == pretty_print(res.unstructured)


def test_replay_checks_scales_against_reference():
    decomposed = parse(RECT)
    res = generate(decomposed, scales=[1, 2, 3])
    res.provenance.scales_by_task = {1: [1, 2, 4]}
    with pytest.raises(TransformError, match="scales"):
        replay(decomposed, res.provenance)


def test_generate_with_reorder_stays_equivalent():
    decomposed = parse(TWO_TASKS)
    res = generate(decomposed, reorder_seed=1)
    validate_annotation(res.unstructured, res.annotation)
    assert equivalent(decomposed, res.unstructured, [[3, 4], [5, 6]]) == []
