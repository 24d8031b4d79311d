"""Tree-walking interpreter for MiniProc.

Runtime values are immutable: lists are stored as tuples of values, which
gives the language's copy-on-assign list semantics for free (an assignment
shares the tuple; an index-assignment builds a new one).

Integers are 64-bit signed and overflow is an error.  `/` truncates toward
zero on ints and is true division on floats; division by zero is an error for
both.  `%` is int-only and takes the sign of the dividend.  Ints promote to
floats when mixed in arithmetic or comparisons.  `and`/`or` short-circuit and
require bools.  Declared parameter types are used to coerce the input tuple
handed to main; calls between functions are dynamically typed.

A run produces a Trace: the printed lines plus main's result.  Runtime errors
carry the kind, the enclosing statement's source position, and the lines
printed so far.  Two programs are behaviorally equivalent on an input when
their printed lines match in order, their results match, or both runs fail
with the same kind of error.
"""

from dataclasses import dataclass

from . import lang

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

# runtime error kinds
TYPE_MISMATCH = "TypeMismatch"
DIVISION_BY_ZERO = "DivisionByZero"
INDEX_OUT_OF_BOUNDS = "IndexOutOfBounds"
UNBOUND_VARIABLE = "UnboundVariable"
INT_OVERFLOW = "IntOverflow"
STEP_LIMIT_EXCEEDED = "StepLimitExceeded"
LIST_TOO_LONG = "ListTooLong"


@dataclass(frozen=True)
class Value:
    kind: str  # "int" | "float" | "bool" | "string" | "list"
    v: object  # int | float | bool | str | tuple[Value, ...]


def vint(n):
    return Value("int", n)


def vfloat(x):
    return Value("float", x)


def vbool(b):
    return Value("bool", b)


def vstr(s):
    return Value("string", s)


def vlist(items):
    return Value("list", tuple(items))


@dataclass
class RunLimits:
    max_steps: int = 10_000_000
    max_list_len: int = 1_000_000


@dataclass
class Trace:
    lines: list
    result: Value | None
    error: str | None = None  # error kind when the run aborted


class MiniProcError(Exception):
    """A runtime error, positioned at the enclosing statement."""

    def __init__(self, kind, msg, pos, lines=()):
        super().__init__(f"{kind} at {pos}: {msg}" if pos else f"{kind}: {msg}")
        self.kind = kind
        self.msg = msg
        self.pos = pos
        self.lines = list(lines)


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


def format_value(val):
    """Render a value the way print and the trace display it."""
    if val.kind == "int":
        return str(val.v)
    if val.kind == "float":
        return f"{val.v:.6f}"
    if val.kind == "bool":
        return "true" if val.v else "false"
    if val.kind == "string":
        return val.v
    if val.kind == "list":
        return "[" + ", ".join(format_value(e) for e in val.v) + "]"
    raise TypeError(val.kind)


def values_equal(a, b):
    if a.kind == b.kind == "list":
        return len(a.v) == len(b.v) and all(values_equal(x, y) for x, y in zip(a.v, b.v))
    if a.kind in ("int", "float") and b.kind in ("int", "float"):
        return a.v == b.v
    if a.kind != b.kind:
        return False
    return a.v == b.v


def coerce_input(raw, declared):
    """Turn one JSON-style input into a Value of the declared parameter type."""
    if declared == "int":
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ValueError(f"expected int, got {raw!r}")
        if not INT_MIN <= raw <= INT_MAX:
            raise ValueError(f"int input {raw} out of 64-bit range")
        return vint(raw)
    if declared == "float":
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ValueError(f"expected float, got {raw!r}")
        return vfloat(float(raw))
    if declared == "bool":
        if not isinstance(raw, bool):
            raise ValueError(f"expected bool, got {raw!r}")
        return vbool(raw)
    if declared == "string":
        if not isinstance(raw, str):
            raise ValueError(f"expected string, got {raw!r}")
        return vstr(raw)
    if declared == "list":
        if not isinstance(raw, list):
            raise ValueError(f"expected list, got {raw!r}")
        return vlist(_infer_value(x) for x in raw)
    raise ValueError(f"parameter of type {declared!r} cannot receive input")


def _infer_value(raw):
    if isinstance(raw, bool):
        return vbool(raw)
    if isinstance(raw, int):
        if not INT_MIN <= raw <= INT_MAX:
            raise ValueError(f"int input {raw} out of 64-bit range")
        return vint(raw)
    if isinstance(raw, float):
        return vfloat(raw)
    if isinstance(raw, str):
        return vstr(raw)
    if isinstance(raw, list):
        return vlist(_infer_value(x) for x in raw)
    raise ValueError(f"cannot build a value from {raw!r}")


def value_to_json(val):
    if val.kind == "list":
        return [value_to_json(e) for e in val.v]
    return val.v


def coerce_args(program, raw_args):
    params = program.main.params
    if len(raw_args) != len(params):
        raise ValueError(f"main takes {len(params)} argument(s), got {len(raw_args)}")
    return [coerce_input(raw, p.type) for raw, p in zip(raw_args, params)]


class _Interp:
    def __init__(self, program, limits):
        self.program = program
        self.limits = limits
        self.funcs = {f.name: f for f in program.functions}
        self.lines = []
        self.steps = 0
        self.pos = lang.SourcePos(0, 0)  # enclosing statement position

    def fail(self, kind, msg):
        raise MiniProcError(kind, msg, self.pos, self.lines)

    def charge(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            self.fail(STEP_LIMIT_EXCEEDED, f"exceeded {self.limits.max_steps} steps")

    def run_main(self, args):
        env = {p.name: a for p, a in zip(self.program.main.params, args)}
        try:
            self.exec_block(self.program.main.body, env)
        except _ReturnSignal as r:
            return Trace(self.lines, r.value)
        return Trace(self.lines, None)

    def call(self, name, args):
        f = self.funcs[name]
        env = {p.name: a for p, a in zip(f.params, args)}
        try:
            self.exec_block(f.body, env)
        except _ReturnSignal as r:
            return r.value
        return None

    def exec_block(self, stmts, env):
        for s in stmts:
            self.exec_stmt(s, env)

    def exec_stmt(self, s, env):
        self.pos = s.pos
        self.charge()
        if isinstance(s, lang.Assign):
            env[s.target] = self.eval(s.value, env)
        elif isinstance(s, lang.IndexAssign):
            base = env.get(s.target)
            if base is None:
                self.fail(UNBOUND_VARIABLE, f"variable {s.target!r} is not defined")
            if base.kind != "list":
                self.fail(TYPE_MISMATCH, f"{s.target!r} is not a list")
            idx = self.eval(s.index, env)
            if idx.kind != "int":
                self.fail(TYPE_MISMATCH, "list index must be int")
            if not 0 <= idx.v < len(base.v):
                self.fail(INDEX_OUT_OF_BOUNDS,
                          f"index {idx.v} out of bounds for length {len(base.v)}")
            val = self.eval(s.value, env)
            items = list(base.v)
            items[idx.v] = val
            env[s.target] = vlist(items)
        elif isinstance(s, lang.Print):
            vals = [self.eval(a, env) for a in s.args]
            self.lines.append(" ".join(format_value(v) for v in vals))
        elif isinstance(s, lang.If):
            cond = self.eval(s.cond, env)
            if cond.kind != "bool":
                self.fail(TYPE_MISMATCH, "if condition must be bool")
            self.exec_block(s.then if cond.v else s.orelse, env)
        elif isinstance(s, lang.While):
            while True:
                cond = self.eval(s.cond, env)
                if cond.kind != "bool":
                    self.fail(TYPE_MISMATCH, "while condition must be bool")
                if not cond.v:
                    break
                self.exec_block(s.body, env)
                self.pos = s.pos
                self.charge()
        elif isinstance(s, lang.ForRange):
            lo = self.eval(s.lo, env)
            hi = self.eval(s.hi, env)
            if lo.kind != "int" or hi.kind != "int":
                self.fail(TYPE_MISMATCH, "range bounds must be ints")
            for i in range(lo.v, hi.v):
                env[s.var] = vint(i)
                self.exec_block(s.body, env)
                self.pos = s.pos
                self.charge()
        elif isinstance(s, lang.Return):
            raise _ReturnSignal(None if s.value is None else self.eval(s.value, env))
        elif isinstance(s, lang.ExprStmt):
            # a call in statement position may discard its result (or have none)
            args = [self.eval(a, env) for a in s.call.args]
            self.call(s.call.func, args)
        else:
            raise TypeError(type(s))

    def eval(self, e, env):
        if isinstance(e, lang.IntLit):
            return vint(e.value)
        if isinstance(e, lang.FloatLit):
            return vfloat(e.value)
        if isinstance(e, lang.BoolLit):
            return vbool(e.value)
        if isinstance(e, lang.StrLit):
            return vstr(e.value)
        if isinstance(e, lang.ListLit):
            if len(e.elements) > self.limits.max_list_len:
                self.fail(LIST_TOO_LONG, f"list longer than {self.limits.max_list_len}")
            return vlist(self.eval(x, env) for x in e.elements)
        if isinstance(e, lang.Var):
            val = env.get(e.name)
            if val is None:
                self.fail(UNBOUND_VARIABLE, f"variable {e.name!r} is not defined")
            return val
        if isinstance(e, lang.Len):
            val = self.eval(e.arg, env)
            if val.kind != "list":
                self.fail(TYPE_MISMATCH, "len expects a list")
            return vint(len(val.v))
        if isinstance(e, lang.Index):
            base = self.eval(e.base, env)
            if base.kind != "list":
                self.fail(TYPE_MISMATCH, "only lists can be indexed")
            idx = self.eval(e.index, env)
            if idx.kind != "int":
                self.fail(TYPE_MISMATCH, "list index must be int")
            if not 0 <= idx.v < len(base.v):
                self.fail(INDEX_OUT_OF_BOUNDS,
                          f"index {idx.v} out of bounds for length {len(base.v)}")
            return base.v[idx.v]
        if isinstance(e, lang.Call):
            args = [self.eval(a, env) for a in e.args]
            res = self.call(e.func, args)
            if res is None:
                self.fail(TYPE_MISMATCH, f"void call {e.func}() used as a value")
            return res
        if isinstance(e, lang.Unary):
            val = self.eval(e.operand, env)
            if e.op == "not":
                if val.kind != "bool":
                    self.fail(TYPE_MISMATCH, "not expects a bool")
                return vbool(not val.v)
            if val.kind == "int":
                return self.check_int(-val.v)
            if val.kind == "float":
                return vfloat(-val.v)
            self.fail(TYPE_MISMATCH, "unary - expects a number")
        if isinstance(e, lang.Binary):
            return self.binop(e, env)
        raise TypeError(type(e))

    def check_int(self, n):
        if not INT_MIN <= n <= INT_MAX:
            self.fail(INT_OVERFLOW, f"integer result {n} overflows 64 bits")
        return vint(n)

    def binop(self, e, env):
        op = e.op
        if op in ("and", "or"):
            lhs = self.eval(e.lhs, env)
            if lhs.kind != "bool":
                self.fail(TYPE_MISMATCH, f"{op} expects bools")
            if op == "and" and not lhs.v:
                return vbool(False)
            if op == "or" and lhs.v:
                return vbool(True)
            rhs = self.eval(e.rhs, env)
            if rhs.kind != "bool":
                self.fail(TYPE_MISMATCH, f"{op} expects bools")
            return vbool(rhs.v)

        a = self.eval(e.lhs, env)
        b = self.eval(e.rhs, env)

        if op == "==":
            return vbool(self.eq_check(a, b))
        if op == "!=":
            return vbool(not self.eq_check(a, b))
        if op in ("<", "<=", ">", ">="):
            if a.kind not in ("int", "float") or b.kind not in ("int", "float"):
                self.fail(TYPE_MISMATCH, f"{op} expects numbers")
            res = {"<": a.v < b.v, "<=": a.v <= b.v,
                   ">": a.v > b.v, ">=": a.v >= b.v}[op]
            return vbool(res)

        if op == "+" and a.kind == b.kind == "string":
            return vstr(a.v + b.v)

        if a.kind not in ("int", "float") or b.kind not in ("int", "float"):
            self.fail(TYPE_MISMATCH, f"{op} expects numbers")
        both_int = a.kind == b.kind == "int"

        if op == "+":
            return self.check_int(a.v + b.v) if both_int else vfloat(a.v + b.v)
        if op == "-":
            return self.check_int(a.v - b.v) if both_int else vfloat(a.v - b.v)
        if op == "*":
            return self.check_int(a.v * b.v) if both_int else vfloat(a.v * b.v)
        if op == "/":
            if both_int:
                if b.v == 0:
                    self.fail(DIVISION_BY_ZERO, "integer division by zero")
                q = abs(a.v) // abs(b.v)
                if (a.v < 0) != (b.v < 0):
                    q = -q
                return self.check_int(q)
            if b.v == 0:
                self.fail(DIVISION_BY_ZERO, "float division by zero")
            return vfloat(a.v / b.v)
        if op == "%":
            if not both_int:
                self.fail(TYPE_MISMATCH, "% expects ints")
            if b.v == 0:
                self.fail(DIVISION_BY_ZERO, "modulo by zero")
            q = abs(a.v) // abs(b.v)
            if (a.v < 0) != (b.v < 0):
                q = -q
            return self.check_int(a.v - b.v * q)
        raise TypeError(op)

    def eq_check(self, a, b):
        numeric = ("int", "float")
        if a.kind in numeric and b.kind in numeric:
            return a.v == b.v
        if a.kind != b.kind:
            self.fail(TYPE_MISMATCH, f"cannot compare {a.kind} with {b.kind}")
        return values_equal(a, b)


def run(program, args, limits=None):
    """Execute main with already-coerced Value arguments; returns a Trace."""
    interp = _Interp(program, limits or RunLimits())
    return interp.run_main(args)


def run_on_input(program, raw_args, limits=None):
    """Coerce a JSON-style input tuple through main's signature, then run."""
    return run(program, coerce_args(program, raw_args), limits)


def safe_run(program, raw_args, limits=None):
    """Like run_on_input but folds a runtime error into the Trace."""
    try:
        return run_on_input(program, raw_args, limits)
    except MiniProcError as err:
        return Trace(err.lines, None, error=err.kind)


@dataclass
class Divergence:
    input_index: int
    where: str  # "line" | "result" | "error"
    index: int  # line number (0-based) for "line", -1 otherwise
    expected: str
    actual: str


_ABSENT = "<absent>"


def compare_traces(expected, actual, input_index=0):
    """First point where two traces differ, or None if they agree."""
    if expected.error is not None or actual.error is not None:
        if expected.error == actual.error:
            return None
        return Divergence(input_index, "error", -1,
                          expected.error or "<no error>", actual.error or "<no error>")
    for i, (want, got) in enumerate(zip(expected.lines, actual.lines)):
        if want != got:
            return Divergence(input_index, "line", i, want, got)
    if len(expected.lines) != len(actual.lines):
        i = min(len(expected.lines), len(actual.lines))
        want = expected.lines[i] if i < len(expected.lines) else _ABSENT
        got = actual.lines[i] if i < len(actual.lines) else _ABSENT
        return Divergence(input_index, "line", i, want, got)
    er, ar = expected.result, actual.result
    if (er is None) != (ar is None) or (er is not None and not values_equal(er, ar)):
        return Divergence(input_index, "result", -1,
                          _ABSENT if er is None else format_value(er),
                          _ABSENT if ar is None else format_value(ar))
    return None


def equivalent(prog_a, prog_b, input_suite, limits=None):
    """Run both programs on every input; returns the list of divergences."""
    out = []
    for i, raw_args in enumerate(input_suite):
        d = compare_traces(safe_run(prog_a, raw_args, limits),
                           safe_run(prog_b, raw_args, limits), i)
        if d is not None:
            out.append(d)
    return out
