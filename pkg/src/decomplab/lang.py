"""MiniProc: a small procedural language for code-structuring exercises.

Grammar (statements end at newlines only incidentally; whitespace is free):

    program  := funcdef+
    funcdef  := "func" IDENT "(" paramlist? ")" "->" type block
    param    := IDENT ":" type
    type     := "int" | "float" | "bool" | "string" | "list" | "void"
    block    := "{" stmt* "}"
    stmt     := IDENT "=" expr
              | IDENT "[" expr "]" "=" expr
              | "print" "(" exprlist? ")"
              | "if" expr block ("else" block)?
              | "while" expr block
              | "for" IDENT "in" "range" "(" expr "," expr ")" block
              | "return" expr?
              | IDENT "(" exprlist? ")"

Precedence, low to high: or, and, not, comparisons (non-associative),
"+"/"-", "*"/"/"/"%", unary "-", postfix index / len / call.
Comments run from "#" to end of line.  Source files use the .mp extension.

Statement ids are assigned in pre-order over the whole program (functions in
declaration order, compound statements before their bodies), forming a
bijection onto 0..N-1.
"""

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# positions and errors

@dataclass(frozen=True)
class SourcePos:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


class LangError(Exception):
    """Base for all parse-time errors; carries a best-effort source position."""

    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{pos}: {msg}")
        self.msg = msg
        self.pos = pos


class ParseError(LangError):
    def __init__(self, msg, pos, expected=()):
        super().__init__(msg, pos)
        self.expected = frozenset(expected)


class DuplicateFunction(LangError):
    pass


class MissingMain(LangError):
    pass


class RecursionNotSupported(LangError):
    pass


# ---------------------------------------------------------------------------
# AST

TYPES = ("int", "float", "bool", "string", "list", "void")


@dataclass(eq=False)
class Node:
    pass


@dataclass(eq=False)
class Expr(Node):
    pass


@dataclass(eq=False)
class IntLit(Expr):
    value: int


@dataclass(eq=False)
class FloatLit(Expr):
    value: float


@dataclass(eq=False)
class BoolLit(Expr):
    value: bool


@dataclass(eq=False)
class StrLit(Expr):
    value: str


@dataclass(eq=False)
class ListLit(Expr):
    elements: list


@dataclass(eq=False)
class Var(Expr):
    name: str


@dataclass(eq=False)
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass(eq=False)
class Unary(Expr):
    op: str  # "-" or "not"
    operand: Expr


@dataclass(eq=False)
class Call(Expr):
    func: str
    args: list


@dataclass(eq=False)
class Index(Expr):
    base: Expr
    index: Expr


@dataclass(eq=False)
class Len(Expr):
    arg: Expr


@dataclass(eq=False)
class Stmt(Node):
    pos: SourcePos = field(default=SourcePos(0, 0), kw_only=True)
    sid: int = field(default=-1, kw_only=True)


@dataclass(eq=False)
class Assign(Stmt):
    target: str
    value: Expr


@dataclass(eq=False)
class IndexAssign(Stmt):
    target: str
    index: Expr
    value: Expr


@dataclass(eq=False)
class Print(Stmt):
    args: list


@dataclass(eq=False)
class If(Stmt):
    cond: Expr
    then: list
    orelse: list  # empty list when there is no else clause


@dataclass(eq=False)
class While(Stmt):
    cond: Expr
    body: list


@dataclass(eq=False)
class ForRange(Stmt):
    var: str
    lo: Expr
    hi: Expr
    body: list


@dataclass(eq=False)
class Return(Stmt):
    value: Expr | None


@dataclass(eq=False)
class ExprStmt(Stmt):
    call: Call


@dataclass(eq=False)
class Param(Node):
    name: str
    type: str


@dataclass(eq=False)
class FuncDef(Node):
    name: str
    params: list
    return_type: str
    body: list
    pos: SourcePos = field(default=SourcePos(0, 0), kw_only=True)


@dataclass(eq=False)
class Program(Node):
    functions: list

    def function(self, name):
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)

    @property
    def main(self):
        return self.function("main")


COMPOUND = (If, While, ForRange)


# ---------------------------------------------------------------------------
# lexer

KEYWORDS = {
    "func", "if", "else", "while", "for", "in", "range", "return", "print",
    "len", "true", "false", "and", "or", "not",
} | set(TYPES)

_PUNCT = ("->", "==", "!=", "<=", ">=", "(", ")", "{", "}", "[", "]", ",",
          ":", "=", "<", ">", "+", "-", "*", "/", "%")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "float", "string", "punct", "kw", "eof"
    text: str
    pos: SourcePos
    value: object = None


def tokenize(src):
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if c == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        pos = SourcePos(line, col)
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            is_float = False
            if j < n and src[j] == "." and j + 1 < n and src[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            text = src[i:j]
            if is_float:
                v = float(text)
                if v == float("inf"):
                    raise ParseError(f"float literal {text} overflows", pos)
                toks.append(Token("float", text, pos, v))
            else:
                v = int(text)
                if v > 2**63 - 1:
                    raise ParseError(f"integer literal {text} exceeds 64-bit range", pos)
                toks.append(Token("int", text, pos, v))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            text = src[i:j]
            toks.append(Token("kw" if text in KEYWORDS else "ident", text, pos))
            col += j - i
            i = j
            continue
        if c == '"':
            j = i + 1
            out = []
            while True:
                if j >= n or src[j] == "\n":
                    raise ParseError("unterminated string literal", pos)
                ch = src[j]
                if ch == '"':
                    j += 1
                    break
                if ch == "\\":
                    if j + 1 >= n:
                        raise ParseError("unterminated string literal", pos)
                    esc = src[j + 1]
                    mapped = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(esc)
                    if mapped is None:
                        raise ParseError(f"unknown escape \\{esc}", SourcePos(line, col + j - i))
                    out.append(mapped)
                    j += 2
                    continue
                out.append(ch)
                j += 1
            toks.append(Token("string", src[i:j], pos, "".join(out)))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if src.startswith(p, i):
                toks.append(Token("punct", p, pos))
                i += len(p)
                col += len(p)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", pos)
    toks.append(Token("eof", "", SourcePos(line, col)))
    return toks


# ---------------------------------------------------------------------------
# parser

_CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")


class Parser:
    def __init__(self, src):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self):
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at_punct(self, text):
        t = self.peek()
        return t.kind == "punct" and t.text == text

    def at_kw(self, word):
        t = self.peek()
        return t.kind == "kw" and t.text == word

    def expect_punct(self, text):
        if not self.at_punct(text):
            t = self.peek()
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}",
                             t.pos, expected=(text,))
        return self.advance()

    def expect_kw(self, word):
        if not self.at_kw(word):
            t = self.peek()
            raise ParseError(f"expected {word!r}, found {t.text or 'end of input'!r}",
                             t.pos, expected=(word,))
        return self.advance()

    def expect_ident(self):
        t = self.peek()
        if t.kind != "ident":
            raise ParseError(f"expected identifier, found {t.text or 'end of input'!r}",
                             t.pos, expected=("identifier",))
        return self.advance()

    def parse_program(self):
        functions = []
        while not self.peek().kind == "eof":
            functions.append(self.parse_funcdef())
        if not functions:
            raise ParseError("empty program: expected at least one function",
                             self.peek().pos, expected=("func",))
        return Program(functions)

    def parse_funcdef(self):
        start = self.expect_kw("func")
        name = self.expect_ident().text
        self.expect_punct("(")
        params = []
        if not self.at_punct(")"):
            while True:
                pname = self.expect_ident().text
                self.expect_punct(":")
                params.append(Param(pname, self.parse_type()))
                if self.at_punct(","):
                    self.advance()
                    continue
                break
        self.expect_punct(")")
        self.expect_punct("->")
        rtype = self.parse_type()
        body = self.parse_block()
        return FuncDef(name, params, rtype, body, pos=start.pos)

    def parse_type(self):
        t = self.peek()
        if t.kind == "kw" and t.text in TYPES:
            self.advance()
            return t.text
        raise ParseError(f"expected type, found {t.text or 'end of input'!r}",
                         t.pos, expected=TYPES)

    def parse_block(self):
        self.expect_punct("{")
        stmts = []
        while not self.at_punct("}"):
            if self.peek().kind == "eof":
                raise ParseError("unterminated block", self.peek().pos, expected=("}",))
            stmts.append(self.parse_stmt())
        self.expect_punct("}")
        return stmts

    def parse_stmt(self):
        t = self.peek()
        if t.kind == "kw":
            if t.text == "print":
                self.advance()
                self.expect_punct("(")
                args = self.parse_exprlist(")")
                self.expect_punct(")")
                return Print(args, pos=t.pos)
            if t.text == "if":
                self.advance()
                cond = self.parse_expr()
                then = self.parse_block()
                orelse = []
                if self.at_kw("else"):
                    self.advance()
                    orelse = self.parse_block()
                return If(cond, then, orelse, pos=t.pos)
            if t.text == "while":
                self.advance()
                cond = self.parse_expr()
                return While(cond, self.parse_block(), pos=t.pos)
            if t.text == "for":
                self.advance()
                var = self.expect_ident().text
                self.expect_kw("in")
                self.expect_kw("range")
                self.expect_punct("(")
                lo = self.parse_expr()
                self.expect_punct(",")
                hi = self.parse_expr()
                self.expect_punct(")")
                return ForRange(var, lo, hi, self.parse_block(), pos=t.pos)
            if t.text == "return":
                self.advance()
                if self.at_punct("}"):
                    return Return(None, pos=t.pos)
                return Return(self.parse_expr(), pos=t.pos)
            raise ParseError(f"unexpected keyword {t.text!r} at statement start", t.pos)
        if t.kind == "ident":
            nxt = self.peek(1)
            if nxt.kind == "punct" and nxt.text == "=":
                self.advance()
                self.advance()
                return Assign(t.text, self.parse_expr(), pos=t.pos)
            if nxt.kind == "punct" and nxt.text == "[":
                self.advance()
                self.advance()
                index = self.parse_expr()
                self.expect_punct("]")
                self.expect_punct("=")
                return IndexAssign(t.text, index, self.parse_expr(), pos=t.pos)
            if nxt.kind == "punct" and nxt.text == "(":
                self.advance()
                self.advance()
                args = self.parse_exprlist(")")
                self.expect_punct(")")
                return ExprStmt(Call(t.text, args), pos=t.pos)
            raise ParseError(
                f"expected '=', '[' or '(' after identifier {t.text!r}", nxt.pos,
                expected=("=", "[", "("))
        raise ParseError(f"expected statement, found {t.text or 'end of input'!r}", t.pos)

    def parse_exprlist(self, closer):
        args = []
        if not self.at_punct(closer):
            while True:
                args.append(self.parse_expr())
                if self.at_punct(","):
                    self.advance()
                    continue
                break
        return args

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        e = self.parse_and()
        while self.at_kw("or"):
            self.advance()
            e = Binary("or", e, self.parse_and())
        return e

    def parse_and(self):
        e = self.parse_not()
        while self.at_kw("and"):
            self.advance()
            e = Binary("and", e, self.parse_not())
        return e

    def parse_not(self):
        if self.at_kw("not"):
            self.advance()
            return Unary("not", self.parse_not())
        return self.parse_cmp()

    def parse_cmp(self):
        e = self.parse_add()
        t = self.peek()
        if t.kind == "punct" and t.text in _CMP_OPS:
            self.advance()
            e = Binary(t.text, e, self.parse_add())
            t2 = self.peek()
            if t2.kind == "punct" and t2.text in _CMP_OPS:
                raise ParseError("comparisons are non-associative; parenthesize", t2.pos)
        return e

    def parse_add(self):
        e = self.parse_mul()
        while True:
            t = self.peek()
            if t.kind == "punct" and t.text in ("+", "-"):
                self.advance()
                e = Binary(t.text, e, self.parse_mul())
            else:
                return e

    def parse_mul(self):
        e = self.parse_unary()
        while True:
            t = self.peek()
            if t.kind == "punct" and t.text in ("*", "/", "%"):
                self.advance()
                e = Binary(t.text, e, self.parse_unary())
            else:
                return e

    def parse_unary(self):
        if self.at_punct("-"):
            self.advance()
            return Unary("-", self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self):
        e = self.parse_primary()
        while self.at_punct("["):
            self.advance()
            index = self.parse_expr()
            self.expect_punct("]")
            e = Index(e, index)
        return e

    def parse_primary(self):
        t = self.peek()
        if t.kind == "int":
            self.advance()
            return IntLit(t.value)
        if t.kind == "float":
            self.advance()
            return FloatLit(t.value)
        if t.kind == "string":
            self.advance()
            return StrLit(t.value)
        if t.kind == "kw" and t.text in ("true", "false"):
            self.advance()
            return BoolLit(t.text == "true")
        if t.kind == "kw" and t.text == "len":
            self.advance()
            self.expect_punct("(")
            arg = self.parse_expr()
            self.expect_punct(")")
            return Len(arg)
        if t.kind == "ident":
            self.advance()
            if self.at_punct("("):
                self.advance()
                args = self.parse_exprlist(")")
                self.expect_punct(")")
                return Call(t.text, args)
            return Var(t.text)
        if self.at_punct("["):
            self.advance()
            elems = self.parse_exprlist("]")
            self.expect_punct("]")
            return ListLit(elems)
        if self.at_punct("("):
            self.advance()
            e = self.parse_expr()
            self.expect_punct(")")
            return e
        raise ParseError(f"expression expected, found {t.text or 'end of input'!r}", t.pos)


# ---------------------------------------------------------------------------
# program-level validation

def _walk_calls(stmts, out):
    for s in stmts:
        for e in stmt_exprs(s):
            _expr_calls(e, out)
        for child in stmt_blocks(s):
            _walk_calls(child, out)


def _expr_calls(e, out):
    if isinstance(e, Call):
        out.append(e)
        for a in e.args:
            _expr_calls(a, out)
    elif isinstance(e, Binary):
        _expr_calls(e.lhs, out)
        _expr_calls(e.rhs, out)
    elif isinstance(e, Unary):
        _expr_calls(e.operand, out)
    elif isinstance(e, Index):
        _expr_calls(e.base, out)
        _expr_calls(e.index, out)
    elif isinstance(e, Len):
        _expr_calls(e.arg, out)
    elif isinstance(e, ListLit):
        for el in e.elements:
            _expr_calls(el, out)


def stmt_exprs(s):
    """Expressions evaluated directly by statement s (not by its sub-statements)."""
    if isinstance(s, Assign):
        return [s.value]
    if isinstance(s, IndexAssign):
        return [s.index, s.value]
    if isinstance(s, Print):
        return list(s.args)
    if isinstance(s, If):
        return [s.cond]
    if isinstance(s, While):
        return [s.cond]
    if isinstance(s, ForRange):
        return [s.lo, s.hi]
    if isinstance(s, Return):
        return [] if s.value is None else [s.value]
    if isinstance(s, ExprStmt):
        return [s.call]
    raise TypeError(type(s))


def stmt_blocks(s):
    """Child statement blocks of a compound statement."""
    if isinstance(s, If):
        return [s.then, s.orelse]
    if isinstance(s, (While,)):
        return [s.body]
    if isinstance(s, ForRange):
        return [s.body]
    return []


def _ends_in_return(stmts):
    if not stmts:
        return False
    last = stmts[-1]
    if isinstance(last, Return):
        return True
    if isinstance(last, If) and last.orelse:
        return _ends_in_return(last.then) and _ends_in_return(last.orelse)
    return False


def _has_valued_return(stmts):
    for s in stmts:
        if isinstance(s, Return) and s.value is not None:
            return True
        if any(_has_valued_return(b) for b in stmt_blocks(s)):
            return True
    return False


def validate_program(p):
    seen = {}
    for f in p.functions:
        if f.name in seen:
            raise DuplicateFunction(f"function {f.name!r} defined twice", f.pos)
        seen[f.name] = f
    if "main" not in seen:
        raise MissingMain("program has no 'main' function")
    for f in p.functions:
        pnames = set()
        for prm in f.params:
            if prm.name in pnames:
                raise ParseError(f"duplicate parameter {prm.name!r} in {f.name!r}", f.pos)
            pnames.add(prm.name)
        calls = []
        _walk_calls(f.body, calls)
        for c in calls:
            callee = seen.get(c.func)
            if callee is None:
                raise ParseError(f"call to undefined function {c.func!r}", f.pos)
            if len(c.args) != len(callee.params):
                raise ParseError(
                    f"{c.func!r} takes {len(callee.params)} argument(s), got {len(c.args)}",
                    f.pos)
        if f.return_type == "void":
            if _has_valued_return(f.body):
                raise ParseError(f"void function {f.name!r} returns a value", f.pos)
        else:
            if not _ends_in_return(f.body):
                raise ParseError(
                    f"non-void function {f.name!r} must end every path in a return", f.pos)
    # recursion check: DFS for cycles over the static call graph
    edges = {}
    for f in p.functions:
        calls = []
        _walk_calls(f.body, calls)
        edges[f.name] = {c.func for c in calls}
    state = {}  # 0 visiting, 1 done

    def visit(name, trail):
        if state.get(name) == 1:
            return
        if state.get(name) == 0:
            cyc = " -> ".join(trail + [name])
            raise RecursionNotSupported(f"recursive call chain: {cyc}")
        state[name] = 0
        for callee in sorted(edges.get(name, ())):
            visit(callee, trail + [name])
        state[name] = 1

    for f in p.functions:
        visit(f.name, [])


def assign_ids(p):
    """Number every statement pre-order across the program, 0..N-1."""
    counter = 0

    def number(stmts):
        nonlocal counter
        for s in stmts:
            s.sid = counter
            counter += 1
            for b in stmt_blocks(s):
                number(b)

    for f in p.functions:
        number(f.body)
    return counter


def parse(src):
    """Parse and validate MiniProc source, returning a Program with ids assigned."""
    p = Parser(src).parse_program()
    validate_program(p)
    assign_ids(p)
    return p


def all_stmts(stmts):
    """Pre-order iterator over a statement forest."""
    for s in stmts:
        yield s
        for b in stmt_blocks(s):
            yield from all_stmts(b)


def clone(node):
    """Deep-copy an AST node (or list of nodes); sid/pos fields are preserved."""
    if isinstance(node, Node):
        kwargs = {name: clone(getattr(node, name)) for name in node.__dataclass_fields__}
        return type(node)(**kwargs)
    if isinstance(node, list):
        return [clone(x) for x in node]
    return node


# ---------------------------------------------------------------------------
# structural equality (ignores sid and pos)

_IGNORED_FIELDS = {"sid", "pos"}


def ast_equal(a, b):
    if type(a) is not type(b):
        return False
    if isinstance(a, Node):
        for name in a.__dataclass_fields__:
            if name in _IGNORED_FIELDS:
                continue
            if not ast_equal(getattr(a, name), getattr(b, name)):
                return False
        return True
    if isinstance(a, list):
        return len(a) == len(b) and all(ast_equal(x, y) for x, y in zip(a, b))
    return a == b  # leaf values; types already match exactly, so 1 != True here


# ---------------------------------------------------------------------------
# canonical pretty printer

_LEVEL = {"or": 1, "and": 2, "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
          "+": 5, "-": 5, "*": 6, "/": 6, "%": 6}


def _expr_level(e):
    if isinstance(e, Binary):
        return _LEVEL[e.op]
    if isinstance(e, Unary):
        return 3 if e.op == "not" else 7
    return 9


def _fmt_expr(e):
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, FloatLit):
        return repr(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StrLit):
        out = e.value.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(e, ListLit):
        return "[" + ", ".join(_fmt_expr(x) for x in e.elements) + "]"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(_fmt_expr(a) for a in e.args) + ")"
    if isinstance(e, Len):
        return f"len({_fmt_expr(e.arg)})"
    if isinstance(e, Index):
        base = _fmt_expr(e.base)
        if _expr_level(e.base) < 8:
            base = f"({base})"
        return f"{base}[{_fmt_expr(e.index)}]"
    if isinstance(e, Unary):
        inner = _fmt_expr(e.operand)
        if e.op == "not":
            if _expr_level(e.operand) < 3:
                inner = f"({inner})"
            return f"not {inner}"
        if _expr_level(e.operand) < 7 or isinstance(e.operand, Unary):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Binary):
        lvl = _LEVEL[e.op]
        lhs, rhs = _fmt_expr(e.lhs), _fmt_expr(e.rhs)
        llvl, rlvl = _expr_level(e.lhs), _expr_level(e.rhs)
        if llvl < lvl or (lvl == 4 and llvl == 4):
            lhs = f"({lhs})"
        if rlvl <= lvl:
            rhs = f"({rhs})"
        return f"{lhs} {e.op} {rhs}"
    raise TypeError(type(e))


def _fmt_stmts(stmts, depth, out, linemap, lineno):
    pad = "    " * depth
    for s in stmts:
        linemap[s.sid] = lineno[0]
        if isinstance(s, Assign):
            out.append(f"{pad}{s.target} = {_fmt_expr(s.value)}")
        elif isinstance(s, IndexAssign):
            out.append(f"{pad}{s.target}[{_fmt_expr(s.index)}] = {_fmt_expr(s.value)}")
        elif isinstance(s, Print):
            out.append(f"{pad}print(" + ", ".join(_fmt_expr(a) for a in s.args) + ")")
        elif isinstance(s, Return):
            out.append(f"{pad}return" if s.value is None
                       else f"{pad}return {_fmt_expr(s.value)}")
        elif isinstance(s, ExprStmt):
            out.append(f"{pad}{_fmt_expr(s.call)}")
        elif isinstance(s, If):
            out.append(f"{pad}if {_fmt_expr(s.cond)} {{")
            lineno[0] += 1
            _fmt_stmts(s.then, depth + 1, out, linemap, lineno)
            if s.orelse:
                out.append(f"{pad}}} else {{")
                lineno[0] += 1
                _fmt_stmts(s.orelse, depth + 1, out, linemap, lineno)
            out.append(pad + "}")
        elif isinstance(s, While):
            out.append(f"{pad}while {_fmt_expr(s.cond)} {{")
            lineno[0] += 1
            _fmt_stmts(s.body, depth + 1, out, linemap, lineno)
            out.append(pad + "}")
        elif isinstance(s, ForRange):
            out.append(f"{pad}for {s.var} in range({_fmt_expr(s.lo)}, {_fmt_expr(s.hi)}) {{")
            lineno[0] += 1
            _fmt_stmts(s.body, depth + 1, out, linemap, lineno)
            out.append(pad + "}")
        else:
            raise TypeError(type(s))
        lineno[0] += 1  # the statement's own line, or a compound's closing brace


def pretty_print_with_lines(p):
    """Canonical text plus a map from StmtId to 1-based line number."""
    out = []
    linemap = {}
    lineno = [1]
    for idx, f in enumerate(p.functions):
        if idx:
            out.append("")
            lineno[0] += 1
        sig = ", ".join(f"{prm.name}: {prm.type}" for prm in f.params)
        out.append(f"func {f.name}({sig}) -> {f.return_type} {{")
        lineno[0] += 1
        _fmt_stmts(f.body, 1, out, linemap, lineno)
        out.append("}")
        lineno[0] += 1
    return "\n".join(out) + "\n", linemap


def pretty_print(p):
    return pretty_print_with_lines(p)[0]
