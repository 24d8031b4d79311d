"""Shared test utilities: a random loop-free program generator and an
independent reaching-definitions oracle based on path enumeration."""

from decomplab import analysis, lang
from decomplab.rng import SplitMix64

_VARS = ["a", "b", "c", "d", "e"]


def _gen_expr(r, depth=0):
    pick = r.randrange(4 if depth < 2 else 2)
    if pick == 0:
        return str(r.randrange(10))
    if pick == 1:
        return r.choice(_VARS)
    if pick == 2:
        op = r.choice(["+", "-", "*"])
        return f"({_gen_expr(r, depth + 1)} {op} {_gen_expr(r, depth + 1)})"
    return f"({_gen_expr(r, depth + 1)})"


def _gen_stmts(r, budget, depth):
    """Emit up to `budget` statements; returns (lines, count)."""
    lines = []
    count = 0
    while count < budget:
        room = budget - count
        kind = r.randrange(8)
        if kind in (0, 1, 2):  # weight assignments highest
            lines.append(f"{r.choice(_VARS)} = {_gen_expr(r)}")
            count += 1
        elif kind in (3, 4):
            lines.append(f"print({_gen_expr(r)})")
            count += 1
        elif kind == 5 and depth < 2 and room >= 3:
            cond = f"{r.choice(_VARS)} < {r.randrange(10)}"
            inner = r.randrange(room - 2) + 1
            then, n1 = _gen_stmts(r, inner, depth + 1)
            lines.append(f"if {cond} {{")
            lines += ["    " + x for x in then]
            count += 1 + n1
            if r.randrange(2) and count < budget:
                other = r.randrange(budget - count) + 1
                orelse, n2 = _gen_stmts(r, other, depth + 1)
                lines.append("} else {")
                lines += ["    " + x for x in orelse]
                count += n2
            lines.append("}")
        elif kind == 6 and depth > 0 and count > 0:
            lines.append(f"return {r.choice(_VARS)}")
            count += 1
            break
        else:
            lines.append(f"{r.choice(_VARS)} = {r.choice(_VARS)}")
            count += 1
    return lines, count


def gen_loop_free_program(seed, max_stmts=15):
    """A random straight-line/if program over a fixed variable pool.

    Always parses and always ends main with a return, so the statement count
    including that return stays within max_stmts.
    """
    r = SplitMix64(seed)
    budget = 1 + r.randrange(max_stmts - 1)  # leave room for the final return
    body, _ = _gen_stmts(r, budget, 0)
    lines = ["func main(a: int, b: int) -> int {"]
    lines += ["    " + x for x in body]
    lines.append(f"    return {r.choice(_VARS)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_paths(stmts):
    """All execution paths through a loop-free block.

    Each path is the list of statements executed in order (compound headers
    included); the flag says whether the path hit a return.
    """
    acc = [([], False)]
    for s in stmts:
        nxt = []
        for path, term in acc:
            if term:
                nxt.append((path, True))
                continue
            if isinstance(s, lang.If):
                for br in (s.then, s.orelse):
                    for sub, subterm in block_paths(br):
                        nxt.append((path + [s] + sub, subterm))
            elif isinstance(s, lang.Return):
                nxt.append((path + [s], True))
            else:
                nxt.append((path + [s], False))
        acc = nxt
    return acc


def oracle_reaching_definitions(program):
    """Reaching defs by brute-force path enumeration (loop-free programs only)."""
    for s in analysis.main_stmts(program):
        assert not isinstance(s, (lang.While, lang.ForRange)), "oracle is loop-free only"
    ins = {s.sid: set() for s in analysis.main_stmts(program)}
    for path, _ in block_paths(program.main.body):
        live = {p.name: analysis.param_site(p.name) for p in program.main.params}
        for s in path:
            ins[s.sid] |= set(live.values())
            for v in analysis.stmt_defs(s):
                live[v] = s.sid
    return ins
