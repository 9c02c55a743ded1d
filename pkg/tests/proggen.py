"""Seeded random Samp program generator.

Produces terminating, error-free programs of at most 40 lines exercising
loops, branches, calls, arrays and line-layout quirks (several statements
on one line, expressions split across lines, unbraced single-statement
bodies). Every variable is defined before use and arithmetic stays within
ints, so generated programs never hit runtime errors.
"""

from __future__ import annotations

import random

MAX_LINES = 40


class _Gen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.lines: list[str] = []
        self.counter = 0
        self.fns: list[tuple[str, int]] = []  # (name, arity)

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def room(self, needed: int = 1) -> bool:
        return len(self.lines) + needed <= MAX_LINES - 1

    # --- expressions ---

    def int_expr(self, ints: list[str], depth: int = 0) -> str:
        rng = self.rng
        roll = rng.random()
        if depth >= 2 or roll < 0.3 or not ints:
            if ints and roll < 0.55:
                return rng.choice(ints)
            return str(rng.randrange(0, 10))
        if roll < 0.45 and self.fns and depth == 0:
            name, arity = rng.choice(self.fns)
            args = ", ".join(self.int_expr(ints, depth + 1) for _ in range(arity))
            return f"{name}({args})"
        op = rng.choice(["+", "+", "-", "*", "%"])
        left = self.int_expr(ints, depth + 1)
        if op == "%":
            return f"({left} % {rng.randrange(2, 8)})"
        right = self.int_expr(ints, depth + 1)
        return f"({left} {op} {right})"

    def cond_expr(self, ints: list[str], depth: int = 0) -> str:
        rng = self.rng
        if depth >= 1 or rng.random() < 0.6:
            op = rng.choice(["<", "<=", ">", ">=", "==", "!="])
            return f"({self.int_expr(ints, 1)} {op} {self.int_expr(ints, 1)})"
        kind = rng.random()
        if kind < 0.4:
            return f"({self.cond_expr(ints, depth + 1)} && {self.cond_expr(ints, depth + 1)})"
        if kind < 0.8:
            return f"({self.cond_expr(ints, depth + 1)} || {self.cond_expr(ints, depth + 1)})"
        return f"(!{self.cond_expr(ints, depth + 1)})"

    def array_literal(self) -> str:
        items = ", ".join(str(self.rng.randrange(0, 10)) for _ in range(self.rng.randrange(1, 5)))
        return f"[{items}]"

    # --- statements ---

    def simple_stmt(self, ints: list[str]) -> str:
        rng = self.rng
        roll = rng.random()
        if roll < 0.3 or not ints:
            name = self.fresh("v")
            text = f"let {name} = {self.int_expr(ints)};"
            ints.append(name)
            return text
        if roll < 0.6:
            return f"{rng.choice(ints)} = {self.int_expr(ints)};"
        if roll < 0.8:
            return f"{rng.choice(ints)} += {self.int_expr(ints)};"
        return f"print({self.int_expr(ints)});"

    def emit_simple(self, ints: list[str], indent: str):
        rng = self.rng
        roll = rng.random()
        if roll < 0.08 and ints:
            # two statements on one physical line
            self.lines.append(indent + self.simple_stmt(ints) + " " + self.simple_stmt(ints))
        elif roll < 0.14 and ints and self.room(2):
            # an assignment whose expression continues on the next line
            name = rng.choice(ints)
            self.lines.append(f"{indent}{name} = ({self.int_expr(ints, 1)} +")
            self.lines.append(f"{indent}  {self.int_expr(ints, 1)});")
        else:
            self.lines.append(indent + self.simple_stmt(ints))

    def emit_block_stmt(self, ints: list[str], indent: str, depth: int):
        rng = self.rng
        roll = rng.random()
        if depth < 2 and roll < 0.22 and self.room(5):
            self.emit_while(ints, indent, depth)
        elif depth < 2 and roll < 0.42 and self.room(4):
            self.emit_for(ints, indent, depth)
        elif roll < 0.75 and self.room(4):
            self.emit_if(ints, indent, depth)
        else:
            self.emit_simple(ints, indent)

    def emit_if(self, ints: list[str], indent: str, depth: int):
        rng = self.rng
        cond = self.cond_expr(ints)
        # branch bodies get a scratch copy of the pool: declarations made in
        # a branch that may not run must not be referenced afterwards
        if rng.random() < 0.25:
            # unbraced form: the body slot holds exactly one statement
            self.lines.append(f"{indent}if ({cond})")
            self.lines.append(indent + "  " + self.simple_stmt(list(ints)))
            if rng.random() < 0.5 and self.room(2):
                self.lines.append(f"{indent}else")
                self.lines.append(indent + "  " + self.simple_stmt(list(ints)))
            return
        self.lines.append(f"{indent}if ({cond}) {{")
        then_pool = list(ints)
        for _ in range(rng.randrange(1, 3)):
            if self.room(2):
                self.emit_block_stmt(then_pool, indent + "  ", depth + 1)
        if rng.random() < 0.4 and self.room(3):
            self.lines.append(f"{indent}}} else {{")
            else_pool = list(ints)
            for _ in range(rng.randrange(1, 3)):
                if self.room(2):
                    self.emit_block_stmt(else_pool, indent + "  ", depth + 1)
        self.lines.append(f"{indent}}}")

    def emit_while(self, ints: list[str], indent: str, depth: int):
        rng = self.rng
        counter = self.fresh("w")
        bound = rng.randrange(1, 6)
        self.lines.append(f"{indent}let {counter} = 0;")
        self.lines.append(f"{indent}while ({counter} < {bound}) {{")
        inner = list(ints)  # body may declare vars not visible after the loop
        for _ in range(rng.randrange(1, 3)):
            if self.room(3):
                self.emit_block_stmt(inner, indent + "  ", depth + 1)
        self.lines.append(f"{indent}  {counter} = {counter} + 1;")
        self.lines.append(f"{indent}}}")
        ints.append(counter)

    def emit_for(self, ints: list[str], indent: str, depth: int):
        rng = self.rng
        var = self.fresh("x")
        iterable = self.array_literal()
        if rng.random() < 0.25:
            self.lines.append(f"{indent}for ({var} in {iterable})")
            inner = ints + [var]
            self.lines.append(indent + "  " + self.simple_stmt(inner))
            return
        self.lines.append(f"{indent}for ({var} in {iterable}) {{")
        inner = ints + [var]
        for _ in range(rng.randrange(1, 3)):
            if self.room(2):
                self.emit_block_stmt(inner, indent + "  ", depth + 1)
        self.lines.append(f"{indent}}}")

    def emit_fn(self):
        rng = self.rng
        name = self.fresh("f")
        arity = rng.randrange(0, 3)
        params = [self.fresh("p") for _ in range(arity)]
        self.lines.append(f"fn {name}({', '.join(params)}) {{")
        ints = list(params)
        for _ in range(rng.randrange(1, 3)):
            if self.room(3):
                self.emit_block_stmt(ints, "  ", 1)
        self.lines.append(f"  return {self.int_expr(ints)};")
        self.lines.append("}")
        self.fns.append((name, arity))

    def build(self) -> str:
        rng = self.rng
        for _ in range(rng.randrange(0, 3)):
            if self.room(8):
                self.emit_fn()
        ints: list[str] = []
        for _ in range(rng.randrange(2, 4)):
            name = self.fresh("v")
            self.lines.append(f"let {name} = {rng.randrange(0, 10)};")
            ints.append(name)
        for _ in range(rng.randrange(3, 8)):
            if self.room(2):
                self.emit_block_stmt(ints, "", 0)
        if self.fns and self.room(1):
            name, arity = rng.choice(self.fns)
            args = ", ".join(self.int_expr(ints, 1) for _ in range(arity))
            self.lines.append(f"{rng.choice(ints)} = {name}({args});")
        return "\n".join(self.lines) + "\n"


def generate_program(rng: random.Random) -> str:
    return _Gen(rng).build()


def generate_many(seed: int, count: int) -> list[str]:
    rng = random.Random(seed)
    return [generate_program(rng) for _ in range(count)]
