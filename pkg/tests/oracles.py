"""Independent reference implementations used to cross-check the toolkit.

`LineLogInterpreter` is a second, plainly-written evaluator that executes a
parsed program and logs each executed physical line in end-of-line order;
it shares nothing with the production interpreter except the syntax tree.

`OracleRecorder` is the brute-force recording hook: it captures every
transition with no hit limiting, numbering passes lazily. Hit-limited
traces must be per-line prefixes of what it records.
"""

from __future__ import annotations

from samp import LineEvent, VarRecord, render
from samp.errors import SampRuntimeError
from samp.syntax import (
    And,
    ArrayLit,
    Assign,
    AugAssign,
    Binary,
    Call,
    ExprStmt,
    For,
    If,
    Index,
    Let,
    Literal,
    Member,
    Name,
    Or,
    Print,
    Program,
    RecordLit,
    Return,
    Unary,
    While,
)
from samp.values import FuncRef, values_equal


class _Ret(Exception):
    def __init__(self, value):
        self.value = value


class _OFrame:
    __slots__ = ("file", "vars", "last")

    def __init__(self, file, vars_):
        self.file = file
        self.vars = vars_
        self.last = None


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


class LineLogInterpreter:
    """Minimal evaluator that records the sequence of executed lines."""

    def __init__(self):
        self.log: list[tuple[str, int]] = []
        self.fns: dict[str, object] = {}
        self.fn_files: dict[str, str] = {}
        self.globals: dict[str, object] = {}
        self.printed: list[object] = []
        self.enabled = True

    # line accounting -------------------------------------------------

    def _unit(self, fr: _OFrame, line: int):
        if fr.last != line:
            if fr.last is not None and self.enabled:
                self.log.append((fr.file, fr.last))
            fr.last = line

    def _leave(self, fr: _OFrame):
        if fr.last is not None and self.enabled:
            self.log.append((fr.file, fr.last))

    # program ----------------------------------------------------------

    def run(self, program: Program, prelude: Program | None = None):
        for part in filter(None, [prelude, program]):
            for fn in part.functions:
                self.fns[fn.name] = fn
                self.fn_files[fn.name] = part.source.path
        if prelude is not None:
            self.enabled = False
            fr = _OFrame(prelude.source.path, self.globals)
            for s in prelude.body:
                self.stmt(s, fr)
            self.enabled = True
        if program.body:
            fr = _OFrame(program.source.path, self.globals)
            for s in program.body:
                self.stmt(s, fr)
            self._leave(fr)
        elif "main" in self.fns:
            self.call_fn(self.fns["main"], [])
        else:
            raise SampRuntimeError(program.source.path, None, "no entry point")
        return self

    def call_fn(self, fn, args):
        frame = _OFrame(self.fn_files[fn.name], {})
        if len(args) != len(fn.params):
            raise SampRuntimeError(frame.file, fn.span.start_line, "wrong number of arguments")
        for p, a in zip(fn.params, args):
            frame.vars[p.name] = a
        value = None
        try:
            for s in fn.body:
                self.stmt(s, frame)
        except _Ret as r:
            value = r.value
        self._leave(frame)
        return value

    # statements ---------------------------------------------------------

    def stmt(self, s, fr: _OFrame):
        k = type(s)
        if k is Let:
            self._unit(fr, s.span.start_line)
            fr.vars[s.name] = self.expr(s.value, fr)
        elif k is Assign:
            self._unit(fr, s.span.start_line)
            value = self.expr(s.value, fr)
            t = s.target
            if type(t) is Name:
                if t.id in fr.vars:
                    fr.vars[t.id] = value
                elif t.id in self.globals:
                    self.globals[t.id] = value
                else:
                    raise SampRuntimeError(fr.file, s.span.start_line, f"undefined name '{t.id}'")
            elif type(t) is Member:
                self.expr(t.obj, fr)[t.field] = value
            else:
                obj = self.expr(t.obj, fr)
                idx = self.expr(t.index, fr)
                if not 0 <= idx < len(obj):
                    raise SampRuntimeError(fr.file, s.span.start_line, "index out of bounds")
                obj[idx] = value
        elif k is AugAssign:
            self._unit(fr, s.span.start_line)
            value = self.expr(s.value, fr)
            if s.name in fr.vars:
                fr.vars[s.name] = fr.vars[s.name] + value
            elif s.name in self.globals:
                self.globals[s.name] = self.globals[s.name] + value
            else:
                raise SampRuntimeError(fr.file, s.span.start_line, f"undefined name '{s.name}'")
        elif k is ExprStmt:
            self._unit(fr, s.span.start_line)
            self.expr(s.value, fr)
        elif k is Print:
            self._unit(fr, s.span.start_line)
            self.printed.append(self.expr(s.value, fr))
        elif k is If:
            self._unit(fr, s.span.start_line)
            if self.expr(s.cond, fr):
                for inner in s.then_body:
                    self.stmt(inner, fr)
            elif s.else_body is not None:
                for inner in s.else_body:
                    self.stmt(inner, fr)
        elif k is While:
            line = s.span.start_line
            while True:
                self._unit(fr, line)
                if not self.expr(s.cond, fr):
                    break
                for inner in s.body:
                    self.stmt(inner, fr)
        elif k is For:
            line = s.span.start_line
            self._unit(fr, line)
            items = list(self.expr(s.iterable, fr))
            first = True
            for item in items:
                if not first:
                    self._unit(fr, line)
                first = False
                fr.vars[s.var] = item
                for inner in s.body:
                    self.stmt(inner, fr)
        elif k is Return:
            self._unit(fr, s.span.start_line)
            raise _Ret(None if s.value is None else self.expr(s.value, fr))
        else:
            raise AssertionError(f"unknown statement {k}")

    # expressions -------------------------------------------------------

    def expr(self, e, fr: _OFrame):
        k = type(e)
        if k is Literal:
            return e.value
        if k is Name:
            if e.id in fr.vars:
                return fr.vars[e.id]
            if e.id in self.globals:
                return self.globals[e.id]
            if e.id in self.fns:
                return FuncRef(e.id, self.fns[e.id])
            raise SampRuntimeError(fr.file, e.span.start_line, f"undefined name '{e.id}'")
        if k is ArrayLit:
            return [self.expr(item, fr) for item in e.items]
        if k is RecordLit:
            return {name: self.expr(value, fr) for name, value in e.fields}
        if k is Member:
            return self.expr(e.obj, fr)[e.field]
        if k is Index:
            obj = self.expr(e.obj, fr)
            idx = self.expr(e.index, fr)
            if not 0 <= idx < len(obj):
                raise SampRuntimeError(fr.file, e.span.start_line, "index out of bounds")
            return obj[idx]
        if k is Call:
            callee = e.callee
            if type(callee) is Name and callee.id not in fr.vars and callee.id not in self.globals:
                name = callee.id
                if name in self.fns:
                    args = [self.expr(a, fr) for a in e.args]
                    return self.call_fn(self.fns[name], args)
                args = [self.expr(a, fr) for a in e.args]
                if name == "len":
                    return len(args[0])
                if name == "substring":
                    s, a, b = args
                    if not (0 <= a <= b <= len(s)):
                        raise SampRuntimeError(fr.file, e.span.start_line, "index out of bounds")
                    return s[a:b]
                if name == "push":
                    args[0].append(args[1])
                    return args[0]
                raise SampRuntimeError(fr.file, e.span.start_line, f"undefined function '{name}'")
            target = self.expr(callee, fr)
            args = [self.expr(a, fr) for a in e.args]
            if isinstance(target, FuncRef):
                return self.call_fn(target.decl, args)
            raise SampRuntimeError(fr.file, e.span.start_line, "not callable")
        if k is Unary:
            v = self.expr(e.operand, fr)
            return -v if e.op == "-" else (not v)
        if k is And:
            return bool(self.expr(e.left, fr)) and bool(self.expr(e.right, fr))
        if k is Or:
            return bool(self.expr(e.left, fr)) or bool(self.expr(e.right, fr))
        if k is Binary:
            l = self.expr(e.left, fr)
            r = self.expr(e.right, fr)
            op = e.op
            if op == "+":
                return l + r
            if op == "-":
                return l - r
            if op == "*":
                return l * r
            if op == "/":
                if r == 0:
                    raise SampRuntimeError(fr.file, e.span.start_line, "division by zero")
                if type(l) is int and type(r) is int:
                    return _trunc_div(l, r)
                return l / r
            if op == "%":
                if r == 0:
                    raise SampRuntimeError(fr.file, e.span.start_line, "division by zero")
                return l - _trunc_div(l, r) * r
            if op == "==":
                return values_equal(l, r)
            if op == "!=":
                return not values_equal(l, r)
            if op == "<":
                return l < r
            if op == "<=":
                return l <= r
            if op == ">":
                return l > r
            if op == ">=":
                return l >= r
        raise AssertionError(f"unknown expression {k}")


class OracleRecorder:
    """Record-everything hook: every transition in an instrumented file
    becomes a line event, with lazily assigned pass ids."""

    def __init__(self, line_var_tables: dict[str, dict]):
        self.names = {
            path: {line: [use.name for use in uses] for line, uses in table.items()}
            for path, table in line_var_tables.items()
        }
        self.events: list[LineEvent] = []
        self.var_records: list[VarRecord] = []
        self.next_pass = 1
        self.seq = 0

    def __call__(self, t):
        by_line = self.names.get(t.file)
        if by_line is None:
            return
        frame = t.frame
        if frame.pass_id == 0:
            frame.pass_id = self.next_pass
            self.next_pass += 1
        self.events.append(LineEvent(self.seq, frame.pass_id, t.file, t.current_line))
        for name in by_line.get(t.current_line, ()):
            if name in frame.locals:
                self.var_records.append(
                    VarRecord(self.seq, frame.pass_id, t.current_line, name, render(frame.locals[name]))
                )
        self.seq += 1
        if t.next_line is not None and t.next_line < t.current_line:
            frame.pass_id = 0
