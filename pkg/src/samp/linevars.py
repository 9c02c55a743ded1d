"""Static per-line variable occurrence table.

For every physical line, the deduplicated ordered variable names read or
written by code on that line. Names are collected in evaluation order
(an assignment visits its right-hand side before its target), each name
bucketed by the line of its own token, and deduplicated per line: the
first occurrence keeps its position and later accesses merge into its
access kind.

Exclusions: keywords, function names in call position, record field names
(except the field written by a member assignment, which counts as a write
under that field's name), and the bare record name on the left of a member
assignment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
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
    Stmt,
    Unary,
    While,
)

READ = "read"
WRITE = "write"
READWRITE = "readwrite"


@dataclass(frozen=True)
class VarUse:
    name: str
    access: str


LineVarTable = dict[int, list[VarUse]]


class _Collector:
    def __init__(self):
        # line -> ordered {name: access}
        self.lines: dict[int, dict[str, str]] = {}

    def add(self, line: int, name: str, access: str):
        bucket = self.lines.setdefault(line, {})
        prev = bucket.get(name)
        if prev is None:
            bucket[name] = access
        elif prev != access:
            bucket[name] = READWRITE

    def table(self) -> LineVarTable:
        return {
            line: [VarUse(name, access) for name, access in bucket.items()]
            for line, bucket in sorted(self.lines.items())
        }


def line_vars(program: Program) -> LineVarTable:
    c = _Collector()
    for fn in program.functions:
        for p in fn.params:
            c.add(p.span.start_line, p.name, WRITE)
        _walk_body(fn.body, c)
    _walk_body(program.body, c)
    return c.table()


def _walk_body(stmts: list[Stmt], c: _Collector):
    for s in stmts:
        _walk_stmt(s, c)


def _walk_stmt(s, c: _Collector):
    t = type(s)
    if t is Let:
        _walk_expr(s.value, c)
        c.add(s.name_span.start_line, s.name, WRITE)
    elif t is Assign:
        _walk_expr(s.value, c)
        _walk_target(s.target, c)
    elif t is AugAssign:
        _walk_expr(s.value, c)
        c.add(s.name_span.start_line, s.name, READWRITE)
    elif t is ExprStmt or t is Print:
        _walk_expr(s.value, c)
    elif t is If:
        _walk_expr(s.cond, c)
        _walk_body(s.then_body, c)
        if s.else_body:
            _walk_body(s.else_body, c)
    elif t is While:
        _walk_expr(s.cond, c)
        _walk_body(s.body, c)
    elif t is For:
        _walk_expr(s.iterable, c)
        c.add(s.var_span.start_line, s.var, WRITE)
        _walk_body(s.body, c)
    elif t is Return:
        if s.value is not None:
            _walk_expr(s.value, c)


def _walk_target(target, c: _Collector):
    t = type(target)
    if t is Name:
        c.add(target.span.start_line, target.id, WRITE)
    elif t is Member:
        # the written field counts as a variable of that name; a bare record
        # name on the left is not shown (mirrors instance-variable display)
        if type(target.obj) is not Name:
            _walk_expr(target.obj, c)
        c.add(target.field_span.start_line, target.field, WRITE)
    elif t is Index:
        if type(target.obj) is Name:
            c.add(target.obj.span.start_line, target.obj.id, READWRITE)
        else:
            _walk_expr(target.obj, c)
        _walk_expr(target.index, c)


def _walk_expr(e, c: _Collector):
    t = type(e)
    if t is Name:
        c.add(e.span.start_line, e.id, READ)
    elif t is Literal:
        return
    elif t is Binary or t is And or t is Or:
        _walk_expr(e.left, c)
        _walk_expr(e.right, c)
    elif t is Unary:
        _walk_expr(e.operand, c)
    elif t is Call:
        # function names are excluded; a record-valued callee still records
        # the record it is looked up on
        if type(e.callee) is not Name:
            _walk_expr(e.callee, c)
        for a in e.args:
            _walk_expr(a, c)
    elif t is Member:
        _walk_expr(e.obj, c)
    elif t is Index:
        _walk_expr(e.obj, c)
        _walk_expr(e.index, c)
    elif t is ArrayLit:
        for item in e.items:
            _walk_expr(item, c)
    elif t is RecordLit:
        for _, value in e.fields:
            _walk_expr(value, c)
