"""Syntax tree for Samp programs.

Every node carries a 1-based span (start_line, start_col, end_line, end_col).
Statements execute "at" their span's start line; that is the line the
interpreter reports in line transitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .source import SourceFile


@dataclass(frozen=True, slots=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, other: "Span") -> bool:
        a = (self.start_line, self.start_col) <= (other.start_line, other.start_col)
        b = (other.end_line, other.end_col) <= (self.end_line, self.end_col)
        return a and b


# --- expressions -----------------------------------------------------------

@dataclass(slots=True)
class Literal:
    value: object  # int | float | str | bool | None
    span: Span


@dataclass(slots=True)
class Name:
    id: str
    span: Span


@dataclass(slots=True)
class ArrayLit:
    items: list["Expr"]
    span: Span


@dataclass(slots=True)
class RecordLit:
    fields: list[tuple[str, "Expr"]]
    span: Span


@dataclass(slots=True)
class Member:
    obj: "Expr"
    field: str
    field_span: Span
    span: Span


@dataclass(slots=True)
class Index:
    obj: "Expr"
    index: "Expr"
    span: Span


@dataclass(slots=True)
class Call:
    callee: "Expr"
    args: list["Expr"]
    span: Span


@dataclass(slots=True)
class Unary:
    op: str  # "-" or "!"
    operand: "Expr"
    span: Span


@dataclass(slots=True)
class Binary:
    op: str  # + - * / % == != < <= > >=
    left: "Expr"
    right: "Expr"
    span: Span


@dataclass(slots=True)
class And:
    left: "Expr"
    right: "Expr"
    span: Span


@dataclass(slots=True)
class Or:
    left: "Expr"
    right: "Expr"
    span: Span


Expr = Union[Literal, Name, ArrayLit, RecordLit, Member, Index, Call, Unary, Binary, And, Or]


# --- statements ------------------------------------------------------------

@dataclass(slots=True)
class Let:
    name: str
    name_span: Span
    value: Expr
    span: Span


@dataclass(slots=True)
class Assign:
    target: Expr  # Name, Member or Index
    value: Expr
    span: Span


@dataclass(slots=True)
class AugAssign:
    name: str
    name_span: Span
    value: Expr
    span: Span


@dataclass(slots=True)
class ExprStmt:
    value: Expr
    span: Span


@dataclass(slots=True)
class If:
    cond: Expr
    then_body: list["Stmt"]
    else_body: Optional[list["Stmt"]]
    span: Span


@dataclass(slots=True)
class While:
    cond: Expr
    body: list["Stmt"]
    span: Span


@dataclass(slots=True)
class For:
    var: str
    var_span: Span
    iterable: Expr
    body: list["Stmt"]
    span: Span


@dataclass(slots=True)
class Return:
    value: Optional[Expr]
    span: Span


@dataclass(slots=True)
class Print:
    value: Expr
    span: Span


Stmt = Union[Let, Assign, AugAssign, ExprStmt, If, While, For, Return, Print]


@dataclass(slots=True)
class Param:
    name: str
    span: Span


@dataclass(slots=True)
class FnDecl:
    name: str
    name_span: Span
    params: list[Param]
    body: list[Stmt]
    span: Span


@dataclass(slots=True)
class Program:
    """Root node: hoisted function declarations plus top-level statements."""

    source: SourceFile
    functions: list[FnDecl]
    body: list[Stmt]
    span: Span


def child_nodes(node) -> list:
    """Direct child nodes, used by span-containment checks and tree walks."""
    t = type(node)
    if t is Program:
        return [*node.functions, *node.body]
    if t is FnDecl:
        return list(node.body)
    if t is Let:
        return [node.value]
    if t is Assign:
        return [node.target, node.value]
    if t is AugAssign:
        return [node.value]
    if t in (ExprStmt, Print):
        return [node.value]
    if t is If:
        out = [node.cond, *node.then_body]
        if node.else_body:
            out.extend(node.else_body)
        return out
    if t is While:
        return [node.cond, *node.body]
    if t is For:
        return [node.iterable, *node.body]
    if t is Return:
        return [node.value] if node.value is not None else []
    if t is ArrayLit:
        return list(node.items)
    if t is RecordLit:
        return [e for _, e in node.fields]
    if t is Member:
        return [node.obj]
    if t is Index:
        return [node.obj, node.index]
    if t is Call:
        return [node.callee, *node.args]
    if t is Unary:
        return [node.operand]
    if t in (Binary, And, Or):
        return [node.left, node.right]
    return []
