"""Tree-walking evaluator for Samp.

Execution reports line transitions to an attached hook: whenever control in
a frame is about to move from one physical line to a different one, and once
more when a frame exits (next_line is None). A transition fires only after
every effect of the current line has been applied, so a hook observing the
frame sees end-of-line state. Loops that stay on one physical line produce
no transitions until control finally leaves the line.

A call expression does not end the caller's line: the callee's frames emit
their own transitions first, and the caller's transition for the call line
fires once the rest of that line has completed.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import SampRuntimeError
from .render import render
from .syntax import (
    And,
    ArrayLit,
    Assign,
    AugAssign,
    Binary,
    Call,
    ExprStmt,
    FnDecl,
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
from .values import FuncRef, is_number, type_name, values_equal

MAX_FRAMES = 10_000

_MISSING = object()


class Frame:
    """One function activation; the top-level program body runs in a frame
    named "<main>" whose locals are the global scope."""

    __slots__ = ("function_name", "file", "locals", "pass_id", "current_line")

    def __init__(self, function_name: str, file: str, locals_: dict):
        self.function_name = function_name
        self.file = file
        self.locals = locals_
        self.pass_id = 0
        self.current_line: Optional[int] = None


@dataclass(frozen=True, slots=True)
class LineTransition:
    frame: Frame
    file: str
    current_line: int
    next_line: Optional[int]  # None marks function exit


Hook = Callable[[LineTransition], None]


class _Return(Exception):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class Interpreter:
    def __init__(self, hook: Optional[Hook] = None, max_frames: int = MAX_FRAMES):
        self.hook = hook
        self.max_frames = max_frames
        self.functions: dict[str, FnDecl] = {}
        self.fn_files: dict[str, str] = {}
        self.globals: dict[str, object] = {}
        self.depth = 0
        self._exec_map = {
            Let: self._exec_let,
            Assign: self._exec_assign,
            AugAssign: self._exec_augassign,
            ExprStmt: self._exec_exprstmt,
            If: self._exec_if,
            While: self._exec_while,
            For: self._exec_for,
            Return: self._exec_return,
            Print: self._exec_print,
        }
        self._eval_map = {
            Literal: self._eval_literal,
            Name: self._eval_name,
            ArrayLit: self._eval_array,
            RecordLit: self._eval_record,
            Member: self._eval_member,
            Index: self._eval_index,
            Call: self._eval_call,
            Unary: self._eval_unary,
            Binary: self._eval_binary,
            And: self._eval_and,
            Or: self._eval_or,
        }

    # --- program wiring ---

    def register(self, program: Program):
        for fn in program.functions:
            if fn.name in self.functions:
                raise SampRuntimeError(
                    program.source.path, fn.span.start_line, f"duplicate function '{fn.name}'"
                )
            self.functions[fn.name] = fn
            self.fn_files[fn.name] = program.source.path

    def run_top_level(self, program: Program):
        frame = Frame("<main>", program.source.path, self.globals)
        self._exec_body(program.body, frame)
        self._exit_frame(frame)

    def call(self, name: str, args: list):
        fn = self.functions.get(name)
        if fn is None:
            raise SampRuntimeError(self.fn_files.get(name, "<program>"), None, f"undefined function '{name}'")
        return self._invoke(fn, args, self.fn_files[fn.name], None)

    # --- transitions ---

    def _enter(self, frame: Frame, line: int):
        cur = frame.current_line
        if cur != line:
            if cur is not None and self.hook is not None:
                self.hook(LineTransition(frame, frame.file, cur, line))
            frame.current_line = line

    def _exit_frame(self, frame: Frame):
        cur = frame.current_line
        if cur is not None and self.hook is not None:
            self.hook(LineTransition(frame, frame.file, cur, None))

    def _err(self, frame: Frame, message: str) -> SampRuntimeError:
        return SampRuntimeError(frame.file, frame.current_line, message)

    # --- statements ---

    def _exec_body(self, stmts, frame: Frame):
        exec_map = self._exec_map
        for s in stmts:
            exec_map[type(s)](s, frame)

    def _exec_let(self, s: Let, frame: Frame):
        self._enter(frame, s.span.start_line)
        frame.locals[s.name] = self._eval_map[type(s.value)](s.value, frame)

    def _exec_assign(self, s: Assign, frame: Frame):
        self._enter(frame, s.span.start_line)
        value = self._eval_map[type(s.value)](s.value, frame)
        target = s.target
        t = type(target)
        if t is Name:
            name = target.id
            if name in frame.locals:
                frame.locals[name] = value
            elif name in self.globals:
                self.globals[name] = value
            else:
                raise self._err(frame, f"undefined name '{name}'")
        elif t is Member:
            obj = self._eval_map[type(target.obj)](target.obj, frame)
            if type(obj) is not dict:
                raise self._err(frame, f"cannot set field on {type_name(obj)}")
            obj[target.field] = value
        else:  # Index
            obj = self._eval_map[type(target.obj)](target.obj, frame)
            idx = self._eval_map[type(target.index)](target.index, frame)
            if type(obj) is not list:
                raise self._err(frame, f"cannot index-assign into {type_name(obj)}")
            if type(idx) is not int:
                raise self._err(frame, f"array index must be int, got {type_name(idx)}")
            if idx < 0 or idx >= len(obj):
                raise self._err(frame, "index out of bounds")
            obj[idx] = value

    def _exec_augassign(self, s: AugAssign, frame: Frame):
        self._enter(frame, s.span.start_line)
        rhs = self._eval_map[type(s.value)](s.value, frame)
        name = s.name
        in_locals = name in frame.locals
        if in_locals:
            cur = frame.locals[name]
        elif name in self.globals:
            cur = self.globals[name]
        else:
            raise self._err(frame, f"undefined name '{name}'")
        result = self._add(frame, cur, rhs)
        if in_locals:
            frame.locals[name] = result
        else:
            self.globals[name] = result

    def _exec_exprstmt(self, s: ExprStmt, frame: Frame):
        self._enter(frame, s.span.start_line)
        self._eval_map[type(s.value)](s.value, frame)

    def _exec_if(self, s: If, frame: Frame):
        self._enter(frame, s.span.start_line)
        cond = self._eval_map[type(s.cond)](s.cond, frame)
        if type(cond) is not bool:
            raise self._err(frame, f"if condition must be bool, got {type_name(cond)}")
        if cond:
            self._exec_body(s.then_body, frame)
        elif s.else_body is not None:
            self._exec_body(s.else_body, frame)

    def _exec_while(self, s: While, frame: Frame):
        line = s.span.start_line
        cond = s.cond
        eval_cond = self._eval_map[type(cond)]
        body = s.body
        while True:
            self._enter(frame, line)
            c = eval_cond(cond, frame)
            if type(c) is not bool:
                raise self._err(frame, f"while condition must be bool, got {type_name(c)}")
            if not c:
                break
            self._exec_body(body, frame)

    def _exec_for(self, s: For, frame: Frame):
        line = s.span.start_line
        self._enter(frame, line)
        items = self._eval_map[type(s.iterable)](s.iterable, frame)
        if type(items) is not list:
            raise self._err(frame, f"for loop requires an array, got {type_name(items)}")
        body = s.body
        var = s.var
        for i, item in enumerate(list(items)):
            if i:
                # next element: control hops back to the loop header line
                self._enter(frame, line)
            frame.locals[var] = item
            self._exec_body(body, frame)
        # exhaustion is checked without revisiting the header line

    def _exec_return(self, s: Return, frame: Frame):
        self._enter(frame, s.span.start_line)
        value = None if s.value is None else self._eval_map[type(s.value)](s.value, frame)
        raise _Return(value)

    def _exec_print(self, s: Print, frame: Frame):
        self._enter(frame, s.span.start_line)
        value = self._eval_map[type(s.value)](s.value, frame)
        sys.stdout.write(render(value) + "\n")

    # --- expressions ---

    def _eval_literal(self, e: Literal, frame: Frame):
        return e.value

    def _eval_name(self, e: Name, frame: Frame):
        v = frame.locals.get(e.id, _MISSING)
        if v is not _MISSING:
            return v
        v = self.globals.get(e.id, _MISSING)
        if v is not _MISSING:
            return v
        fn = self.functions.get(e.id)
        if fn is not None:
            return FuncRef(fn.name, fn)
        raise self._err(frame, f"undefined name '{e.id}'")

    def _eval_array(self, e: ArrayLit, frame: Frame):
        ev = self._eval_map
        return [ev[type(item)](item, frame) for item in e.items]

    def _eval_record(self, e: RecordLit, frame: Frame):
        ev = self._eval_map
        return {name: ev[type(value)](value, frame) for name, value in e.fields}

    def _eval_member(self, e: Member, frame: Frame):
        obj = self._eval_map[type(e.obj)](e.obj, frame)
        if type(obj) is not dict:
            raise self._err(frame, f"cannot read field of {type_name(obj)}")
        if e.field not in obj:
            raise self._err(frame, f"unknown field '{e.field}'")
        return obj[e.field]

    def _eval_index(self, e: Index, frame: Frame):
        obj = self._eval_map[type(e.obj)](e.obj, frame)
        idx = self._eval_map[type(e.index)](e.index, frame)
        t = type(obj)
        if t is list or t is str:
            if type(idx) is not int:
                raise self._err(frame, f"index must be int, got {type_name(idx)}")
            if idx < 0 or idx >= len(obj):
                raise self._err(frame, "index out of bounds")
            return obj[idx]
        raise self._err(frame, f"cannot index {type_name(obj)}")

    def _eval_call(self, e: Call, frame: Frame):
        callee = e.callee
        ev = self._eval_map
        if type(callee) is Name:
            name = callee.id
            v = frame.locals.get(name, _MISSING)
            if v is _MISSING:
                v = self.globals.get(name, _MISSING)
            if v is _MISSING:
                fn = self.functions.get(name)
                if fn is not None:
                    args = [ev[type(a)](a, frame) for a in e.args]
                    return self._invoke(fn, args, frame.file, frame)
                builtin = _BUILTINS.get(name)
                if builtin is not None:
                    args = [ev[type(a)](a, frame) for a in e.args]
                    return builtin(self, frame, args)
                raise self._err(frame, f"undefined function '{name}'")
        else:
            v = ev[type(callee)](callee, frame)
        args = [ev[type(a)](a, frame) for a in e.args]
        if type(v) is FuncRef:
            return self._invoke(v.decl, args, frame.file, frame)
        raise self._err(frame, f"{type_name(v)} is not callable")

    def _invoke(self, fn: FnDecl, args: list, caller_file: str, caller_frame: Optional[Frame]):
        if len(args) != len(fn.params):
            line = caller_frame.current_line if caller_frame else fn.span.start_line
            raise SampRuntimeError(
                caller_file, line,
                f"wrong number of arguments for '{fn.name}': expected {len(fn.params)}, got {len(args)}",
            )
        if self.depth >= self.max_frames:
            line = caller_frame.current_line if caller_frame else None
            raise SampRuntimeError(caller_file, line, f"recursion depth exceeded ({self.max_frames} frames)")
        frame = Frame(fn.name, self.fn_files[fn.name], {})
        for param, value in zip(fn.params, args):
            frame.locals[param.name] = value
        self.depth += 1
        try:
            try:
                self._exec_body(fn.body, frame)
                result = None
            except _Return as r:
                result = r.value
        finally:
            self.depth -= 1
        self._exit_frame(frame)
        return result

    def _eval_unary(self, e: Unary, frame: Frame):
        v = self._eval_map[type(e.operand)](e.operand, frame)
        if e.op == "-":
            if type(v) is int or type(v) is float:
                return -v
            raise self._err(frame, f"unary '-' requires a number, got {type_name(v)}")
        if type(v) is bool:
            return not v
        raise self._err(frame, f"'!' requires bool, got {type_name(v)}")

    def _eval_and(self, e: And, frame: Frame):
        left = self._eval_map[type(e.left)](e.left, frame)
        if type(left) is not bool:
            raise self._err(frame, f"'&&' requires bool operands, got {type_name(left)}")
        if not left:
            return False
        right = self._eval_map[type(e.right)](e.right, frame)
        if type(right) is not bool:
            raise self._err(frame, f"'&&' requires bool operands, got {type_name(right)}")
        return right

    def _eval_or(self, e: Or, frame: Frame):
        left = self._eval_map[type(e.left)](e.left, frame)
        if type(left) is not bool:
            raise self._err(frame, f"'||' requires bool operands, got {type_name(left)}")
        if left:
            return True
        right = self._eval_map[type(e.right)](e.right, frame)
        if type(right) is not bool:
            raise self._err(frame, f"'||' requires bool operands, got {type_name(right)}")
        return right

    def _add(self, frame: Frame, l, r):
        tl, tr = type(l), type(r)
        if tl is int and tr is int:
            return l + r
        if tl is float and tr is float:
            return l + r
        if tl is str and tr is str:
            return l + r
        raise self._err(frame, f"cannot add {type_name(l)} and {type_name(r)}")

    def _eval_binary(self, e: Binary, frame: Frame):
        ev = self._eval_map
        l = ev[type(e.left)](e.left, frame)
        r = ev[type(e.right)](e.right, frame)
        op = e.op
        tl, tr = type(l), type(r)
        if op == "+":
            return self._add(frame, l, r)
        if op == "==":
            return values_equal(l, r)
        if op == "!=":
            return not values_equal(l, r)
        if op in ("<", "<=", ">", ">="):
            numeric = tl in (int, float) and tr in (int, float)
            if numeric or (tl is str and tr is str):
                if op == "<":
                    return l < r
                if op == "<=":
                    return l <= r
                if op == ">":
                    return l > r
                return l >= r
            raise self._err(frame, f"cannot compare {type_name(l)} and {type_name(r)}")
        if op == "-":
            if tl is int and tr is int or tl is float and tr is float:
                return l - r
            raise self._err(frame, f"cannot subtract {type_name(r)} from {type_name(l)}")
        if op == "*":
            if tl is int and tr is int or tl is float and tr is float:
                return l * r
            raise self._err(frame, f"cannot multiply {type_name(l)} and {type_name(r)}")
        if op == "/":
            # division is the one operation that mixes int and float
            if not is_number(l) or not is_number(r):
                raise self._err(frame, f"cannot divide {type_name(l)} by {type_name(r)}")
            if r == 0:
                raise self._err(frame, "division by zero")
            if tl is int and tr is int:
                q = abs(l) // abs(r)
                return q if (l >= 0) == (r >= 0) else -q
            return l / r
        if op == "%":
            if tl is int and tr is int:
                if r == 0:
                    raise self._err(frame, "division by zero")
                q = abs(l) // abs(r)
                if (l >= 0) != (r >= 0):
                    q = -q
                return l - q * r
            raise self._err(frame, f"'%' requires int operands, got {type_name(l)} and {type_name(r)}")
        raise AssertionError(f"unknown operator {op!r}")


# --- builtins ---------------------------------------------------------------

def _builtin_len(interp: Interpreter, frame: Frame, args: list):
    if len(args) != 1:
        raise interp._err(frame, f"len takes 1 argument, got {len(args)}")
    v = args[0]
    if type(v) in (str, list, dict):
        return len(v)
    raise interp._err(frame, f"len requires a string, array or record, got {type_name(v)}")


def _builtin_substring(interp: Interpreter, frame: Frame, args: list):
    if len(args) != 3:
        raise interp._err(frame, f"substring takes 3 arguments, got {len(args)}")
    s, start, end = args
    if type(s) is not str:
        raise interp._err(frame, f"substring requires a string, got {type_name(s)}")
    if type(start) is not int or type(end) is not int:
        raise interp._err(frame, "substring bounds must be ints")
    if start < 0 or end < start or end > len(s):
        raise interp._err(frame, "index out of bounds")
    return s[start:end]


def _builtin_push(interp: Interpreter, frame: Frame, args: list):
    if len(args) != 2:
        raise interp._err(frame, f"push takes 2 arguments, got {len(args)}")
    arr, value = args
    if type(arr) is not list:
        raise interp._err(frame, f"push requires an array, got {type_name(arr)}")
    arr.append(value)
    return arr


_BUILTINS = {
    "len": _builtin_len,
    "substring": _builtin_substring,
    "push": _builtin_push,
}


# --- entry point -------------------------------------------------------------

_STACK_LOCK = threading.Lock()


def _run_with_big_stack(work: Callable[[], object]):
    """Run on a thread with a large stack so deep Samp recursion hits the
    frame cap before exhausting the host stack."""
    result: dict = {}

    def target():
        try:
            result["value"] = work()
        except BaseException as exc:  # propagated to the caller
            result["error"] = exc

    with _STACK_LOCK:
        old_size = threading.stack_size()
        threading.stack_size(512 * 1024 * 1024)
        try:
            thread = threading.Thread(target=target, name="samp-exec")
            thread.start()
        finally:
            threading.stack_size(old_size)
    thread.join()
    if "error" in result:
        raise result["error"]
    return result["value"]


def execute(
    program: Program,
    hook: Optional[Hook] = None,
    prelude: Optional[Program] = None,
) -> Interpreter:
    """Run a parsed program to completion.

    Functions from the optional prelude and the program itself are hoisted
    first; the prelude's top-level statements then run without the hook
    attached (nothing from the prelude is reported), sharing the global
    scope. The entry point is the program's top-level statement list, or its
    `main` function when the program consists only of declarations.

    Returns the interpreter (for inspecting final global state). Raises
    SampRuntimeError on any runtime failure; transitions reported before the
    failure have already reached the hook.
    """
    limit = 1_000_000
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)

    def work():
        interp = Interpreter(hook=hook)
        if prelude is not None:
            interp.register(prelude)
        interp.register(program)
        if prelude is not None:
            saved, interp.hook = interp.hook, None
            try:
                interp.run_top_level(prelude)
            finally:
                interp.hook = saved
        if program.body:
            interp.run_top_level(program)
        elif "main" in interp.functions:
            interp.call("main", [])
        else:
            raise SampRuntimeError(
                program.source.path, None,
                "no entry point: provide top-level statements or a 'main' function",
            )
        return interp

    return _run_with_big_stack(work)
