"""Cursor-driven selection of one recorded pass per function, and the
per-line augmentations it implies.

The cursor line acts as an implicit pointer: its enclosing function shows
the earliest pass covering that line, so every value displayed in that
function comes from one coherent execution. Other functions independently
default to their earliest recorded pass. Lines executed by the chosen pass
but referencing no variables get a check mark; lines the pass never
executed stay blank.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StaleTraceError
from .linevars import LineVarTable
from .source import SourceFile
from .syntax import Program
from .tracefile import TraceDb, is_stale

VALUES = "values"
CHECK = "check"
NONE = "none"

MAIN_FUNCTION = "<main>"


@dataclass(frozen=True)
class Augmentation:
    line: int
    kind: str
    entries: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Selection:
    cursor_line: int
    passes: dict[str, int]


def function_of_line(program: Program, line: int) -> str:
    for fn in program.functions:
        if fn.span.start_line <= line <= fn.span.end_line:
            return fn.name
    return MAIN_FUNCTION


def _function_start(program: Program, name: str) -> int:
    for fn in program.functions:
        if fn.name == name:
            return fn.span.start_line
    return 1


def select_pass(db: TraceDb, program: Program, cursor_line: int) -> Selection:
    """Pick one pass per function for the given cursor position.

    The enclosing function gets the lowest-numbered pass covering the cursor
    line; if the cursor line is uncovered, the nearest covered line above it
    within the same function decides; failing that the function keeps its
    default. Every function defaults to its lowest-numbered pass.
    """
    source = program.source
    if is_stale(db, source):
        raise StaleTraceError("trace invalidated by edit")
    entry = db.entry_for(source.path)
    file_key = entry.path if entry else source.path

    chosen: dict[str, int] = {}
    for ev in db.events:
        if ev.file != file_key:
            continue
        fn = function_of_line(program, ev.line)
        cur = chosen.get(fn)
        if cur is None or ev.pass_id < cur:
            chosen[fn] = ev.pass_id

    cursor_fn = function_of_line(program, cursor_line)
    covering = db.passes_covering(file_key, cursor_line)
    if covering:
        chosen[cursor_fn] = covering[0]
    else:
        lower = _function_start(program, cursor_fn) if cursor_fn != MAIN_FUNCTION else 1
        for line in range(cursor_line - 1, lower - 1, -1):
            if function_of_line(program, line) != cursor_fn:
                continue
            above = db.passes_covering(file_key, line)
            if above:
                chosen[cursor_fn] = above[0]
                break
    return Selection(cursor_line, chosen)


def augment(
    db: TraceDb,
    program: Program,
    line_var_table: LineVarTable,
    selection: Selection,
) -> list[Augmentation]:
    """One augmentation per physical source line, in order."""
    source = program.source
    entry = db.entry_for(source.path)
    file_key = entry.path if entry else source.path
    out: list[Augmentation] = []
    for line in range(1, source.line_count + 1):
        fn = function_of_line(program, line)
        pass_id = selection.passes.get(fn)
        if pass_id is None or db.event_at(pass_id, file_key, line) is None:
            out.append(Augmentation(line, NONE))
            continue
        records = db.vars_at(pass_id, line)
        if not records:
            out.append(Augmentation(line, CHECK))
            continue
        by_name = {r.name: r.value for r in records}
        ordered: list[tuple[str, str]] = []
        for use in line_var_table.get(line, ()):
            if use.name in by_name:
                ordered.append((use.name, by_name.pop(use.name)))
        for r in records:  # any name missing from the table keeps record order
            if r.name in by_name:
                ordered.append((r.name, by_name.pop(r.name)))
        out.append(Augmentation(line, VALUES, tuple(ordered)))
    return out


def emit_annotated_source(source: SourceFile, augmentations: list[Augmentation]) -> str:
    """Each source line verbatim, followed by its augmentation label.

    Value lines get two spaces, `# `, then `name: value` pairs separated by
    two spaces; check-mark lines get `  # ✓`; blank-kind lines are emitted
    unchanged. Output ends with a newline when the file is nonempty.
    """
    lines = source.lines()
    out: list[str] = []
    for text, aug in zip(lines, augmentations):
        if aug.kind == VALUES:
            label = "  ".join(f"{name}: {value}" for name, value in aug.entries)
            out.append(f"{text}  # {label}")
        elif aug.kind == CHECK:
            out.append(f"{text}  # ✓")
        else:
            out.append(text)
    if not out:
        return ""
    return "\n".join(out) + "\n"
