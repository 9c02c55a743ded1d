"""Shared test fixtures: canonical programs and recording harnesses."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from samp import (
    Interpreter,
    LineEvent,
    Program,
    RecorderState,
    SourceFile,
    TraceDb,
    TraceHeader,
    TraceWriter,
    VarRecord,
    execute,
    line_vars,
    load,
    parse,
)

EVENODD_SOURCE = (
    "for (n in nums)\n"
    "  if (n % 2 == 0)\n"
    "    even += n;\n"
    "  else\n"
    "    odd += n;"
)

EVENODD_PRELUDE = "let nums = [1, 2];\nlet even = 0;\nlet odd = 0;\n"

CALLPAIR_SOURCE = (
    "fn caller() {\n"
    "  let i = 1;\n"
    "  callee();\n"
    "  i = 2;\n"
    "}\n"
    "fn callee() { do_something(); }\n"
    "fn do_something() { }\n"
    "caller();"
)


def build(text: str, path: str = "prog.samp"):
    source = SourceFile.from_string(path, text)
    program = parse(source)
    return source, program, line_vars(program)


@dataclass
class RecordRun:
    source: SourceFile
    program: Program
    table: dict
    events: list[LineEvent]
    var_records: list[VarRecord]
    state: RecorderState
    interp: Interpreter


def record(text: str, prelude: str | None = None, hits: int = 1, path: str = "prog.samp") -> RecordRun:
    """Run a program with the recorder attached to an in-memory sink."""
    source, program, table = build(text, path)
    sink: list = []
    state = RecorderState(hits, sink, {source.path: table})
    prelude_prog = None
    if prelude is not None:
        prelude_prog = parse(SourceFile.from_string("prelude.samp", prelude))
    interp = execute(program, hook=state.on_transition, prelude=prelude_prog)
    events = [r for r in sink if type(r) is LineEvent]
    var_records = [r for r in sink if type(r) is VarRecord]
    return RecordRun(source, program, table, events, var_records, state, interp)


def record_to_db(tmp_path: Path, text: str, prelude: str | None = None, hits: int = 1,
                 name: str = "prog.samp") -> tuple[TraceDb, RecordRun, Path]:
    """Run with a real trace file and load it back."""
    source, program, table = build(text, name)
    trace_path = tmp_path / (Path(name).stem + ".samptrace")
    writer = TraceWriter(trace_path, TraceHeader.for_sources(hits, [source]))
    state = RecorderState(hits, writer, {source.path: table})
    prelude_prog = None
    if prelude is not None:
        prelude_prog = parse(SourceFile.from_string("prelude.samp", prelude))
    interp = execute(program, hook=state.on_transition, prelude=prelude_prog)
    writer.close()
    db = load(trace_path)
    run = RecordRun(
        source, program, table,
        [r for r in db.events], [r for r in db.var_records], state, interp,
    )
    return db, run, trace_path


def pass_lines(events: list[LineEvent]) -> dict[int, list[int]]:
    """Lines of each pass, in recorded order."""
    out: dict[int, list[int]] = {}
    for ev in events:
        out.setdefault(ev.pass_id, []).append(ev.line)
    return out


def write_evenodd(tmp_path: Path) -> tuple[Path, Path]:
    program = tmp_path / "evenodd.samp"
    program.write_text(EVENODD_SOURCE, encoding="utf-8")
    prelude = tmp_path / "evenodd.prelude.samp"
    prelude.write_text(EVENODD_PRELUDE, encoding="utf-8")
    return program, prelude
