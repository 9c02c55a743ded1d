"""Bundled benchmark programs and overhead measurement.

Reports how much slower an instrumented run is than a plain run of the same
interpreter (ratio instrumented/plain - 1, so 0 means no overhead) for a few
hits-per-line limits. Once every line has reached its limit the recorder's
early exit makes further execution nearly free, which the saturation check
demonstrates on a million-iteration loop.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .interp import execute
from .linevars import line_vars
from .parser import parse
from .recorder import RecorderState
from .source import SourceFile
from .tracefile import LineEvent

LOOP_HEAVY = """\
let total = 0;
let i = 0;
while (i < 4000) {
  if (i % 2 == 0) {
    total += i % 7;
  } else {
    total += 1;
  }
  i = i + 1;
}
"""

CALL_HEAVY = """\
fn mix(a, b) {
  let c = a * b + a - b;
  return c % 97;
}
fn twice(a) {
  return mix(a, a + 1) + mix(a + 2, a);
}
let acc = 0;
let i = 0;
while (i < 1200) {
  acc = acc + twice(i);
  i = i + 1;
}
"""

STRING_HEAVY = """\
let s = "abcdefghijklmnopqrstuvwxyz";
let n = len(s);
let acc = 0;
let i = 0;
while (i < 1500) {
  let t = substring(s, i % n, n);
  let u = t + "-";
  acc = acc + len(u);
  i = i + 1;
}
"""

BENCHMARKS = {
    "loop_heavy": LOOP_HEAVY,
    "call_heavy": CALL_HEAVY,
    "string_heavy": STRING_HEAVY,
}

SATURATION_LOOP = """\
let i = 0;
while (i < {count}) {{
  i = i + 1;
}}
"""


@dataclass
class BenchRow:
    name: str
    plain_seconds: float
    instrumented: dict[int, tuple[float, int]] = field(default_factory=dict)

    def overhead(self, hits: int) -> float:
        seconds, _ = self.instrumented[hits]
        return seconds / self.plain_seconds - 1.0


def _prepare(text: str, name: str):
    source = SourceFile.from_string(f"{name}.samp", text)
    program = parse(source)
    return source, program, line_vars(program)


def _run_once(source, program, table, hits) -> tuple[float, int]:
    """One execution; hits None means plain (no recorder attached)."""
    if hits is None:
        start = time.perf_counter()
        execute(program)
        return time.perf_counter() - start, 0
    sink: list = []
    state = RecorderState(hits, sink, {source.path: table})
    start = time.perf_counter()
    execute(program, hook=state.on_transition)
    elapsed = time.perf_counter() - start
    events = sum(1 for r in sink if type(r) is LineEvent)
    return elapsed, events


def run_suite(runs: int = 5, hits: tuple[int, ...] = (1, 2, 3)) -> list[BenchRow]:
    rows = []
    for name, text in BENCHMARKS.items():
        source, program, table = _prepare(text, name)
        plain = min(_run_once(source, program, table, None)[0] for _ in range(runs))
        row = BenchRow(name, plain)
        for k in hits:
            results = [_run_once(source, program, table, k) for _ in range(runs)]
            seconds = min(t for t, _ in results)
            events = results[0][1]
            row.instrumented[k] = (seconds, events)
        rows.append(row)
    return rows


def format_tables(rows: list[BenchRow]) -> str:
    hits = sorted(rows[0].instrumented) if rows else []
    names = [row.name for row in rows]
    width = max([len(n) for n in names] + [8])
    out = ["Overhead of instrumented runs (instrumented/plain - 1)", ""]
    header = "hits/line  " + "  ".join(n.ljust(width) for n in names)
    out.append(header)
    for k in hits:
        cells = []
        for row in rows:
            cells.append(f"{row.overhead(k):.2f}".ljust(width))
        out.append(f"{k:<9}  " + "  ".join(cells))
    out.append("")
    out.append("Line events recorded")
    out.append(header)
    for k in hits:
        cells = []
        for row in rows:
            cells.append(str(row.instrumented[k][1]).ljust(width))
        out.append(f"{k:<9}  " + "  ".join(cells))
    return "\n".join(out) + "\n"


@dataclass
class SaturationResult:
    iterations: int
    seconds_hits0: float
    seconds_hits1: float
    events_hits1: int


def saturation_check(iterations: int = 1_000_000) -> SaturationResult:
    """Time the saturation loop with recording disabled (hits 0) and with
    hits 1; after the first iteration both configurations do the same
    check-and-skip work per transition."""
    text = SATURATION_LOOP.format(count=iterations)
    source, program, table = _prepare(text, "saturation")
    t0, _ = _run_once(source, program, table, 0)
    t1, events = _run_once(source, program, table, 1)
    return SaturationResult(iterations, t0, t1, events)
