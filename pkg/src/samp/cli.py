"""Command-line entry point.

    samp run PROGRAM [--trace PATH] [--hits-per-line N|unlimited] [--prelude PATH]
    samp annotate PROGRAM [--trace PATH] [--cursor N] [--purge-stale]
    samp serve PROGRAM [--trace PATH] [--port N] [--assets DIR]
    samp bench [--runs N]

Exit codes: 0 success, 1 parse/runtime/trace-data error, 2 missing input,
3 stale trace, 4 port busy. SAMP_TRACE_DIR overrides where default trace
files are written and looked up.

run/annotate/bench work locally; serve hosts the HTTP API and viewer assets
over an immutable loaded trace.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
import time
from pathlib import Path
from typing import Optional

from . import bench as bench_mod
from .augment import augment, emit_annotated_source, select_pass
from .errors import SampError, SampRuntimeError, SampSyntaxError, StaleTraceError, TraceError
from .interp import execute
from .linevars import line_vars
from .parser import parse
from .recorder import RecorderState
from .source import SourceFile
from .tracefile import TRACE_SUFFIX, UNLIMITED, TraceHeader, TraceWriter, is_stale, load

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING = 2
EXIT_STALE = 3
EXIT_PORT_BUSY = 4


def _hits_value(text: str) -> int:
    if text.lower() == "unlimited":
        return UNLIMITED
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'unlimited'")
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'unlimited'")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="samp", description="Samp runtime value sampling toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a program and record a trace")
    run.add_argument("program")
    run.add_argument("--trace", help=f"trace output path (default: <program>{TRACE_SUFFIX})")
    run.add_argument("--hits-per-line", type=_hits_value, default=1, metavar="N|unlimited")
    run.add_argument("--prelude", help="uninstrumented setup file (default: <program>.prelude.samp if present)")

    annotate = sub.add_parser("annotate", help="print the source annotated from a recorded trace")
    annotate.add_argument("program")
    annotate.add_argument("--trace", help="trace path (default: <program>" + TRACE_SUFFIX + ")")
    annotate.add_argument("--cursor", type=int, default=1, metavar="LINE")
    annotate.add_argument("--purge-stale", action="store_true", help="delete the trace if stale (still exits 3)")

    serve = sub.add_parser("serve", help="serve the viewer API for a recorded trace")
    serve.add_argument("program")
    serve.add_argument("--trace", help="trace path (default: <program>" + TRACE_SUFFIX + ")")
    serve.add_argument("--port", type=int, default=7847)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--assets", help="directory of viewer static assets (default: ./frontend/dist if present)")

    bench = sub.add_parser("bench", help="measure instrumentation overhead on the bundled suite")
    bench.add_argument("--runs", type=int, default=5, help="timed runs per configuration (best is kept)")

    return ap


def _default_trace_path(program: Path) -> Path:
    trace_dir = os.environ.get("SAMP_TRACE_DIR")
    name = program.stem + TRACE_SUFFIX
    if trace_dir:
        return Path(trace_dir) / name
    return program.parent / name


def _resolve_prelude(program: Path, explicit: Optional[str]) -> Optional[Path]:
    if explicit is not None:
        return Path(explicit)
    candidate = program.with_name(program.stem + ".prelude.samp")
    return candidate if candidate.exists() else None


def cmd_run(args) -> int:
    program_path = Path(args.program)
    if not program_path.exists():
        print(f"error: no such file: {args.program}", file=sys.stderr)
        return EXIT_MISSING
    prelude_path = _resolve_prelude(program_path, args.prelude)
    if prelude_path is not None and not prelude_path.exists():
        print(f"error: no such file: {prelude_path}", file=sys.stderr)
        return EXIT_MISSING
    source = SourceFile.load(args.program)
    try:
        program = parse(source)
        prelude = parse(SourceFile.load(prelude_path)) if prelude_path else None
    except SampSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    trace_path = Path(args.trace) if args.trace else _default_trace_path(program_path)
    header = TraceHeader.for_sources(args.hits_per_line, [source])
    table = line_vars(program)
    code = EXIT_OK
    started = time.perf_counter()
    writer = TraceWriter(trace_path, header)
    try:
        state = RecorderState(args.hits_per_line, writer, {source.path: table})
        execute(program, hook=state.on_transition, prelude=prelude)
    except SampRuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_ERROR
    finally:
        writer.close()
    elapsed = time.perf_counter() - started
    print(
        f"recorded {state.event_count} line events, {state.var_count} var records, "
        f"{state.passes_assigned} passes in {elapsed:.3f}s -> {trace_path}"
    )
    return code


def cmd_annotate(args) -> int:
    program_path = Path(args.program)
    if not program_path.exists():
        print(f"error: no such file: {args.program}", file=sys.stderr)
        return EXIT_MISSING
    trace_path = Path(args.trace) if args.trace else _default_trace_path(program_path)
    if not trace_path.exists():
        print(f"error: no such trace: {trace_path}", file=sys.stderr)
        return EXIT_MISSING
    source = SourceFile.load(args.program)
    try:
        db = load(trace_path)
        stale = is_stale(db, source)
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if stale:
        if args.purge_stale:
            trace_path.unlink()
            print(f"error: trace invalidated by edit (purged {trace_path})", file=sys.stderr)
        else:
            print("error: trace invalidated by edit", file=sys.stderr)
        return EXIT_STALE
    if not 1 <= args.cursor <= max(source.line_count, 1):
        print(f"error: cursor out of range 1..{source.line_count}", file=sys.stderr)
        return EXIT_MISSING
    try:
        program = parse(source)
    except SampSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    table = line_vars(program)
    selection = select_pass(db, program, args.cursor)
    augs = augment(db, program, table, selection)
    sys.stdout.write(emit_annotated_source(source, augs))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import build_state, create_app

    program_path = Path(args.program)
    if not program_path.exists():
        print(f"error: no such file: {args.program}", file=sys.stderr)
        return EXIT_MISSING
    trace_path = Path(args.trace) if args.trace else _default_trace_path(program_path)
    if not trace_path.exists():
        print(f"error: no such trace: {trace_path}", file=sys.stderr)
        return EXIT_MISSING
    assets = args.assets
    if assets is None:
        default_assets = Path("frontend") / "dist"
        assets = str(default_assets) if default_assets.is_dir() else None
    try:
        state = build_state(args.program, str(trace_path), assets_dir=assets)
    except StaleTraceError:
        print("error: trace invalidated by edit", file=sys.stderr)
        return EXIT_STALE
    except SampError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError:
        print(f"error: port {args.port} is busy", file=sys.stderr)
        return EXIT_PORT_BUSY
    finally:
        probe.close()

    import uvicorn

    app = create_app(state)
    print(f"serving {args.program} on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench_mod.run_suite(runs=args.runs)
    sys.stdout.write(bench_mod.format_tables(rows))
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "annotate":
        return cmd_annotate(args)
    if args.command == "serve":
        return cmd_serve(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
