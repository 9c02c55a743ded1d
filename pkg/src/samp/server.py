"""HTTP API over a recorded trace, plus static hosting for the viewer.

The server owns an immutable loaded trace; request handlers re-read the
source file on every augment call so an edit on disk surfaces immediately
as a staleness error instead of silently mixing old data with new code.

    GET /api/source?file=P            {"path": .., "hash": .., "lines": [..]}
    GET /api/augment?file=P&cursor=N  {"cursor": N, "pass_by_function": {..},
                                       "lines": [{"ln": .., "kind": "values"|"check"|"none",
                                                  "entries": [{"name": .., "value": ..}]}]}

Errors are JSON objects {"error": message} with a 4xx status.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .augment import Selection, augment, select_pass
from .errors import SampError, StaleTraceError
from .linevars import LineVarTable, line_vars
from .parser import parse
from .source import SourceFile
from .syntax import Program
from .tracefile import TraceDb, TraceFileEntry, is_stale, load


class SourceResponse(BaseModel):
    path: str
    hash: str
    lines: list[str]


class AugmentEntry(BaseModel):
    name: str
    value: str


class AugmentLine(BaseModel):
    ln: int
    kind: str
    entries: list[AugmentEntry]


class AugmentResponse(BaseModel):
    cursor: int
    pass_by_function: dict[str, int]
    lines: list[AugmentLine]


@dataclass
class FileBundle:
    entry: TraceFileEntry
    disk_path: str
    source: SourceFile
    program: Program
    table: LineVarTable


@dataclass
class ServeState:
    db: TraceDb
    bundles: dict[str, FileBundle]
    assets_dir: Optional[str] = None

    def resolve(self, file: str) -> Optional[FileBundle]:
        entry = self.db.entry_for(file)
        if entry is None:
            return None
        return self.bundles.get(entry.path)


def build_state(
    program_path: str,
    trace_path: str,
    assets_dir: Optional[str] = None,
    require_fresh: bool = True,
) -> ServeState:
    """Load the trace and parse every header file present on disk.

    With require_fresh, a program that no longer matches the trace is
    rejected up front.
    """
    db = load(trace_path)
    bundles: dict[str, FileBundle] = {}
    given = {Path(program_path).name: program_path}
    for entry in db.header.files:
        disk = entry.path
        if not Path(disk).exists():
            alt = given.get(Path(entry.path).name)
            if alt is None or not Path(alt).exists():
                continue
            disk = alt
        source = SourceFile.load(disk)
        source = SourceFile(entry.path, source.content, source.content_hash, source.line_count)
        if require_fresh and is_stale(db, source):
            raise StaleTraceError("trace invalidated by edit")
        program = parse(source)
        bundles[entry.path] = FileBundle(entry, disk, source, program, line_vars(program))
    return ServeState(db, bundles, assets_dir)


def create_app(state: ServeState) -> FastAPI:
    app = FastAPI(title="samp viewer API")

    @app.exception_handler(HTTPException)
    async def http_error(request: Request, exc: HTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "invalid query parameters"})

    @app.get("/api/source", response_model=SourceResponse)
    def api_source(file: str):
        bundle = state.resolve(file)
        if bundle is None:
            raise HTTPException(status_code=404, detail="file not found")
        try:
            current = SourceFile.load(bundle.disk_path)
        except OSError:
            raise HTTPException(status_code=404, detail="file not found")
        return SourceResponse(path=bundle.entry.path, hash=current.content_hash, lines=current.lines())

    @app.get("/api/augment", response_model=AugmentResponse)
    def api_augment(file: str, cursor: int):
        bundle = state.resolve(file)
        if bundle is None:
            raise HTTPException(status_code=404, detail="file not found")
        try:
            current = SourceFile.load(bundle.disk_path)
        except OSError:
            raise HTTPException(status_code=404, detail="file not found")
        if current.content_hash != bundle.entry.content_hash:
            raise HTTPException(status_code=409, detail="trace invalidated by edit")
        if not 1 <= cursor <= bundle.source.line_count:
            raise HTTPException(
                status_code=400, detail=f"cursor out of range 1..{bundle.source.line_count}"
            )
        try:
            selection: Selection = select_pass(state.db, bundle.program, cursor)
            augs = augment(state.db, bundle.program, bundle.table, selection)
        except StaleTraceError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except SampError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return AugmentResponse(
            cursor=cursor,
            pass_by_function=selection.passes,
            lines=[
                AugmentLine(
                    ln=a.line,
                    kind=a.kind,
                    entries=[AugmentEntry(name=n, value=v) for n, v in a.entries],
                )
                for a in augs
            ],
        )

    if state.assets_dir and Path(state.assets_dir).is_dir():
        app.mount("/", StaticFiles(directory=state.assets_dir, html=True), name="viewer")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index():
            return (
                "<!doctype html><html><body><h1>samp</h1>"
                "<p>Viewer assets are not built; the JSON API is available under /api/.</p>"
                "</body></html>"
            )

    return app
