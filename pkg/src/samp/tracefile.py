"""Trace persistence: newline-delimited JSON records, append-friendly.

One record per line. The first line is the header; line events and variable
records follow in arrival order. A variable record shares the `seq` of the
line event it belongs to. A file truncated mid-record still loads every
complete record; any other malformed line rejects the file with its line
number.

    {"t":"hdr","v":1,"hits":N,"files":[{"path":P,"hash":H,"lines":L}],"created":TS}
    {"t":"line","seq":S,"pass":P,"file":F,"ln":L}
    {"t":"var","seq":S,"pass":P,"ln":L,"name":N,"val":V}
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .errors import TraceError, TraceFormatError
from .source import SourceFile

FORMAT_VERSION = 1
UNLIMITED = -1
TRACE_SUFFIX = ".samptrace"


@dataclass(frozen=True)
class TraceFileEntry:
    path: str
    content_hash: str
    line_count: int


@dataclass(frozen=True)
class TraceHeader:
    version: int
    hits_per_line: int  # UNLIMITED (-1) means no per-line cap
    files: tuple[TraceFileEntry, ...]
    created: str

    @classmethod
    def for_sources(cls, hits_per_line: int, sources: list[SourceFile]) -> "TraceHeader":
        entries = tuple(TraceFileEntry(s.path, s.content_hash, s.line_count) for s in sources)
        created = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(FORMAT_VERSION, hits_per_line, entries, created)


@dataclass(frozen=True)
class LineEvent:
    seq: int
    pass_id: int
    file: str
    line: int


@dataclass(frozen=True)
class VarRecord:
    seq: int
    pass_id: int
    line: int
    name: str
    value: str


Record = Union[LineEvent, VarRecord]


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _header_line(h: TraceHeader) -> str:
    return _dump(
        {
            "t": "hdr",
            "v": h.version,
            "hits": h.hits_per_line,
            "files": [{"path": f.path, "hash": f.content_hash, "lines": f.line_count} for f in h.files],
            "created": h.created,
        }
    )


def _record_line(r: Record) -> str:
    if type(r) is LineEvent:
        return _dump({"t": "line", "seq": r.seq, "pass": r.pass_id, "file": r.file, "ln": r.line})
    return _dump({"t": "var", "seq": r.seq, "pass": r.pass_id, "ln": r.line, "name": r.name, "val": r.value})


class TraceWriter:
    """Single writer per trace file; appends are flushed record by record so
    a crashed run leaves a readable prefix."""

    def __init__(self, path: str | Path, header: TraceHeader):
        self.path = str(path)
        self._fh = open(self.path, "w", encoding="utf-8", newline="\n")
        self._closed = False
        self._fh.write(_header_line(header) + "\n")
        self._fh.flush()

    def append(self, record: Record) -> None:
        if self._closed:
            raise TraceError("handle closed")
        self._fh.write(_record_line(record) + "\n")
        self._fh.flush()

    def close(self) -> None:
        if not self._closed:
            self._closed = True
            self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def open_write(path: str | Path, header: TraceHeader) -> TraceWriter:
    return TraceWriter(path, header)


class TraceDb:
    """An immutable loaded trace, indexed for pass and coverage queries."""

    def __init__(self, path: str, header: TraceHeader, events: list[LineEvent], var_records: list[VarRecord]):
        self.path = path
        self.header = header
        self.events = events
        self.var_records = var_records
        self._entries = {f.path: f for f in header.files}
        self._covering: dict[tuple[str, int], list[int]] = {}
        self._events_by_pass: dict[int, list[LineEvent]] = {}
        self._vars_by_pass: dict[int, list[VarRecord]] = {}
        self._event_at: dict[tuple[int, str, int], LineEvent] = {}
        self._vars_at: dict[tuple[int, int], list[VarRecord]] = {}
        for ev in events:
            key = (ev.file, ev.line)
            passes = self._covering.setdefault(key, [])
            if ev.pass_id not in passes:
                passes.append(ev.pass_id)
            self._events_by_pass.setdefault(ev.pass_id, []).append(ev)
            self._event_at[(ev.pass_id, ev.file, ev.line)] = ev
        for vr in var_records:
            self._vars_by_pass.setdefault(vr.pass_id, []).append(vr)
            self._vars_at.setdefault((vr.pass_id, vr.line), []).append(vr)
        for passes in self._covering.values():
            passes.sort()

    def entry_for(self, path: str) -> Optional[TraceFileEntry]:
        """Match by exact path first, then by unique basename."""
        entry = self._entries.get(path)
        if entry is not None:
            return entry
        base = os.path.basename(path)
        matches = [f for f in self.header.files if os.path.basename(f.path) == base]
        if len(matches) == 1:
            return matches[0]
        return None

    def passes_covering(self, file: str, line: int) -> list[int]:
        entry = self.entry_for(file)
        key = (entry.path if entry else file, line)
        return list(self._covering.get(key, ()))

    def records_of(self, pass_id: int) -> tuple[list[LineEvent], list[VarRecord]]:
        return (
            list(self._events_by_pass.get(pass_id, ())),
            list(self._vars_by_pass.get(pass_id, ())),
        )

    def event_at(self, pass_id: int, file: str, line: int) -> Optional[LineEvent]:
        return self._event_at.get((pass_id, file, line))

    def vars_at(self, pass_id: int, line: int) -> list[VarRecord]:
        return list(self._vars_at.get((pass_id, line), ()))

    def pass_ids(self) -> list[int]:
        return sorted(self._events_by_pass)


def _want(obj: dict, key: str, types, path: str, line_no: int):
    if key not in obj:
        raise TraceFormatError(path, line_no, f"malformed record: missing '{key}'")
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise TraceFormatError(path, line_no, f"malformed record: bad '{key}'")
    return value


def load(path: str | Path) -> TraceDb:
    path = str(path)
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceError(f"cannot read trace: {exc}") from exc
    lines = raw.split("\n")
    if raw.endswith("\n"):
        lines = lines[:-1]
        complete = len(lines)
    else:
        # the final line was cut off mid-record; keep the complete prefix
        complete = len(lines) - 1
        lines = lines[:complete]
    if complete < 1:
        raise TraceFormatError(path, 1, "missing header")

    header: Optional[TraceHeader] = None
    events: list[LineEvent] = []
    var_records: list[VarRecord] = []
    for i, text in enumerate(lines):
        line_no = i + 1
        try:
            obj = json.loads(text)
        except json.JSONDecodeError:
            raise TraceFormatError(path, line_no, "malformed record: not valid JSON")
        if not isinstance(obj, dict) or "t" not in obj:
            raise TraceFormatError(path, line_no, "malformed record: missing 't'")
        kind = obj["t"]
        if line_no == 1:
            if kind != "hdr":
                raise TraceFormatError(path, line_no, "first record must be the header")
            version = _want(obj, "v", int, path, line_no)
            if version != FORMAT_VERSION:
                raise TraceFormatError(path, line_no, f"unsupported format version {version}")
            hits = _want(obj, "hits", int, path, line_no)
            if hits < UNLIMITED:
                raise TraceFormatError(path, line_no, "malformed record: bad 'hits'")
            files_raw = _want(obj, "files", list, path, line_no)
            entries = []
            for f in files_raw:
                if not isinstance(f, dict):
                    raise TraceFormatError(path, line_no, "malformed record: bad 'files'")
                entries.append(
                    TraceFileEntry(
                        _want(f, "path", str, path, line_no),
                        _want(f, "hash", str, path, line_no),
                        _want(f, "lines", int, path, line_no),
                    )
                )
            created = _want(obj, "created", str, path, line_no)
            header = TraceHeader(version, hits, tuple(entries), created)
            continue
        if kind == "line":
            events.append(
                LineEvent(
                    _want(obj, "seq", int, path, line_no),
                    _want(obj, "pass", int, path, line_no),
                    _want(obj, "file", str, path, line_no),
                    _want(obj, "ln", int, path, line_no),
                )
            )
        elif kind == "var":
            var_records.append(
                VarRecord(
                    _want(obj, "seq", int, path, line_no),
                    _want(obj, "pass", int, path, line_no),
                    _want(obj, "ln", int, path, line_no),
                    _want(obj, "name", str, path, line_no),
                    _want(obj, "val", str, path, line_no),
                )
            )
        else:
            raise TraceFormatError(path, line_no, f"malformed record: unknown type {kind!r}")

    assert header is not None
    _validate(path, header, events, var_records)
    return TraceDb(path, header, events, var_records)


def _validate(path: str, header: TraceHeader, events: list[LineEvent], var_records: list[VarRecord]):
    by_path = {f.path: f for f in header.files}
    by_seq: dict[int, LineEvent] = {}
    last_seq = -1
    per_pass_last: dict[int, int] = {}
    for ev in events:
        if ev.seq <= last_seq:
            raise TraceFormatError(path, 0, f"line events out of order at seq {ev.seq}")
        last_seq = ev.seq
        if ev.pass_id < 1:
            raise TraceFormatError(path, 0, f"bad pass id {ev.pass_id} at seq {ev.seq}")
        entry = by_path.get(ev.file)
        if entry is None:
            raise TraceFormatError(path, 0, f"event references unknown file {ev.file!r}")
        if not 1 <= ev.line <= entry.line_count:
            raise TraceFormatError(path, 0, f"event line {ev.line} outside {ev.file!r}")
        prev = per_pass_last.get(ev.pass_id)
        if prev is not None and ev.line <= prev:
            raise TraceFormatError(
                path, 0, f"pass {ev.pass_id} is not a forward execution (line {ev.line} after {prev})"
            )
        per_pass_last[ev.pass_id] = ev.line
        by_seq[ev.seq] = ev
    for vr in var_records:
        ev = by_seq.get(vr.seq)
        if ev is None or ev.pass_id != vr.pass_id or ev.line != vr.line:
            raise TraceFormatError(path, 0, f"variable record at seq {vr.seq} has no matching line event")


def is_stale(db: TraceDb, source: SourceFile) -> bool:
    """True when the source content no longer matches the recorded hash."""
    entry = db.entry_for(source.path)
    if entry is None:
        raise TraceError(f"file not in trace header: {source.path}")
    return entry.content_hash != source.content_hash
