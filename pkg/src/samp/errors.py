"""Exception types shared across the samp toolkit."""

from __future__ import annotations


class SampError(Exception):
    """Base class for all samp errors."""


class SampSyntaxError(SampError):
    """Parse failure with a source position; no partial tree is produced."""

    def __init__(self, path: str, line: int, col: int, message: str):
        super().__init__(f"{path}:{line}:{col}: syntax error: {message}")
        self.path = path
        self.line = line
        self.col = col
        self.message = message


class SampRuntimeError(SampError):
    """Execution aborted; any trace data recorded so far is retained."""

    def __init__(self, path: str, line: int | None, message: str):
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: runtime error: {message}")
        self.path = path
        self.line = line
        self.message = message


class TraceError(SampError):
    """Trace handle misuse or unreadable trace data."""


class TraceFormatError(TraceError):
    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no
        self.message = message


class StaleTraceError(TraceError):
    """The traced source file has been edited since recording."""
