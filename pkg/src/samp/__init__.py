"""samp: execute Samp programs, sample variable values per source line, and
render source annotated with one coherent recorded execution."""

from .augment import (
    CHECK,
    MAIN_FUNCTION,
    NONE,
    VALUES,
    Augmentation,
    Selection,
    augment,
    emit_annotated_source,
    function_of_line,
    select_pass,
)
from .errors import (
    SampError,
    SampRuntimeError,
    SampSyntaxError,
    StaleTraceError,
    TraceError,
    TraceFormatError,
)
from .interp import Frame, Interpreter, LineTransition, execute
from .linevars import READ, READWRITE, WRITE, LineVarTable, VarUse, line_vars
from .parser import parse
from .recorder import RecorderState, variables_in_scope
from .render import DEFAULT_OPTIONS, RenderOptions, render
from .source import SourceFile, content_hash
from .syntax import Program, Span
from .tracefile import (
    FORMAT_VERSION,
    TRACE_SUFFIX,
    UNLIMITED,
    LineEvent,
    TraceDb,
    TraceHeader,
    TraceWriter,
    VarRecord,
    is_stale,
    load,
    open_write,
)
from .values import FuncRef, type_name, values_equal

__version__ = "0.1.0"

__all__ = [
    "Augmentation",
    "CHECK",
    "DEFAULT_OPTIONS",
    "FORMAT_VERSION",
    "Frame",
    "FuncRef",
    "Interpreter",
    "LineEvent",
    "LineTransition",
    "LineVarTable",
    "MAIN_FUNCTION",
    "NONE",
    "Program",
    "READ",
    "READWRITE",
    "RecorderState",
    "RenderOptions",
    "SampError",
    "SampRuntimeError",
    "SampSyntaxError",
    "Selection",
    "SourceFile",
    "Span",
    "StaleTraceError",
    "TRACE_SUFFIX",
    "TraceDb",
    "TraceError",
    "TraceFormatError",
    "TraceHeader",
    "TraceWriter",
    "UNLIMITED",
    "VALUES",
    "VarRecord",
    "VarUse",
    "WRITE",
    "augment",
    "content_hash",
    "emit_annotated_source",
    "execute",
    "function_of_line",
    "is_stale",
    "line_vars",
    "load",
    "open_write",
    "parse",
    "render",
    "select_pass",
    "type_name",
    "values_equal",
    "variables_in_scope",
]
