"""Short single-line textual representation of runtime values.

Used for annotation labels and `print`. Arrays and records render in brace
style (`{1, 2}`, `{name: value}`); nesting is cut at a configurable depth,
long collections at a configurable element count, and the final string is
hard-truncated to a maximum length. The function is total: any value,
including cyclic structures, renders without error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .values import FuncRef

ELLIPSIS = "…"  # …


@dataclass(frozen=True)
class RenderOptions:
    max_len: int = 60
    max_depth: int = 2
    max_elems: int = 8

    def __post_init__(self):
        if self.max_len < 8:
            raise ValueError("max_len must be at least 8")
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if self.max_elems < 1:
            raise ValueError("max_elems must be positive")


DEFAULT_OPTIONS = RenderOptions()

_STR_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t"}


def render(value, opts: RenderOptions = DEFAULT_OPTIONS) -> str:
    """Render a value to a single line of at most opts.max_len characters."""
    text = _format(value, 1, (), opts)
    return _truncate(text, opts.max_len)


def _format(v, depth: int, path: tuple, opts: RenderOptions) -> str:
    t = type(v)
    if t is bool:
        return "true" if v else "false"
    if t is int:
        return str(v)
    if t is float:
        return repr(v)
    if v is None:
        return "null"
    if t is str:
        return '"' + _escape(v) + '"'
    if t is FuncRef:
        return f"<fn {v.name}>"
    if t is list:
        if depth > opts.max_depth or id(v) in path:
            return ELLIPSIS
        inner = path + (id(v),)
        parts = [_format(item, depth + 1, inner, opts) for item in v[: opts.max_elems]]
        if len(v) > opts.max_elems:
            parts.append(ELLIPSIS)
        return "{" + ", ".join(parts) + "}"
    if t is dict:
        if depth > opts.max_depth or id(v) in path:
            return ELLIPSIS
        inner = path + (id(v),)
        keys = list(v.keys())
        parts = [f"{k}: {_format(v[k], depth + 1, inner, opts)}" for k in keys[: opts.max_elems]]
        if len(keys) > opts.max_elems:
            parts.append(ELLIPSIS)
        return "{" + ", ".join(parts) + "}"
    return repr(v)


def _escape(s: str) -> str:
    out = []
    for ch in s:
        mapped = _STR_ESCAPES.get(ch)
        if mapped is not None:
            out.append(mapped)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def _truncate(text: str, max_len: int) -> str:
    if len(text) <= max_len:
        return text
    if _inside_string(text, max_len - 2):
        cut = text[: max_len - 2]
        # do not end on a dangling escape backslash
        trailing = len(cut) - len(cut.rstrip("\\"))
        if trailing % 2 == 1:
            cut = cut[:-1]
        return cut + ELLIPSIS + '"'
    return text[: max_len - 1] + ELLIPSIS


def _inside_string(text: str, pos: int) -> bool:
    in_str = False
    escaped = False
    for ch in text[:pos]:
        if in_str:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
    return in_str
