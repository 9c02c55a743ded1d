"""Hit-limited, pass-tagged recording of line executions.

On every line transition the recorder checks a per-line hit counter first
and does nothing once the line has been recorded its configured number of
times, so a saturated program runs with near-zero recording cost. Passes
(maximal forward executions within one frame) are numbered lazily: a frame
draws a fresh pass id from the shared counter only at the moment data is
actually recorded, and the id is cleared again on every backward jump.

Transitions for files without a line-variable table are ignored; that is
how prelude and other uninstrumented code stays out of the trace.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .interp import Frame, LineTransition
from .linevars import LineVarTable
from .render import DEFAULT_OPTIONS, RenderOptions, render
from .tracefile import UNLIMITED, LineEvent, VarRecord


class RecorderState:
    def __init__(
        self,
        hits_per_line: int,
        sink,
        line_var_tables: dict[str, LineVarTable],
        render_options: Optional[RenderOptions] = None,
    ):
        if hits_per_line != UNLIMITED and hits_per_line < 0:
            raise ValueError("hits_per_line must be >= 0 or UNLIMITED")
        self.hits_per_line = hits_per_line
        self.sink = sink
        self.render_options = render_options or DEFAULT_OPTIONS
        # name lists per file and line, in display order
        self._names: dict[str, dict[int, list[str]]] = {
            path: {line: [use.name for use in uses] for line, uses in table.items()}
            for path, table in line_var_tables.items()
        }
        self.pass_counter = 1
        self.hits: dict[tuple[str, int], int] = {}
        self.seq = 0
        self.event_count = 0
        self.var_count = 0

    @property
    def passes_assigned(self) -> int:
        return self.pass_counter - 1

    def on_transition(self, t: LineTransition) -> None:
        by_line = self._names.get(t.file)
        if by_line is None:
            return
        line = t.current_line
        key = (t.file, line)
        count = self.hits.get(key, 0)
        limit = self.hits_per_line
        if limit == UNLIMITED or count < limit:
            self.hits[key] = count + 1
            frame = t.frame
            if frame.pass_id == 0:
                frame.pass_id = self.pass_counter
                self.pass_counter += 1
            seq = self.seq
            self.seq += 1
            self.sink.append(LineEvent(seq, frame.pass_id, t.file, line))
            self.event_count += 1
            for name, value in variables_in_scope(frame, by_line.get(line, ())):
                self.sink.append(VarRecord(seq, frame.pass_id, line, name, render(value, self.render_options)))
                self.var_count += 1
        if t.next_line is not None and t.next_line < line:
            t.frame.pass_id = 0


def variables_in_scope(frame: Frame, names: Iterable[str]) -> list[tuple[str, object]]:
    """Resolve names against the frame's locals, in the given order.

    A name declared earlier on the very line being recorded is already
    bound; names that never got bound (for example mentions in a branch
    that did not run) are skipped silently.
    """
    locals_ = frame.locals
    return [(name, locals_[name]) for name in names if name in locals_]
