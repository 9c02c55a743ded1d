"""Source file loading and content fingerprinting."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path


def content_hash(content: str) -> str:
    """64-bit fingerprint of the content bytes, as 16 lowercase hex digits."""
    return hashlib.blake2b(content.encode("utf-8"), digest_size=8).hexdigest()


@dataclass(frozen=True)
class SourceFile:
    path: str
    content: str
    content_hash: str
    line_count: int

    @classmethod
    def from_string(cls, path: str, content: str) -> "SourceFile":
        count = 0 if content == "" else content.count("\n") + 1
        return cls(path, content, content_hash(content), count)

    @classmethod
    def load(cls, path: str | Path) -> "SourceFile":
        text = Path(path).read_text(encoding="utf-8")
        return cls.from_string(str(path), text)

    def lines(self) -> list[str]:
        """Physical lines split on '\\n'; a trailing '\\r' per line is stripped."""
        if self.content == "":
            return []
        return [ln[:-1] if ln.endswith("\r") else ln for ln in self.content.split("\n")]
