#!/usr/bin/env python3
"""Regenerate the viewer test fixtures from the primary toolkit.

Records the bundled even/odd program, captures /api/source and /api/augment
responses for every cursor position, and derives the expected per-line label
strings from `samp annotate` output (the text after the `  # ` marker).
Everything the viewer tests compare against comes from the real external
interfaces.

Usage: python scripts/gen_viewer_fixtures.py
"""

from __future__ import annotations

import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from fastapi.testclient import TestClient

from samp.cli import main
from samp.server import build_state, create_app

EVENODD_SOURCE = (
    "for (n in nums)\n"
    "  if (n % 2 == 0)\n"
    "    even += n;\n"
    "  else\n"
    "    odd += n;"
)
EVENODD_PRELUDE = "let nums = [1, 2];\nlet even = 0;\nlet odd = 0;\n"

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def strip_labels(annotated: str) -> list[str]:
    labels = []
    for line in annotated.split("\n")[:-1]:
        marker = line.find("  # ")
        labels.append(line[marker + 4 :] if marker != -1 else "")
    return labels


def main_fixtures() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        (tmp_path / "evenodd.samp").write_text(EVENODD_SOURCE, encoding="utf-8")
        (tmp_path / "evenodd.prelude.samp").write_text(EVENODD_PRELUDE, encoding="utf-8")
        import os

        cwd = os.getcwd()
        os.chdir(tmp_path)
        try:
            with redirect_stdout(io.StringIO()):
                code = main(["run", "evenodd.samp", "--trace", "t.samptrace", "--hits-per-line", "unlimited"])
            assert code == 0, "recording failed"
            client = TestClient(create_app(build_state("evenodd.samp", "t.samptrace")))

            source = client.get("/api/source", params={"file": "evenodd.samp"})
            assert source.status_code == 200
            (FIXTURE_DIR / "source.json").write_text(json.dumps(source.json(), indent=2) + "\n")

            expected: dict[str, list[str]] = {}
            for cursor in range(1, 6):
                augment = client.get("/api/augment", params={"file": "evenodd.samp", "cursor": cursor})
                assert augment.status_code == 200
                (FIXTURE_DIR / f"augment_cursor{cursor}.json").write_text(
                    json.dumps(augment.json(), indent=2) + "\n"
                )
                buffer = io.StringIO()
                with redirect_stdout(buffer):
                    code = main(["annotate", "evenodd.samp", "--trace", "t.samptrace", "--cursor", str(cursor)])
                assert code == 0
                expected[str(cursor)] = strip_labels(buffer.getvalue())
            (FIXTURE_DIR / "expected_labels.json").write_text(json.dumps(expected, indent=2) + "\n")
        finally:
            os.chdir(cwd)
    print(f"fixtures written to {FIXTURE_DIR}")


if __name__ == "__main__":
    main_fixtures()
