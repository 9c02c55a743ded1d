// @vitest-environment jsdom
//
// Correspondence with the CLI: for every cursor position the rendered DOM
// label text per line must equal the text the CLI prints after "  # " for
// the same cursor. Both sides of the comparison are captured from the
// primary toolkit's real interfaces (see scripts/gen_viewer_fixtures.py).

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { beforeEach, describe, expect, test } from "vitest";

import { labelText, renderView } from "../src/render";
import { Viewer } from "../src/viewer";
import type { AugmentLine, AugmentResponse, SourceResponse } from "../src/types";

const fixtureDir = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixtureDir, name), "utf-8")) as T;
}

const source = fixture<SourceResponse>("source.json");
const expectedLabels = fixture<Record<string, string[]>>("expected_labels.json");
const augments = new Map<number, AugmentResponse>();
for (let cursor = 1; cursor <= 5; cursor++) {
  augments.set(cursor, fixture<AugmentResponse>(`augment_cursor${cursor}.json`));
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function apiStub(overrides: { augmentStatus?: number; augmentBody?: unknown } = {}) {
  return async (url: string): Promise<Response> => {
    const parsed = new URL(url, "http://viewer.test");
    if (parsed.pathname === "/api/source") {
      return jsonResponse(source);
    }
    if (parsed.pathname === "/api/augment") {
      if (overrides.augmentStatus !== undefined) {
        return jsonResponse(overrides.augmentBody ?? { error: "boom" }, overrides.augmentStatus);
      }
      const cursor = Number(parsed.searchParams.get("cursor"));
      return jsonResponse(augments.get(cursor));
    }
    return jsonResponse({ error: "file not found" }, 404);
  };
}

let banner: HTMLElement;
let code: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="banner" hidden></div><div id="code"></div>';
  banner = document.getElementById("banner")!;
  code = document.getElementById("code")!;
});

function domLabels(): string[] {
  return Array.from(code.querySelectorAll(".row .label")).map((el) => el.textContent ?? "");
}

function domCode(): string[] {
  return Array.from(code.querySelectorAll(".row .code")).map((el) => el.textContent ?? "");
}

describe("label text", () => {
  test("check mark lines render a check mark", () => {
    const line: AugmentLine = { ln: 1, kind: "check", entries: [] };
    expect(labelText(line)).toBe("✓");
  });

  test("blank lines render nothing", () => {
    expect(labelText({ ln: 2, kind: "none", entries: [] })).toBe("");
  });

  test("value entries join with two spaces", () => {
    const line: AugmentLine = {
      ln: 3,
      kind: "values",
      entries: [
        { name: "n", value: "2" },
        { name: "even", value: "2" },
      ],
    };
    expect(labelText(line)).toBe("n: 2  even: 2");
  });
});

describe("CLI correspondence", () => {
  for (let cursor = 1; cursor <= 5; cursor++) {
    test(`cursor ${cursor}: DOM labels equal the stripped CLI annotation`, () => {
      renderView(code, source.lines, augments.get(cursor)!);
      expect(domLabels()).toEqual(expectedLabels[String(cursor)]);
      expect(domCode()).toEqual(source.lines); // code text is never altered
    });
  }
});

describe("viewer behavior", () => {
  test("load fetches source and cursor 1 augmentation", async () => {
    const viewer = new Viewer("evenodd.samp", { banner, code }, apiStub());
    await viewer.load();
    expect(domLabels()).toEqual(expectedLabels["1"]);
    expect(banner.hidden).toBe(true);
    expect(code.querySelector(".row.cursor")?.getAttribute("data-ln")).toBe("1");
  });

  test("moving the cursor swaps every label at once", async () => {
    const viewer = new Viewer("evenodd.samp", { banner, code }, apiStub());
    await viewer.load();
    await viewer.moveCursor(3);
    expect(domLabels()).toEqual(expectedLabels["3"]);
    expect(code.querySelector(".row.cursor")?.getAttribute("data-ln")).toBe("3");
    await viewer.moveCursor(5);
    expect(domLabels()).toEqual(expectedLabels["5"]);
  });

  test("stale trace shows the server's banner text and hides labels", async () => {
    const viewer = new Viewer("evenodd.samp", { banner, code }, apiStub());
    await viewer.load();
    const stale = new Viewer(
      "evenodd.samp",
      { banner, code },
      apiStub({ augmentStatus: 409, augmentBody: { error: "trace invalidated by edit" } }),
    );
    await stale.load();
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toBe("trace invalidated by edit");
    expect(domLabels()).toEqual(["", "", "", "", ""]);
    expect(domCode()).toEqual(source.lines);
  });

  test("missing file shows the server's error text", async () => {
    const viewer = new Viewer("missing.samp", { banner, code }, apiStub());
    const fetcher = async () => jsonResponse({ error: "file not found" }, 404);
    const failing = new Viewer("missing.samp", { banner, code }, fetcher);
    await failing.load();
    expect(banner.textContent).toBe("file not found");
    void viewer;
  });

  test("only the latest cursor request updates the view", async () => {
    let release3: (() => void) | undefined;
    const gate = new Promise<void>((resolve) => (release3 = resolve));
    const fetcher = async (url: string): Promise<Response> => {
      const parsed = new URL(url, "http://viewer.test");
      if (parsed.pathname === "/api/source") return jsonResponse(source);
      const cursor = Number(parsed.searchParams.get("cursor"));
      if (cursor === 3) {
        await gate; // the older request resolves after the newer one
      }
      return jsonResponse(augments.get(cursor));
    };
    const viewer = new Viewer("evenodd.samp", { banner, code }, fetcher);
    await viewer.load();
    const slow = viewer.moveCursor(3);
    await viewer.moveCursor(5);
    release3!();
    await slow;
    expect(domLabels()).toEqual(expectedLabels["5"]); // cursor-3 response discarded
  });
});
