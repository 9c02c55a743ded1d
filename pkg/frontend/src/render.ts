import type { AugmentLine, AugmentResponse } from "./types";

/**
 * The label text for one line: `name: value` pairs separated by two spaces,
 * a check mark for executed lines without variables, or nothing. This is a
 * pure function of the augment response, so label text always equals the
 * suffix the CLI prints after "  # " for the same cursor.
 */
export function labelText(line: AugmentLine): string {
  if (line.kind === "check") return "✓";
  if (line.kind === "values") {
    return line.entries.map((e) => `${e.name}: ${e.value}`).join("  ");
  }
  return "";
}

export interface RenderOptions {
  onLineClick?: (ln: number) => void;
}

/**
 * Rebuild the code grid: one row per source line with the line number, the
 * untouched code text and a dimmed trailing label. All rows swap at once so
 * a mixed-pass frame is never visible. Labels are hidden entirely when
 * `augment` is null (e.g. a stale trace).
 */
export function renderView(
  container: HTMLElement,
  sourceLines: string[],
  augment: AugmentResponse | null,
  opts: RenderOptions = {},
): void {
  const doc = container.ownerDocument;
  const rows = doc.createDocumentFragment();
  sourceLines.forEach((text, i) => {
    const ln = i + 1;
    const row = doc.createElement("div");
    row.className = "row";
    row.dataset.ln = String(ln);
    if (augment !== null && ln === augment.cursor) {
      row.classList.add("cursor");
    }
    const num = doc.createElement("span");
    num.className = "ln";
    num.textContent = String(ln);
    const code = doc.createElement("span");
    code.className = "code";
    code.textContent = text;
    const label = doc.createElement("span");
    label.className = "label";
    label.textContent = augment === null ? "" : labelText(augment.lines[i]);
    row.append(num, code, label);
    if (opts.onLineClick) {
      row.addEventListener("click", () => opts.onLineClick!(ln));
    }
    rows.append(row);
  });
  container.replaceChildren(rows);
}

export function renderBanner(banner: HTMLElement, message: string | null): void {
  banner.textContent = message ?? "";
  banner.hidden = message === null;
}
