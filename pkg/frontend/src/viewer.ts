import { ApiFailure, FetchLike, fetchAugment, fetchSource } from "./api";
import { renderBanner, renderView } from "./render";
import type { AugmentResponse, SourceResponse } from "./types";

export interface ViewerElements {
  banner: HTMLElement;
  code: HTMLElement;
}

/**
 * Read-only trace viewer. The caret position is the only input: clicking a
 * line re-fetches the augmentation for that cursor and swaps every label at
 * once. Only the latest in-flight request may update the view; responses
 * for an older cursor are discarded.
 */
export class Viewer {
  readonly file: string;
  cursor = 1;
  source: SourceResponse | null = null;
  augment: AugmentResponse | null = null;

  private readonly elements: ViewerElements;
  private readonly fetcher: FetchLike;
  private requestToken = 0;

  constructor(file: string, elements: ViewerElements, fetcher: FetchLike = (url) => fetch(url)) {
    this.file = file;
    this.elements = elements;
    this.fetcher = fetcher;
  }

  async load(): Promise<void> {
    try {
      this.source = await fetchSource(this.fetcher, this.file);
    } catch (err) {
      this.showError(err);
      return;
    }
    await this.moveCursor(1);
  }

  async moveCursor(line: number): Promise<void> {
    if (this.source === null) return;
    this.cursor = line;
    const token = ++this.requestToken;
    try {
      const augment = await fetchAugment(this.fetcher, this.file, line);
      if (token !== this.requestToken) return; // a newer cursor won
      this.augment = augment;
      renderBanner(this.elements.banner, null);
      this.redraw();
    } catch (err) {
      if (token !== this.requestToken) return;
      this.augment = null;
      this.showError(err);
      this.redraw(); // code stays visible, labels hidden
    }
  }

  private redraw(): void {
    if (this.source === null) return;
    renderView(this.elements.code, this.source.lines, this.augment, {
      onLineClick: (ln) => void this.moveCursor(ln),
    });
  }

  private showError(err: unknown): void {
    const message = err instanceof ApiFailure ? err.message : "unexpected error";
    renderBanner(this.elements.banner, message);
  }
}
