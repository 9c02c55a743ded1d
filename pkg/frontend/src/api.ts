import type { AugmentResponse, SourceResponse } from "./types";

export type FetchLike = (url: string) => Promise<Response>;

export class ApiFailure extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function getJson<T>(fetcher: FetchLike, url: string): Promise<T> {
  let resp: Response;
  try {
    resp = await fetcher(url);
  } catch {
    throw new ApiFailure(0, "server unreachable");
  }
  if (!resp.ok) {
    let message = `request failed (${resp.status})`;
    try {
      const body = (await resp.json()) as { error?: string };
      if (body && typeof body.error === "string") message = body.error;
    } catch {
      // keep the generic message
    }
    throw new ApiFailure(resp.status, message);
  }
  return (await resp.json()) as T;
}

export function fetchSource(fetcher: FetchLike, file: string): Promise<SourceResponse> {
  return getJson(fetcher, `/api/source?file=${encodeURIComponent(file)}`);
}

export function fetchAugment(fetcher: FetchLike, file: string, cursor: number): Promise<AugmentResponse> {
  return getJson(fetcher, `/api/augment?file=${encodeURIComponent(file)}&cursor=${cursor}`);
}
