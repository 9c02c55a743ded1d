// Wire format of the samp serve API. Field names must match the server
// byte-for-byte; the viewer performs no selection logic of its own.

export interface SourceResponse {
  path: string;
  hash: string;
  lines: string[];
}

export type AugmentKind = "values" | "check" | "none";

export interface AugmentEntry {
  name: string;
  value: string;
}

export interface AugmentLine {
  ln: number;
  kind: AugmentKind;
  entries: AugmentEntry[];
}

export interface AugmentResponse {
  cursor: number;
  pass_by_function: Record<string, number>;
  lines: AugmentLine[];
}

export interface ApiError {
  error: string;
}
