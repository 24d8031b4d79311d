/** Filtering with the same semantics as `decomplab catalog query`.
 *
 * A FilterState carries one level subset per dimension (empty = any) and a
 * conjunctive tag list.  matches/applyFilter mirror the CLI exactly: a
 * record passes when each non-empty level set contains its level and every
 * requested tag is present; results keep catalog order.
 */

import type { ExerciseRecord } from "./model";

export type Pane = "unstructured" | "decomposed" | "side-by-side" | "evidence";

export const PANES: Pane[] = ["unstructured", "decomposed", "side-by-side", "evidence"];

export const DIMENSIONS = ["repetition", "composition", "data"] as const;
export type Dimension = (typeof DIMENSIONS)[number];

export const LEVELS = [0, 1, 2, 3];

export interface FilterState {
  repetition: Set<number>;
  composition: Set<number>;
  data: Set<number>;
  tags: string[];
}

export function emptyFilter(): FilterState {
  return { repetition: new Set(), composition: new Set(), data: new Set(), tags: [] };
}

/** Split a comma-separated tag string; empty segments are dropped,
 * nothing is trimmed or folded (tags are exact strings, as in the CLI). */
export function parseTags(text: string): string[] {
  return text.split(",").filter((t) => t.length > 0);
}

export function matches(rec: ExerciseRecord, f: FilterState): boolean {
  for (const dim of DIMENSIONS) {
    const wanted = f[dim];
    if (wanted.size > 0 && !wanted.has(rec.label[dim])) return false;
  }
  return f.tags.every((tag) => rec.tags.includes(tag));
}

export function applyFilter(records: ExerciseRecord[], f: FilterState): ExerciseRecord[] {
  return records.filter((rec) => matches(rec, f));
}

// ---------------------------------------------------------------------------
// URL hash encoding: the whole shareable state lives after '#'

const HASH_KEYS: Record<Dimension, string> = {
  repetition: "r",
  composition: "c",
  data: "d",
};

function levelsToText(levels: Set<number>): string {
  return [...levels].sort((a, b) => a - b).join(",");
}

function levelsFromText(text: string): Set<number> {
  const out = new Set<number>();
  for (const part of text.split(",")) {
    const n = Number(part);
    if (Number.isInteger(n) && n >= 0 && n <= 3) out.add(n);
  }
  return out;
}

export interface HashState {
  filter: FilterState;
  recordId: string | null;
  pane: Pane;
}

export function encodeHash(state: HashState): string {
  const parts: string[] = [];
  for (const dim of DIMENSIONS) {
    const levels = state.filter[dim];
    if (levels.size > 0) parts.push(`${HASH_KEYS[dim]}=${levelsToText(levels)}`);
  }
  if (state.filter.tags.length > 0) {
    parts.push(`tags=${state.filter.tags.map(encodeURIComponent).join(",")}`);
  }
  if (state.recordId !== null) parts.push(`rec=${encodeURIComponent(state.recordId)}`);
  if (state.pane !== "unstructured") parts.push(`pane=${state.pane}`);
  return parts.length > 0 ? `#${parts.join("&")}` : "";
}

export function decodeHash(hash: string): HashState {
  const state: HashState = { filter: emptyFilter(), recordId: null, pane: "unstructured" };
  const text = hash.startsWith("#") ? hash.slice(1) : hash;
  if (text === "") return state;
  for (const part of text.split("&")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = part.slice(0, eq);
    const value = part.slice(eq + 1);
    if (key === "r") state.filter.repetition = levelsFromText(value);
    else if (key === "c") state.filter.composition = levelsFromText(value);
    else if (key === "d") state.filter.data = levelsFromText(value);
    else if (key === "tags") state.filter.tags = parseTags(value).map(decodeURIComponent);
    else if (key === "rec") state.recordId = decodeURIComponent(value);
    else if (key === "pane" && (PANES as string[]).includes(value)) state.pane = value as Pane;
  }
  return state;
}
