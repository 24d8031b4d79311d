import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

export function dataFile(rel: string): unknown {
  return JSON.parse(readFileSync(join(here, "..", "public", "data", rel), "utf-8"));
}

export function goldenQueries(): GoldenQuery[] {
  return JSON.parse(
    readFileSync(join(here, "goldens", "queries.json"), "utf-8"),
  ) as GoldenQuery[];
}

export interface GoldenQuery {
  name: string;
  repetition: number[];
  composition: number[];
  data: number[];
  tags: string[];
  ids: string[];
}
