/** Catalog schema types and the strict loader.
 *
 * The explorer consumes the static export tree produced by
 * `decomplab catalog export`: catalog.json, tokens.json, and one source
 * file per program form under exercises/.  The loader mirrors the CLI's
 * strictness — unknown fields, missing fields, and version mismatches are
 * reported with a JSON pointer so the UI can show a precise error banner.
 */

export const SCHEMA_VERSION = 1;

export interface Label {
  repetition: number;
  composition: number;
  data: number;
}

export interface Annotation {
  task_of: Record<string, number>;
  instance_of: Record<string, number>;
  task_names: Record<string, string>;
}

export interface ExerciseRecord {
  id: string;
  title: string;
  description: string;
  unstructured: string;
  decomposed: string;
  annotation: Annotation;
  label: Label;
  evidence: Record<string, unknown>;
  input_suite: unknown[][];
  provenance?: Record<string, unknown>;
  tags: string[];
}

export interface Catalog {
  schema_version: number;
  records: ExerciseRecord[];
}

export interface TokenMap {
  keyword: string[];
  type: string[];
  literal: string[];
  operator: string[];
  builtin: string[];
}

export class CatalogFormatError extends Error {
  pointer: string;

  constructor(message: string, pointer: string) {
    super(`${message} (at ${pointer || "/"})`);
    this.name = "CatalogFormatError";
    this.pointer = pointer;
  }
}

function fail(message: string, pointer: string): never {
  throw new CatalogFormatError(message, pointer);
}

function isObject(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

const RECORD_FIELDS = [
  "id", "title", "description", "unstructured", "decomposed", "annotation",
  "label", "evidence", "input_suite", "provenance", "tags",
];

const STRING_FIELDS = ["id", "title", "description", "unstructured", "decomposed"];
const LABEL_FIELDS = ["repetition", "composition", "data"];
const ANNOTATION_FIELDS = ["task_of", "instance_of", "task_names"];

function parseRecord(data: unknown, pointer: string): ExerciseRecord {
  if (!isObject(data)) fail("record must be an object", pointer);
  for (const key of Object.keys(data)) {
    if (!RECORD_FIELDS.includes(key)) fail("unknown field", `${pointer}/${key}`);
  }
  for (const key of RECORD_FIELDS) {
    if (key !== "provenance" && !(key in data)) {
      fail(`missing field ${key}`, `${pointer}/${key}`);
    }
  }
  for (const key of STRING_FIELDS) {
    if (typeof data[key] !== "string") fail("must be a string", `${pointer}/${key}`);
  }

  const label = data["label"];
  if (!isObject(label)) fail("label must be an object", `${pointer}/label`);
  const labelKeys = Object.keys(label);
  if (labelKeys.length !== 3 || LABEL_FIELDS.some((k) => !(k in label))) {
    fail("label must have exactly repetition/composition/data", `${pointer}/label`);
  }
  for (const k of LABEL_FIELDS) {
    if (!Number.isInteger(label[k])) fail("level must be an integer", `${pointer}/label/${k}`);
  }

  const ann = data["annotation"];
  if (!isObject(ann) || ANNOTATION_FIELDS.some((k) => !isObject(ann[k]))) {
    fail("malformed annotation", `${pointer}/annotation`);
  }

  if (!isObject(data["evidence"])) fail("evidence must be an object", `${pointer}/evidence`);

  const suite = data["input_suite"];
  if (!Array.isArray(suite) || suite.some((row) => !Array.isArray(row))) {
    fail("input_suite must be an array of arrays", `${pointer}/input_suite`);
  }

  const tags = data["tags"];
  if (!Array.isArray(tags) || tags.some((t) => typeof t !== "string")) {
    fail("tags must be an array of strings", `${pointer}/tags`);
  }

  if ("provenance" in data && !isObject(data["provenance"])) {
    fail("provenance must be an object", `${pointer}/provenance`);
  }

  return data as unknown as ExerciseRecord;
}

/** Parse and validate a catalog document; throws CatalogFormatError. */
export function parseCatalog(data: unknown): Catalog {
  if (!isObject(data)) fail("catalog must be an object", "");
  for (const key of Object.keys(data)) {
    if (key !== "schema_version" && key !== "records") fail("unknown field", `/${key}`);
  }
  if (!("schema_version" in data)) fail("missing schema_version", "/schema_version");
  const version = data["schema_version"];
  if (!Number.isInteger(version)) fail("schema_version must be an integer", "/schema_version");
  if (version !== SCHEMA_VERSION) {
    fail(`unsupported schema_version ${version}, expected ${SCHEMA_VERSION}`, "/schema_version");
  }
  const records = data["records"];
  if (!Array.isArray(records)) fail("records must be an array", "/records");
  const parsed = records.map((r, i) => parseRecord(r, `/records/${i}`));
  const seen = new Set<string>();
  for (let i = 0; i < parsed.length; i++) {
    const rec = parsed[i]!;
    if (seen.has(rec.id)) fail(`duplicate id ${rec.id}`, `/records/${i}/id`);
    seen.add(rec.id);
  }
  return { schema_version: SCHEMA_VERSION, records: parsed };
}

export function parseTokenMap(data: unknown): TokenMap {
  if (!isObject(data)) fail("token map must be an object", "");
  for (const key of ["keyword", "type", "literal", "operator", "builtin"]) {
    const v = data[key];
    if (!Array.isArray(v) || v.some((t) => typeof t !== "string")) {
      fail("must be an array of strings", `/${key}`);
    }
  }
  return data as unknown as TokenMap;
}
