/** Token-level syntax highlighting driven by the exported token map.
 *
 * The scanner knows only the language's lexical shapes (strings with
 * backslash escapes, int/float numbers, words, comments); which words are
 * keywords, types, or builtins comes entirely from tokens.json, so the
 * explorer never hardcodes the language.
 */

import type { TokenMap } from "./model";

export type TokenKind =
  | "keyword" | "type" | "literal" | "operator" | "builtin"
  | "string" | "number" | "comment" | "ident" | "plain";

export interface Token {
  text: string;
  kind: TokenKind;
}

function isWordStart(c: string): boolean {
  return /[A-Za-z_]/.test(c);
}

function isWordChar(c: string): boolean {
  return /[A-Za-z0-9_]/.test(c);
}

function isDigit(c: string): boolean {
  return c >= "0" && c <= "9";
}

function wordKind(word: string, map: TokenMap): TokenKind {
  if (map.keyword.includes(word)) return "keyword";
  if (map.type.includes(word)) return "type";
  if (map.literal.includes(word)) return "literal";
  if (map.operator.includes(word)) return "operator";
  if (map.builtin.includes(word)) return "builtin";
  return "ident";
}

export function tokenize(source: string, map: TokenMap): Token[] {
  const out: Token[] = [];
  let i = 0;
  const n = source.length;
  while (i < n) {
    const c = source[i]!;
    if (c === "#") {
      let j = i;
      while (j < n && source[j] !== "\n") j++;
      out.push({ text: source.slice(i, j), kind: "comment" });
      i = j;
    } else if (c === '"') {
      let j = i + 1;
      while (j < n && source[j] !== '"' && source[j] !== "\n") {
        j += source[j] === "\\" ? 2 : 1;
      }
      if (j < n && source[j] === '"') j++;
      out.push({ text: source.slice(i, j), kind: "string" });
      i = j;
    } else if (isDigit(c)) {
      let j = i;
      while (j < n && isDigit(source[j]!)) j++;
      if (source[j] === "." && j + 1 < n && isDigit(source[j + 1]!)) {
        j++;
        while (j < n && isDigit(source[j]!)) j++;
      }
      out.push({ text: source.slice(i, j), kind: "number" });
      i = j;
    } else if (isWordStart(c)) {
      let j = i;
      while (j < n && isWordChar(source[j]!)) j++;
      const word = source.slice(i, j);
      out.push({ text: word, kind: wordKind(word, map) });
      i = j;
    } else {
      let j = i;
      while (j < n) {
        const d = source[j]!;
        if (d === "#" || d === '"' || isDigit(d) || isWordStart(d)) break;
        j++;
      }
      out.push({ text: source.slice(i, j), kind: "plain" });
      i = j;
    }
  }
  return out;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render source text to HTML with one span per colored token. */
export function highlightHtml(source: string, map: TokenMap): string {
  return tokenize(source, map)
    .map((tok) =>
      tok.kind === "plain"
        ? escapeHtml(tok.text)
        : `<span class="tok-${tok.kind}">${escapeHtml(tok.text)}</span>`,
    )
    .join("");
}
