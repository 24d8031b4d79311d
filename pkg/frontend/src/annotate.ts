/** Recover statement ids from canonical source layout.
 *
 * Exported sources are the canonical pretty-printed form: one statement per
 * line, four-space indents, compound headers ending in "{", and "}" /
 * "} else {" on their own lines.  Statement ids are assigned pre-order over
 * main's body, which in that layout is simply the order of statement lines;
 * brace-only lines belong to the compound that opened them.  This lets the
 * evidence pane color each line by its task without shipping a parser.
 */

export interface LineMap {
  /** per source line: the owning statement id, or null outside main's body */
  lineToSid: (number | null)[];
  sidCount: number;
}

export function mapStatementLines(source: string): LineMap {
  const lines = source.split("\n");
  const lineToSid: (number | null)[] = lines.map(() => null);

  let start = -1;
  for (let i = 0; i < lines.length; i++) {
    if (lines[i]!.startsWith("func main(")) {
      start = i + 1;
      break;
    }
  }
  if (start < 0) return { lineToSid, sidCount: 0 };

  let sid = 0;
  const stack: number[] = [];
  for (let i = start; i < lines.length; i++) {
    const text = lines[i]!.trim();
    if (text === "") continue;
    if (text === "}") {
      if (stack.length === 0) break; // main's own closing brace
      lineToSid[i] = stack.pop()!;
    } else if (text === "} else {") {
      lineToSid[i] = stack[stack.length - 1] ?? null;
    } else if (text.endsWith("{")) {
      lineToSid[i] = sid;
      stack.push(sid);
      sid++;
    } else {
      lineToSid[i] = sid;
      sid++;
    }
  }
  return { lineToSid, sidCount: sid };
}

/** Smallest and largest sid of each task, from a task_of table. */
export function taskIntervals(taskOf: Record<string, number>): Map<number, [number, number]> {
  const out = new Map<number, [number, number]>();
  for (const [sidText, task] of Object.entries(taskOf)) {
    const sid = Number(sidText);
    const cur = out.get(task);
    if (cur === undefined) out.set(task, [sid, sid]);
    else out.set(task, [Math.min(cur[0], sid), Math.max(cur[1], sid)]);
  }
  return out;
}
