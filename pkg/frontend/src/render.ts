/** DOM rendering.  The whole app re-renders from the ViewModel on every
 * state change; the catalog is small enough that diffing would be noise. */

import { mapStatementLines, taskIntervals } from "./annotate";
import { DIMENSIONS, LEVELS, PANES, parseTags, type FilterState, type Pane } from "./filter";
import { escapeHtml, highlightHtml } from "./highlight";
import type { ExerciseRecord, Label, TokenMap } from "./model";
import { currentRecord, type ViewModel } from "./viewmodel";

export interface Handlers {
  onFilter(f: FilterState): void;
  onSelect(id: string): void;
  onPane(pane: Pane): void;
}

const PANE_TITLES: Record<Pane, string> = {
  unstructured: "Unstructured",
  decomposed: "Decomposed",
  "side-by-side": "Side by side",
  evidence: "Evidence",
};

const TASK_COLORS = 7; // css classes task-c0 .. task-c6; glue stays uncolored

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function labelBadges(doc: Document, label: Label): HTMLElement {
  const wrap = el(doc, "span", "badges");
  const parts: [string, number][] = [
    ["R", label.repetition],
    ["C", label.composition],
    ["D", label.data],
  ];
  for (const [letter, level] of parts) {
    const badge = el(doc, "span", `badge badge-${letter.toLowerCase()}${level}`);
    badge.textContent = `${letter}${level}`;
    wrap.appendChild(badge);
  }
  return wrap;
}

function cloneFilter(f: FilterState): FilterState {
  return {
    repetition: new Set(f.repetition),
    composition: new Set(f.composition),
    data: new Set(f.data),
    tags: [...f.tags],
  };
}

function renderFilters(doc: Document, vm: ViewModel, on: Handlers): HTMLElement {
  const aside = el(doc, "aside", "filters");
  aside.appendChild(el(doc, "h2", undefined, "Filter"));
  for (const dim of DIMENSIONS) {
    const box = el(doc, "fieldset", `filter-${dim}`);
    box.appendChild(el(doc, "legend", undefined, dim));
    for (const level of LEVELS) {
      const lab = el(doc, "label", "level-option");
      const input = el(doc, "input");
      input.type = "checkbox";
      input.value = String(level);
      input.dataset["dimension"] = dim;
      input.checked = vm.filter[dim].has(level);
      input.addEventListener("change", () => {
        const next = cloneFilter(vm.filter);
        if (input.checked) next[dim].add(level);
        else next[dim].delete(level);
        on.onFilter(next);
      });
      lab.appendChild(input);
      lab.appendChild(doc.createTextNode(String(level)));
      box.appendChild(lab);
    }
    aside.appendChild(box);
  }
  const tagBox = el(doc, "fieldset", "filter-tags");
  tagBox.appendChild(el(doc, "legend", undefined, "tags"));
  const input = el(doc, "input");
  input.type = "text";
  input.placeholder = "comma-separated";
  input.value = vm.filter.tags.join(",");
  input.addEventListener("change", () => {
    const next = cloneFilter(vm.filter);
    next.tags = parseTags(input.value);
    on.onFilter(next);
  });
  tagBox.appendChild(input);
  aside.appendChild(tagBox);
  return aside;
}

function renderResultList(doc: Document, vm: ViewModel, on: Handlers): HTMLElement {
  const section = el(doc, "section", "results");
  const total = vm.catalog ? vm.catalog.records.length : 0;
  section.appendChild(
    el(doc, "p", "result-count", `${vm.results.length} of ${total} exercises`),
  );
  if (vm.results.length === 0) {
    const message =
      total === 0
        ? "The catalog contains no exercises."
        : "No exercises match the current filter.";
    section.appendChild(el(doc, "p", "zero-state", message));
    return section;
  }
  const list = el(doc, "ul", "record-list");
  for (const rec of vm.results) {
    const item = el(doc, "li");
    const button = el(doc, "button", "record-item");
    button.dataset["id"] = rec.id;
    if (rec.id === vm.currentId) button.classList.add("selected");
    button.appendChild(el(doc, "strong", "record-title", rec.title));
    button.appendChild(el(doc, "code", "record-id", rec.id));
    button.appendChild(labelBadges(doc, rec.label));
    button.appendChild(el(doc, "span", "record-tags", rec.tags.join(", ")));
    button.addEventListener("click", () => on.onSelect(rec.id));
    item.appendChild(button);
    list.appendChild(item);
  }
  section.appendChild(list);
  return section;
}

function sourceBlock(doc: Document, source: string, tokens: TokenMap, title?: string): HTMLElement {
  const figure = el(doc, "figure", "source-block");
  if (title) figure.appendChild(el(doc, "figcaption", undefined, title));
  const pre = el(doc, "pre", "source");
  const code = el(doc, "code");
  code.innerHTML = highlightHtml(source, tokens);
  pre.appendChild(code);
  figure.appendChild(pre);
  return figure;
}

interface DataWitness {
  kind?: string;
  def_sid?: number;
  consumer_sids?: number[];
  consumer_tasks?: number[];
  foreign_sid?: number;
  foreign_task?: number;
  task?: number;
  interval?: [number, number];
  edge?: [number, number];
  tasks?: number[];
}

function dataWitness(rec: ExerciseRecord): DataWitness {
  const data = rec.evidence["data"];
  if (typeof data === "object" && data !== null && "witness" in data) {
    return (data as { witness: DataWitness }).witness ?? {};
  }
  return {};
}

function compositionPairs(rec: ExerciseRecord): { a: number; b: number; relation: string }[] {
  const comp = rec.evidence["composition"];
  if (typeof comp === "object" && comp !== null && "pairs" in comp) {
    return (comp as { pairs: { a: number; b: number; relation: string }[] }).pairs ?? [];
  }
  return [];
}

function witnessText(w: DataWitness): string {
  switch (w.kind) {
    case "shared-definition":
      return `Statement ${w.def_sid} is a shared definition consumed by tasks ` +
        `${(w.consumer_tasks ?? []).join(" and ")} (statements ${(w.consumer_sids ?? []).join(", ")}).`;
    case "interval-foreign":
      return `Statement ${w.foreign_sid} (task ${w.foreign_task}) sits inside ` +
        `task ${w.task}'s statement range [${(w.interval ?? []).join(", ")}].`;
    case "cross-task-flow":
      return `A value flows from statement ${(w.edge ?? [])[0]} to statement ` +
        `${(w.edge ?? [])[1]} (tasks ${(w.tasks ?? []).join(" → ")}).`;
    default:
      return "Tasks are independent: no data crosses task boundaries.";
  }
}

function renderEvidence(doc: Document, rec: ExerciseRecord, tokens: TokenMap): HTMLElement {
  const wrap = el(doc, "div", "evidence");
  const witness = dataWitness(rec);

  const legend = el(doc, "ul", "task-legend");
  const intervals = taskIntervals(rec.annotation.task_of);
  const names = rec.annotation.task_names;
  const tasks = [...intervals.keys()].sort((a, b) => a - b);
  for (const task of tasks) {
    const [lo, hi] = intervals.get(task)!;
    const item = el(doc, "li", task === 0 ? "task-glue" : `task-c${task % TASK_COLORS}`);
    const name = task === 0 ? "glue" : (names[String(task)] ?? `task ${task}`);
    item.textContent = `task ${task} — ${name} · statements ${lo}–${hi}`;
    item.dataset["task"] = String(task);
    legend.appendChild(item);
  }
  wrap.appendChild(legend);

  const pairs = compositionPairs(rec);
  if (pairs.length > 0) {
    const list = el(doc, "ul", "composition-pairs");
    for (const p of pairs) {
      list.appendChild(el(doc, "li", `pair-${p.relation}`,
        `tasks ${p.a} and ${p.b}: ${p.relation}`));
    }
    wrap.appendChild(list);
  }

  wrap.appendChild(el(doc, "p", "witness-text", witnessText(witness)));

  const { lineToSid } = mapStatementLines(rec.unstructured);
  const taskOf = rec.annotation.task_of;
  const consumers = new Set(witness.consumer_sids ?? []);
  const block = el(doc, "div", "annotated-source");
  const lines = rec.unstructured.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const text = lines[i] ?? "";
    if (i === lines.length - 1 && text === "") break; // trailing newline
    const sid = lineToSid[i] ?? null;
    const line = el(doc, "div", "code-line");
    if (sid !== null) {
      line.dataset["sid"] = String(sid);
      const task = taskOf[String(sid)];
      if (task !== undefined) {
        line.dataset["task"] = String(task);
        line.classList.add(task === 0 ? "task-glue" : `task-c${task % TASK_COLORS}`);
      }
      if (witness.kind === "shared-definition") {
        if (sid === witness.def_sid) line.classList.add("witness-def");
        if (consumers.has(sid)) line.classList.add("witness-consumer");
      } else if (witness.kind === "interval-foreign") {
        if (sid === witness.foreign_sid) line.classList.add("witness-foreign");
      } else if (witness.kind === "cross-task-flow" && witness.edge) {
        if (sid === witness.edge[0]) line.classList.add("witness-def");
        if (sid === witness.edge[1]) line.classList.add("witness-consumer");
      }
    }
    line.innerHTML = highlightHtml(text, tokens) || "&nbsp;";
    if (sid !== null) {
      line.insertAdjacentHTML("afterbegin", `<span class="sid">${escapeHtml(String(sid))}</span>`);
    } else {
      line.insertAdjacentHTML("afterbegin", '<span class="sid"></span>');
    }
    block.appendChild(line);
  }
  wrap.appendChild(block);
  return wrap;
}

function renderDetail(doc: Document, vm: ViewModel, tokens: TokenMap, on: Handlers): HTMLElement {
  const section = el(doc, "section", "detail");
  if (vm.notFound !== null) {
    section.appendChild(
      el(doc, "p", "not-found", `No exercise named "${vm.notFound}" in this catalog.`),
    );
    return section;
  }
  const rec = currentRecord(vm);
  if (rec === null) {
    section.appendChild(el(doc, "p", "detail-placeholder", "Select an exercise."));
    return section;
  }

  const header = el(doc, "header", "detail-header");
  const heading = el(doc, "h2", undefined, rec.title);
  heading.appendChild(el(doc, "code", "record-id", rec.id));
  heading.appendChild(labelBadges(doc, rec.label));
  header.appendChild(heading);
  header.appendChild(el(doc, "p", "description", rec.description));
  section.appendChild(header);

  const tabs = el(doc, "nav", "pane-tabs");
  for (const pane of PANES) {
    const tab = el(doc, "button", "pane-tab", PANE_TITLES[pane]);
    tab.dataset["pane"] = pane;
    if (pane === vm.pane) tab.classList.add("active");
    tab.addEventListener("click", () => on.onPane(pane));
    tabs.appendChild(tab);
  }
  section.appendChild(tabs);

  const body = el(doc, "div", `pane pane-${vm.pane}`);
  if (vm.pane === "unstructured") {
    body.appendChild(sourceBlock(doc, rec.unstructured, tokens));
  } else if (vm.pane === "decomposed") {
    body.appendChild(sourceBlock(doc, rec.decomposed, tokens));
  } else if (vm.pane === "side-by-side") {
    const grid = el(doc, "div", "side-by-side");
    grid.appendChild(sourceBlock(doc, rec.unstructured, tokens, "Unstructured"));
    grid.appendChild(sourceBlock(doc, rec.decomposed, tokens, "Decomposed"));
    body.appendChild(grid);
  } else {
    body.appendChild(renderEvidence(doc, rec, tokens));
  }
  section.appendChild(body);
  return section;
}

export function renderApp(
  root: HTMLElement,
  vm: ViewModel,
  tokens: TokenMap,
  on: Handlers,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  if (vm.error !== null) {
    root.appendChild(el(doc, "div", "error-banner", `Could not load catalog: ${vm.error}`));
    return;
  }
  const layout = el(doc, "div", "layout");
  layout.appendChild(renderFilters(doc, vm, on));
  const main = el(doc, "main", "content");
  main.appendChild(renderResultList(doc, vm, on));
  main.appendChild(renderDetail(doc, vm, tokens, on));
  layout.appendChild(main);
  root.appendChild(layout);
}
