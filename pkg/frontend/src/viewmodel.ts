/** Explorer state and its transitions (pure; rendering lives elsewhere). */

import { parseCatalog, type Catalog, type ExerciseRecord } from "./model";
import { applyFilter, emptyFilter, type FilterState, type Pane } from "./filter";

export interface ViewModel {
  catalog: Catalog | null;
  /** blocking load error (message includes the JSON pointer), or null */
  error: string | null;
  filter: FilterState;
  /** records matching the filter, in catalog order */
  results: ExerciseRecord[];
  /** selected record id; always a member of results, or null */
  currentId: string | null;
  /** an id that was requested but does not exist in the catalog */
  notFound: string | null;
  pane: Pane;
}

export function loadCatalog(data: unknown): ViewModel {
  const vm: ViewModel = {
    catalog: null,
    error: null,
    filter: emptyFilter(),
    results: [],
    currentId: null,
    notFound: null,
    pane: "unstructured",
  };
  try {
    vm.catalog = parseCatalog(data);
    vm.results = vm.catalog.records;
  } catch (e) {
    vm.error = e instanceof Error ? e.message : String(e);
  }
  return vm;
}

export function loadFailed(message: string): ViewModel {
  const vm = loadCatalog({});
  vm.error = message;
  return vm;
}

export function setFilter(vm: ViewModel, f: FilterState): ViewModel {
  const results = vm.catalog ? applyFilter(vm.catalog.records, f) : [];
  const currentId =
    vm.currentId !== null && results.some((r) => r.id === vm.currentId)
      ? vm.currentId
      : null;
  return { ...vm, filter: f, results, currentId };
}

export function showRecord(vm: ViewModel, id: string, pane?: Pane): ViewModel {
  const nextPane = pane ?? vm.pane;
  if (vm.catalog === null) return vm;
  if (!vm.catalog.records.some((r) => r.id === id)) {
    return { ...vm, currentId: null, notFound: id, pane: nextPane };
  }
  const visible = vm.results.some((r) => r.id === id);
  return { ...vm, currentId: visible ? id : null, notFound: null, pane: nextPane };
}

export function setPane(vm: ViewModel, pane: Pane): ViewModel {
  return { ...vm, pane };
}

export function currentRecord(vm: ViewModel): ExerciseRecord | null {
  if (vm.currentId === null) return null;
  return vm.results.find((r) => r.id === vm.currentId) ?? null;
}
