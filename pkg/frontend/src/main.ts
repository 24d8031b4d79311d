/** Browser entry point: fetch the export tree, wire state to the URL hash. */

import { decodeHash, encodeHash, type FilterState, type Pane } from "./filter";
import { parseTokenMap, type TokenMap } from "./model";
import { renderApp, type Handlers } from "./render";
import {
  loadCatalog,
  loadFailed,
  setFilter,
  setPane,
  showRecord,
  type ViewModel,
} from "./viewmodel";

const FALLBACK_TOKENS: TokenMap = { keyword: [], type: [], literal: [], operator: [], builtin: [] };

async function fetchJson(url: string): Promise<unknown> {
  const res = await fetch(url);
  if (!res.ok) throw new Error(`${url}: HTTP ${res.status}`);
  return res.json();
}

function boot(root: HTMLElement): void {
  let vm: ViewModel;
  let tokens: TokenMap = FALLBACK_TOKENS;
  let writtenHash = "";

  const syncHash = () => {
    writtenHash = encodeHash({ filter: vm.filter, recordId: vm.currentId, pane: vm.pane });
    if (window.location.hash !== writtenHash) {
      window.history.replaceState(null, "", writtenHash || "#");
    }
  };

  const handlers: Handlers = {
    onFilter(f: FilterState) {
      vm = setFilter(vm, f);
      syncHash();
      renderApp(root, vm, tokens, handlers);
    },
    onSelect(id: string) {
      vm = showRecord(vm, id);
      syncHash();
      renderApp(root, vm, tokens, handlers);
    },
    onPane(pane: Pane) {
      vm = setPane(vm, pane);
      syncHash();
      renderApp(root, vm, tokens, handlers);
    },
  };

  const applyHash = () => {
    const state = decodeHash(window.location.hash);
    vm = setFilter(vm, state.filter);
    if (state.recordId !== null) vm = showRecord(vm, state.recordId, state.pane);
    else vm = setPane(vm, state.pane);
  };

  Promise.all([fetchJson("data/catalog.json"), fetchJson("data/tokens.json")])
    .then(([catalogJson, tokensJson]) => {
      vm = loadCatalog(catalogJson);
      try {
        tokens = parseTokenMap(tokensJson);
      } catch {
        tokens = FALLBACK_TOKENS;
      }
      if (vm.error === null) applyHash();
      renderApp(root, vm, tokens, handlers);
      window.addEventListener("hashchange", () => {
        if (window.location.hash === writtenHash) return;
        applyHash();
        renderApp(root, vm, tokens, handlers);
      });
    })
    .catch((err: unknown) => {
      vm = loadFailed(err instanceof Error ? err.message : String(err));
      renderApp(root, vm, tokens, handlers);
    });
}

const root = document.getElementById("app");
if (root !== null) boot(root);
