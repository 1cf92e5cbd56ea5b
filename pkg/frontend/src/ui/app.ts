// DOM shell. Renders from store snapshots and translates browser events
// into store gestures; all model logic lives in the store and validator.

import type { ApiClient } from "../api";
import { renderChart } from "../chart";
import type { EditorStore, Point } from "../store";
import {
  ATTRIBUTE_FIELDS,
  CATEGORIES,
  type Category,
  type ComponentDoc,
  COMPONENT_KINDS,
  INTERACTION_KINDS,
  type InteractionKind,
  PARAM_FIELDS,
  type ParamField,
} from "../types";

export function createApp(root: HTMLElement, store: EditorStore, api: ApiClient): void {
  root.classList.add("ecomod-editor");
  const toolbar = el("header", "toolbar");
  const body = el("div", "body");
  const palette = el("aside", "palette");
  const canvasWrap = el("div", "canvas-wrap");
  const canvas = el("div", "canvas");
  const edgeLayer = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  edgeLayer.setAttribute("class", "edges");
  const inspector = el("aside", "inspector");
  const footer = el("footer", "footer");
  const issues = el("ul", "issues");
  const chartHolder = el("div", "chart-holder");
  const tooltip = el("div", "chart-tooltip");

  canvasWrap.append(canvas);
  canvas.append(edgeLayer);
  body.append(palette, canvasWrap, inspector);
  footer.append(issues, chartHolder, tooltip);
  root.replaceChildren(toolbar, body, footer);

  // -- toolbar ---------------------------------------------------------------

  const nameInput = input("model-name", "model name");
  nameInput.addEventListener("change", () => store.setModelName(nameInput.value));

  const validateButton = button("validate", "Validate", () => {
    void store.validateRemote(api).catch(() => undefined);
  });
  const saveButton = button("save", "Save", () => {
    void store.save(api).catch(() => undefined);
  });

  const seedInput = input("seed", "seed");
  seedInput.value = "42";
  const monthsInput = input("months", "months");
  monthsInput.value = "60";
  const runButton = button("run", "Run", () => {
    void store
      .runSimulation(api, Number(seedInput.value), Number(monthsInput.value))
      .catch(() => undefined);
  });
  const status = el("span", "status");
  toolbar.append(nameInput, validateButton, saveButton, seedInput, monthsInput, runButton, status);

  // -- palette ---------------------------------------------------------------

  for (const kind of COMPONENT_KINDS) {
    const b = button(`add-${kind}`, `+ ${kind}`, () => store.addComponent(kind));
    b.dataset.kind = kind;
    palette.append(b);
  }
  const connectKind = document.createElement("select");
  connectKind.className = "connect-kind";
  connectKind.append(option("move / select", "", true));
  for (const kind of INTERACTION_KINDS) connectKind.append(option(`link: ${kind}`, kind, false));
  palette.append(connectKind);

  // -- canvas gestures -------------------------------------------------------

  let drag: { id: string; last: Point } | null = null;

  canvas.addEventListener("mousedown", (event) => {
    const node = (event.target as HTMLElement).closest<HTMLElement>(".node");
    if (!node?.dataset.id) return;
    store.select({ type: "component", id: node.dataset.id });
    drag = { id: node.dataset.id, last: { x: event.clientX, y: event.clientY } };
  });

  canvas.addEventListener("mousemove", (event) => {
    if (!drag || connectKind.value !== "") return;
    const at = store.snapshot().layout[drag.id];
    if (!at) return;
    const next = {
      x: at.x + (event.clientX - drag.last.x),
      y: at.y + (event.clientY - drag.last.y),
    };
    drag.last = { x: event.clientX, y: event.clientY };
    store.moveComponent(drag.id, next);
  });

  canvas.addEventListener("mouseup", (event) => {
    const source = drag;
    drag = null;
    if (!source) return;
    const kind = connectKind.value as InteractionKind | "";
    if (kind === "") return;
    const node = (event.target as HTMLElement).closest<HTMLElement>(".node");
    const targetId = node?.dataset.id;
    if (targetId && targetId !== source.id) store.connect(source.id, targetId, kind);
  });

  // -- render ----------------------------------------------------------------

  function render(): void {
    const state = store.snapshot();
    if (document.activeElement !== nameInput) nameInput.value = state.doc.name;
    status.textContent = state.status + (state.dirty ? " *" : "");

    // nodes
    const existing = new Map<string, HTMLElement>();
    for (const node of canvas.querySelectorAll<HTMLElement>(".node")) {
      if (node.dataset.id) existing.set(node.dataset.id, node);
    }
    for (const comp of state.doc.components) {
      let node = existing.get(comp.id);
      if (!node) {
        node = el("div", "node");
        node.dataset.id = comp.id;
        canvas.append(node);
      }
      existing.delete(comp.id);
      const at = state.layout[comp.id] ?? { x: 0, y: 0 };
      node.style.left = `${at.x}px`;
      node.style.top = `${at.y}px`;
      node.classList.toggle("abiotic", comp.kind === "abiotic");
      node.classList.toggle(
        "selected",
        state.selection?.type === "component" && state.selection.id === comp.id,
      );
      node.textContent = comp.name || comp.id;
    }
    for (const orphan of existing.values()) orphan.remove();

    // edges
    edgeLayer.replaceChildren();
    for (const inter of state.doc.interactions) {
      const from = state.layout[inter.source_id];
      const to = state.layout[inter.target_id];
      if (!from || !to) continue;
      const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
      line.setAttribute("x1", String(from.x + 50));
      line.setAttribute("y1", String(from.y + 20));
      line.setAttribute("x2", String(to.x + 50));
      line.setAttribute("y2", String(to.y + 20));
      line.setAttribute("class", "edge");
      line.setAttribute("data-id", inter.id);
      line.addEventListener("mousedown", (event) => {
        event.stopPropagation();
        store.select({ type: "interaction", id: inter.id });
      });
      edgeLayer.append(line);
      const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
      label.setAttribute("x", String((from.x + to.x) / 2 + 50));
      label.setAttribute("y", String((from.y + to.y) / 2 + 14));
      label.setAttribute("class", "edge-label");
      label.textContent = inter.kind;
      edgeLayer.append(label);
    }

    renderInspector(state);
    renderIssues(state);
    renderRun(state);
  }

  function renderInspector(state: ReturnType<EditorStore["snapshot"]>): void {
    inspector.replaceChildren();
    const selection = state.selection;
    if (!selection) {
      inspector.append(el("p", "hint", "select a node or edge"));
      return;
    }
    if (selection.type === "component") {
      const comp = state.doc.components.find((c) => c.id === selection.id);
      if (comp) renderComponentForm(comp);
      return;
    }
    const inter = state.doc.interactions.find((i) => i.id === selection.id);
    if (inter) renderInteractionForm(inter);
  }

  function renderComponentForm(comp: ComponentDoc): void {
    inspector.append(el("h3", "", `${comp.kind} component`));

    inspector.append(
      labeled("id", textField("comp-id", comp.id, (value) => {
        try {
          store.changeComponentId(comp.id, value);
        } catch {
          render();
        }
      })),
      labeled("name", textField("comp-name", comp.name, (v) => store.renameComponent(comp.id, v))),
    );

    const kindSelect = selectField(COMPONENT_KINDS, comp.kind, (v) => store.setComponentKind(comp.id, v));
    kindSelect.className = "comp-kind";
    inspector.append(labeled("kind", kindSelect));

    const categorySelect = selectField(CATEGORIES, comp.category ?? "uncategorized", (v) =>
      store.setCategory(comp.id, v as Category),
    );
    categorySelect.className = "comp-category";
    inspector.append(labeled("category", categorySelect));

    const unlimited = document.createElement("input");
    unlimited.type = "checkbox";
    unlimited.className = "comp-unlimited";
    unlimited.checked = comp.unlimited === true;
    unlimited.addEventListener("change", () => store.setUnlimited(comp.id, unlimited.checked));
    inspector.append(labeled("unlimited", unlimited));

    if (comp.kind === "biotic") {
      inspector.append(
        labeled(
          "initial population",
          numberField("comp-population", comp.initial_population, (v) =>
            store.setInitialPopulation(comp.id, v),
          ),
        ),
      );

      const search = el("div", "species-search");
      const query = input("species-query", "search species");
      const go = button("species-go", "Lookup", () => {
        void api
          .searchSpecies(query.value)
          .then((hits) => {
            results.replaceChildren();
            for (const hit of hits) {
              const apply = button(
                "species-apply",
                `${hit.scientific_name} (${hit.attribute_record_count} records)`,
                () => {
                  void api
                    .speciesAttributes(hit.taxon_id)
                    .then((bundle) => store.applySpeciesBundle(comp.id, bundle))
                    .catch(() => undefined);
                },
              );
              apply.dataset.taxonId = hit.taxon_id;
              results.append(apply);
            }
          })
          .catch(() => undefined);
      });
      const results = el("div", "species-results");
      search.append(query, go, results);
      inspector.append(search);

      const attrs = el("div", "attributes");
      for (const field of ATTRIBUTE_FIELDS) {
        attrs.append(
          labeled(
            field,
            numberField(`attr-${field}`, comp.attributes?.[field], (v) =>
              store.setAttribute(comp.id, field, v),
            ),
          ),
        );
      }
      inspector.append(attrs);
    } else {
      inspector.append(
        labeled(
          "initial amount (kg)",
          numberField("comp-amount", comp.initial_amount, (v) =>
            store.setInitialAmount(comp.id, v),
          ),
        ),
      );
    }

    inspector.append(button("comp-remove", "Remove", () => store.removeComponent(comp.id)));
  }

  function renderInteractionForm(inter: {
    id: string;
    kind: InteractionKind;
    source_id: string;
    target_id: string;
    params?: Partial<Record<ParamField, number>>;
  }): void {
    inspector.append(el("h3", "", `${inter.source_id} → ${inter.target_id}`));
    const kindSelect = selectField(INTERACTION_KINDS, inter.kind, (v) =>
      store.setInteractionKind(inter.id, v),
    );
    kindSelect.className = "inter-kind";
    inspector.append(labeled("kind", kindSelect));

    for (const field of PARAM_FIELDS) {
      inspector.append(
        labeled(
          field,
          numberField(`param-${field}`, inter.params?.[field], (v) =>
            store.setParam(inter.id, field, Number.isNaN(v) ? null : v),
          ),
        ),
      );
    }
    inspector.append(button("inter-remove", "Remove", () => store.removeInteraction(inter.id)));
  }

  function renderIssues(state: ReturnType<EditorStore["snapshot"]>): void {
    issues.replaceChildren();
    for (const issue of state.report.issues) {
      const item = el("li", issue.severity, `${issue.code}: ${issue.message}`);
      if (issue.subject_id) item.dataset.subject = issue.subject_id;
      issues.append(item);
    }
  }

  function renderRun(state: ReturnType<EditorStore["snapshot"]>): void {
    if (!state.run) return;
    renderChart(chartHolder, state.run.result, (month, values) => {
      tooltip.textContent =
        `month ${month}: ` +
        Object.entries(values)
          .map(([name, value]) => `${name}=${value}`)
          .join(", ");
    });
  }

  store.subscribe(render);
  render();
}

// -- tiny DOM helpers --------------------------------------------------------

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text != null) node.textContent = text;
  return node;
}

function input(className: string, placeholder: string): HTMLInputElement {
  const node = document.createElement("input");
  node.className = className;
  node.placeholder = placeholder;
  return node;
}

function button(className: string, label: string, onClick: () => void): HTMLButtonElement {
  const node = document.createElement("button");
  node.type = "button";
  node.className = className;
  node.textContent = label;
  node.addEventListener("click", onClick);
  return node;
}

function textField(className: string, value: string, onChange: (value: string) => void): HTMLInputElement {
  const node = document.createElement("input");
  node.className = className;
  node.value = value;
  node.addEventListener("change", () => onChange(node.value));
  return node;
}

function numberField(
  className: string,
  value: number | undefined,
  onChange: (value: number) => void,
): HTMLInputElement {
  const node = document.createElement("input");
  node.className = className;
  node.value = value != null ? String(value) : "";
  node.addEventListener("change", () => onChange(Number(node.value)));
  return node;
}

function option(text: string, value: string, selected: boolean): HTMLOptionElement {
  const node = document.createElement("option");
  node.textContent = text;
  node.value = value;
  node.selected = selected;
  return node;
}

function selectField<T extends string>(
  options: readonly T[],
  value: T,
  onChange: (value: T) => void,
): HTMLSelectElement {
  const node = document.createElement("select");
  for (const entry of options) node.append(option(entry, entry, entry === value));
  node.addEventListener("change", () => onChange(node.value as T));
  return node;
}

function labeled(text: string, control: HTMLElement): HTMLElement {
  const wrap = el("label", "field");
  wrap.append(el("span", "field-name", text), control);
  return wrap;
}
