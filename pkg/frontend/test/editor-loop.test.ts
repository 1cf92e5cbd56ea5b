// @vitest-environment happy-dom

// Drives the full editor workflow through real DOM events against a live
// service: compose a three-species food chain from the palette, fill one
// component from the species directory, save, simulate, and check the chart
// tooltip against the run's exported CSV.

import { beforeAll, describe, expect, test } from "vitest";

import { ApiClient } from "../src/api";
import { chartGeometry, tooltipValuesAt } from "../src/chart";
import { cell, parseSeriesCsv } from "../src/csv";
import { EditorStore } from "../src/store";
import { ATTRIBUTE_FIELDS } from "../src/types";
import { createApp } from "../src/ui/app";
import { serviceBaseUrl, waitFor } from "./helpers";

let root: HTMLElement;
let store: EditorStore;
let api: ApiClient;

function q<T extends HTMLElement>(selector: string): T {
  const found = root.querySelector<T>(selector);
  if (!found) throw new Error(`no element matches '${selector}'`);
  return found;
}

function node(id: string): HTMLElement {
  return q<HTMLElement>(`.node[data-id="${id}"]`);
}

function setValue(control: HTMLInputElement | HTMLSelectElement, value: string): void {
  control.value = value;
  control.dispatchEvent(new Event("change", { bubbles: true }));
}

function mouse(target: Element, type: string, x = 0, y = 0): void {
  target.dispatchEvent(new MouseEvent(type, { bubbles: true, clientX: x, clientY: y }));
}

function selectNode(id: string): void {
  mouse(node(id), "mousedown");
  mouse(node(id), "mouseup");
}

/* selects the node, then renames / categorizes / populates it through the
   inspector form; the inspector is rebuilt after every edit, so controls
   are re-queried each time */
function setUpComponent(tempId: string, id: string, category: string, population: number): void {
  selectNode(tempId);
  setValue(q<HTMLInputElement>(".comp-id"), id);
  setValue(q<HTMLInputElement>(".comp-name"), id);
  setValue(q<HTMLSelectElement>(".comp-category"), category);
  setValue(q<HTMLInputElement>(".comp-population"), String(population));
}

beforeAll(() => {
  root = document.createElement("div");
  document.body.appendChild(root);
  store = new EditorStore();
  api = new ApiClient(serviceBaseUrl());
  createApp(root, store, api);
});

describe("editor round trip", () => {
  test("compose, look up species, save, run, and read the chart", async () => {
    // three biotic components from the palette
    const addBiotic = q<HTMLButtonElement>(".add-biotic");
    addBiotic.click();
    addBiotic.click();
    addBiotic.click();
    expect(root.querySelectorAll(".node")).toHaveLength(3);

    setUpComponent("c1", "sheep", "prey", 20);
    setUpComponent("c2", "grass", "prey", 50_000);
    setUpComponent("c3", "wolf", "predator", 6);
    expect(store.snapshot().doc.components.map((c) => c.name)).toEqual([
      "sheep",
      "grass",
      "wolf",
    ]);

    // grass never runs out
    selectNode("grass");
    const unlimited = q<HTMLInputElement>(".comp-unlimited");
    unlimited.checked = true;
    unlimited.dispatchEvent(new Event("change", { bubbles: true }));
    expect(store.snapshot().doc.components[1].unlimited).toBe(true);

    // drag the sheep node and confirm the canvas followed
    const before = store.snapshot().layout.sheep;
    mouse(node("sheep"), "mousedown", 10, 10);
    mouse(q(".canvas"), "mousemove", 50, 40);
    mouse(node("sheep"), "mouseup", 50, 40);
    const after = store.snapshot().layout.sheep;
    expect(after).toEqual({ x: before.x + 40, y: before.y + 30 });
    expect(node("sheep").style.left).toBe(`${after.x}px`);
    expect(node("sheep").style.top).toBe(`${after.y}px`);

    // arm the link tool and draw the food chain
    const connectKind = q<HTMLSelectElement>(".connect-kind");
    connectKind.value = "consumes";
    mouse(node("sheep"), "mousedown");
    mouse(node("grass"), "mouseup");
    mouse(node("wolf"), "mousedown");
    mouse(node("sheep"), "mouseup");
    connectKind.value = "";

    const links = store.snapshot().doc.interactions;
    expect(links.map((i) => [i.kind, i.source_id, i.target_id])).toEqual([
      ["consumes", "sheep", "grass"],
      ["consumes", "wolf", "sheep"],
    ]);
    expect(root.querySelectorAll(".edges line")).toHaveLength(2);

    // fill the sheep from the species directory
    selectNode("sheep");
    setValue(q<HTMLInputElement>(".species-query"), "sheep");
    q<HTMLButtonElement>(".species-go").click();
    await waitFor(() => root.querySelector(".species-apply") != null, "species results");
    const hits = root.querySelectorAll<HTMLButtonElement>(".species-apply");
    expect(hits).toHaveLength(1);
    expect(hits[0].dataset.taxonId).toBe("oa-1");
    hits[0].click();
    await waitFor(
      () => store.snapshot().doc.components[0].taxon_id === "oa-1",
      "species bundle applied",
    );

    // all nine trait inputs now show the served bundle
    const bundle = await api.speciesAttributes("oa-1");
    expect(Object.keys(bundle.attributes)).toHaveLength(9);
    for (const field of ATTRIBUTE_FIELDS) {
      const shown = Number(q<HTMLInputElement>(`.attr-${field}`).value);
      expect(shown, field).toBe(bundle.attributes[field]);
    }

    // name it and save; the service assigns the id and revision
    setValue(q<HTMLInputElement>(".model-name"), "wolf sheep grass");
    expect(store.snapshot().report.issues).toEqual([]);
    q<HTMLButtonElement>(".save").click();
    await waitFor(() => store.snapshot().revision === 1, "model save");
    expect(store.snapshot().serverId).toBe("wolf-sheep-grass");
    expect(q(".status").textContent).toContain("saved 'wolf-sheep-grass' (rev 1)");

    // run five years at the default seed
    expect(q<HTMLInputElement>(".seed").value).toBe("42");
    setValue(q<HTMLInputElement>(".months"), "60");
    q<HTMLButtonElement>(".run").click();
    await waitFor(() => store.snapshot().run != null, "simulation result", 30_000);
    const run = store.snapshot().run;
    if (!run) throw new Error("run record missing");
    expect(run.seed).toBe(42);
    expect(run.months).toBe(60);
    expect(run.status).toBe("done");

    // tooltip values agree with the service's CSV export
    const table = parseSeriesCsv(await api.runSeriesCsv(run.run_id));
    expect(table.names).toEqual(["sheep", "grass", "wolf"]);
    for (const month of [0, 12, 60]) {
      const tip = tooltipValuesAt(run.result, month);
      for (const name of table.names) {
        expect(tip[name], `${name} at month ${month}`).toBe(cell(table, month, name));
      }
    }
    expect(tooltipValuesAt(run.result, 0).sheep).toBe(20);

    // hovering the chart surfaces those values in the tooltip line
    const svg = q<HTMLElement>(".run-chart");
    const geometry = chartGeometry(run.result);
    for (const month of [0, 12, 60]) {
      const hover = new MouseEvent("mousemove", { bubbles: true });
      Object.defineProperty(hover, "offsetX", { value: geometry.series[0].points[month][0] });
      svg.dispatchEvent(hover);
      const expected =
        `month ${month}: ` +
        Object.entries(tooltipValuesAt(run.result, month))
          .map(([name, value]) => `${name}=${value}`)
          .join(", ");
      expect(q(".chart-tooltip").textContent).toBe(expected);
    }
  });
});
