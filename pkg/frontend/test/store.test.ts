import { describe, expect, test } from "vitest";

import { EditorStore } from "../src/store";
import { ATTRIBUTE_DEFAULTS } from "../src/types";

function storeWithPair(): EditorStore {
  const store = new EditorStore();
  store.addComponent("biotic");
  store.addComponent("biotic");
  return store;
}

describe("editor store gestures", () => {
  test("fresh components are valid out of the box", () => {
    const store = new EditorStore();
    store.addComponent("biotic");
    store.addComponent("abiotic");
    const { doc, report } = store.snapshot();
    expect(doc.components).toHaveLength(2);
    expect(doc.components[0].id).toBe("c1");
    expect(doc.components[0].attributes).toEqual(ATTRIBUTE_DEFAULTS);
    expect(doc.components[1].kind).toBe("abiotic");
    expect(doc.components[1].initial_amount).toBe(1.0);
    expect(report.valid).toBe(true);
  });

  test("connect seeds kind-appropriate params", () => {
    const store = storeWithPair();
    store.connect("c1", "c2", "affects");
    store.connect("c1", "c2", "consumes");
    store.connect("c2", "c1", "produces");
    const [affect, consume, produce] = store.snapshot().doc.interactions;
    expect(affect.params).toEqual({ growth_modifier: 0.1 });
    expect(consume.params).toBeUndefined();
    expect(produce.params).toEqual({ produce_probability: 0.1, produce_amount: 0.1 });
    expect(store.snapshot().report.valid).toBe(true);
  });

  test("switching interaction kind replaces params wholesale", () => {
    const store = storeWithPair();
    const id = store.connect("c1", "c2", "affects");
    store.setParam(id, "growth_modifier", 0.75);
    store.setInteractionKind(id, "infects");
    expect(store.snapshot().doc.interactions[0].params).toEqual({ growth_modifier: -0.1 });
    store.setInteractionKind(id, "becomes_on_death");
    expect(store.snapshot().doc.interactions[0].params).toBeUndefined();
  });

  test("changing a component kind clears fields from the other kind", () => {
    const store = new EditorStore();
    store.addComponent("biotic");
    store.setInitialPopulation("c1", 40);
    store.setComponentKind("c1", "abiotic");
    const comp = store.snapshot().doc.components[0];
    expect(comp.attributes).toBeUndefined();
    expect(comp.initial_population).toBeUndefined();
    expect(comp.initial_amount).toBe(1.0);
  });

  test("renaming an id rewrites every reference", () => {
    const store = storeWithPair();
    store.connect("c1", "c2", "consumes");
    store.toggleBaseline("c1");
    store.select({ type: "component", id: "c1" });
    store.changeComponentId("c1", "sheep");
    const { doc, layout, selection } = store.snapshot();
    expect(doc.components[0].id).toBe("sheep");
    expect(doc.interactions[0].source_id).toBe("sheep");
    expect(doc.baseline).toEqual(["sheep"]);
    expect(layout.sheep).toBeDefined();
    expect(layout.c1).toBeUndefined();
    expect(selection).toEqual({ type: "component", id: "sheep" });
    expect(() => store.changeComponentId("c2", "sheep")).toThrow(/taken/);
  });

  test("removing a component cascades to interactions and baseline", () => {
    const store = storeWithPair();
    store.connect("c1", "c2", "consumes");
    store.toggleBaseline("c2");
    store.removeComponent("c2");
    const { doc, layout } = store.snapshot();
    expect(doc.components.map((c) => c.id)).toEqual(["c1"]);
    expect(doc.interactions).toEqual([]);
    expect(doc.baseline).toEqual([]);
    expect(layout.c2).toBeUndefined();
  });

  test("baseline toggling keeps a sorted unique list", () => {
    const store = storeWithPair();
    store.toggleBaseline("c2");
    store.toggleBaseline("c1");
    expect(store.snapshot().doc.baseline).toEqual(["c1", "c2"]);
    store.toggleBaseline("c2");
    expect(store.snapshot().doc.baseline).toEqual(["c1"]);
  });

  test("applying a species bundle stamps taxon and traits", () => {
    const store = new EditorStore();
    store.addComponent("biotic");
    store.applySpeciesBundle("c1", {
      taxon_id: "oa-1",
      attributes: { body_mass: 80, carbon_biomass: 14 },
      provenance: { body_mass: "store", carbon_biomass: "store" },
    });
    const comp = store.snapshot().doc.components[0];
    expect(comp.taxon_id).toBe("oa-1");
    expect(comp.attributes?.body_mass).toBe(80);
    expect(comp.attributes?.carbon_biomass).toBe(14);
    // fields the bundle leaves out keep their current values
    expect(comp.attributes?.lifespan).toBe(ATTRIBUTE_DEFAULTS.lifespan);
  });

  test("serialize returns an isolated deep copy", () => {
    const store = storeWithPair();
    const copy = store.serialize();
    copy.components[0].name = "mutated";
    expect(store.snapshot().doc.components[0].name).not.toBe("mutated");
  });

  test("the live report tracks edits", () => {
    const store = new EditorStore();
    store.addComponent("biotic");
    store.setInitialPopulation("c1", -5);
    expect(store.snapshot().report.valid).toBe(false);
    expect(store.snapshot().report.issues.map((i) => i.code)).toContain("init-range");
    store.setInitialPopulation("c1", 5);
    expect(store.snapshot().report.valid).toBe(true);
    expect(store.snapshot().dirty).toBe(true);
  });
});
