// Editor state and gestures. The store owns the model document plus
// canvas layout, re-validates after every mutation, and talks to the
// service for save / run / species lookup. UI layers subscribe and render;
// tests drive the same gesture methods the UI handlers call.

import { ApiError, type ApiClient } from "./api";
import { validateModel } from "./validate";
import {
  ATTRIBUTE_DEFAULTS,
  type AttributeBundleDoc,
  type AttributeField,
  type Category,
  type ComponentDoc,
  type ComponentKind,
  type InteractionDoc,
  type InteractionKind,
  type InteractionParams,
  type ModelDoc,
  type ParamField,
  type RunRecord,
  SCHEMA_VERSION,
  type ValidationReport,
} from "./types";

export interface Point {
  x: number;
  y: number;
}

export type Selection =
  | { type: "component"; id: string }
  | { type: "interaction"; id: string }
  | null;

export interface EditorState {
  doc: ModelDoc;
  layout: Record<string, Point>;
  selection: Selection;
  report: ValidationReport;
  serverId: string | null;
  revision: number | null;
  run: RunRecord | null;
  dirty: boolean;
  status: string;
}

type Listener = (state: EditorState) => void;

function emptyDoc(name: string): ModelDoc {
  return {
    version: SCHEMA_VERSION,
    name,
    components: [],
    interactions: [],
    habitats: [],
    baseline: [],
  };
}

const KIND_DEFAULT_PARAMS: Partial<Record<InteractionKind, InteractionParams>> = {
  affects: { growth_modifier: 0.1 },
  infects: { growth_modifier: -0.1 },
  parasite_of: { growth_modifier: -0.1 },
  produces: { produce_probability: 0.1, produce_amount: 0.1 },
};

export class EditorStore {
  private state: EditorState;
  private listeners = new Set<Listener>();

  constructor(name = "untitled model") {
    this.state = {
      doc: emptyDoc(name),
      layout: {},
      selection: null,
      report: validateModel(emptyDoc(name)),
      serverId: null,
      revision: null,
      run: null,
      dirty: false,
      status: "new model",
    };
  }

  snapshot(): EditorState {
    return this.state;
  }

  get doc(): ModelDoc {
    return this.state.doc;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private commit(mutate: (doc: ModelDoc) => void, status?: string): void {
    const doc = structuredClone(this.state.doc);
    mutate(doc);
    this.state = {
      ...this.state,
      doc,
      report: validateModel(doc),
      dirty: true,
      status: status ?? this.state.status,
    };
    this.emit();
  }

  private patch(partial: Partial<EditorState>): void {
    this.state = { ...this.state, ...partial };
    this.emit();
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  // -- document-level gestures ----------------------------------------------

  newModel(name: string): void {
    const doc = emptyDoc(name);
    this.state = {
      doc,
      layout: {},
      selection: null,
      report: validateModel(doc),
      serverId: null,
      revision: null,
      run: null,
      dirty: false,
      status: "new model",
    };
    this.emit();
  }

  loadRecord(record: { id: string; revision: number; model: ModelDoc }): void {
    const doc = structuredClone(record.model);
    this.state = {
      doc,
      layout: autoLayout(doc),
      selection: null,
      report: validateModel(doc),
      serverId: record.id,
      revision: record.revision,
      run: null,
      dirty: false,
      status: `loaded '${record.id}' (rev ${record.revision})`,
    };
    this.emit();
  }

  setModelName(name: string): void {
    this.commit((doc) => {
      doc.name = name;
    });
  }

  setModelId(id: string): void {
    this.commit((doc) => {
      doc.id = id;
    });
  }

  // -- palette / canvas gestures --------------------------------------------

  addComponent(kind: ComponentKind, at?: Point): string {
    const id = this.freeId("c");
    this.commit((doc) => {
      const component: ComponentDoc =
        kind === "biotic"
          ? {
              id,
              name: id,
              kind,
              category: "uncategorized",
              unlimited: false,
              attributes: { ...ATTRIBUTE_DEFAULTS },
              initial_population: 10,
            }
          : {
              id,
              name: id,
              kind,
              category: "uncategorized",
              unlimited: false,
              initial_amount: 1.0,
            };
      doc.components.push(component);
    }, `added ${kind} component '${id}'`);
    this.state.layout[id] = at ?? this.nextSlot();
    this.patch({ selection: { type: "component", id } });
    return id;
  }

  moveComponent(id: string, to: Point): void {
    if (!(id in this.state.layout)) return;
    this.patch({ layout: { ...this.state.layout, [id]: to } });
  }

  connect(sourceId: string, targetId: string, kind: InteractionKind): string {
    const id = this.freeId("i");
    this.commit((doc) => {
      const interaction: InteractionDoc = {
        id,
        kind,
        source_id: sourceId,
        target_id: targetId,
      };
      const defaults = KIND_DEFAULT_PARAMS[kind];
      if (defaults) interaction.params = { ...defaults };
      doc.interactions.push(interaction);
    }, `connected ${sourceId} -[${kind}]-> ${targetId}`);
    this.patch({ selection: { type: "interaction", id } });
    return id;
  }

  removeComponent(id: string): void {
    this.commit((doc) => {
      doc.components = doc.components.filter((c) => c.id !== id);
      doc.interactions = doc.interactions.filter(
        (i) => i.source_id !== id && i.target_id !== id,
      );
      doc.baseline = doc.baseline.filter((b) => b !== id);
    }, `removed component '${id}'`);
    const layout = { ...this.state.layout };
    delete layout[id];
    this.patch({ layout, selection: null });
  }

  removeInteraction(id: string): void {
    this.commit((doc) => {
      doc.interactions = doc.interactions.filter((i) => i.id !== id);
    }, `removed interaction '${id}'`);
    this.patch({ selection: null });
  }

  select(selection: Selection): void {
    this.patch({ selection });
  }

  // -- inspector gestures ----------------------------------------------------

  renameComponent(id: string, name: string): void {
    this.commit((doc) => {
      const comp = mustComponent(doc, id);
      comp.name = name;
    });
  }

  changeComponentId(oldId: string, newId: string): void {
    if (oldId === newId) return;
    if (this.state.doc.components.some((c) => c.id === newId)) {
      throw new Error(`component id '${newId}' is already taken`);
    }
    this.commit((doc) => {
      const comp = mustComponent(doc, oldId);
      comp.id = newId;
      for (const inter of doc.interactions) {
        if (inter.source_id === oldId) inter.source_id = newId;
        if (inter.target_id === oldId) inter.target_id = newId;
      }
      doc.baseline = doc.baseline.map((b) => (b === oldId ? newId : b));
    }, `renamed '${oldId}' to '${newId}'`);
    const layout = { ...this.state.layout };
    if (oldId in layout) {
      layout[newId] = layout[oldId];
      delete layout[oldId];
    }
    const selection = this.state.selection;
    this.patch({
      layout,
      selection:
        selection?.type === "component" && selection.id === oldId
          ? { type: "component", id: newId }
          : selection,
    });
  }

  setCategory(id: string, category: Category): void {
    this.commit((doc) => {
      mustComponent(doc, id).category = category;
    });
  }

  setComponentKind(id: string, kind: ComponentKind): void {
    this.commit((doc) => {
      const comp = mustComponent(doc, id);
      if (comp.kind === kind) return;
      comp.kind = kind;
      if (kind === "biotic") {
        delete comp.initial_amount;
        comp.attributes = { ...ATTRIBUTE_DEFAULTS };
        comp.initial_population = 10;
      } else {
        delete comp.attributes;
        delete comp.initial_population;
        delete comp.taxon_id;
        comp.initial_amount = 1.0;
      }
    });
  }

  setUnlimited(id: string, unlimited: boolean): void {
    this.commit((doc) => {
      mustComponent(doc, id).unlimited = unlimited;
    });
  }

  setInitialPopulation(id: string, value: number): void {
    this.commit((doc) => {
      mustComponent(doc, id).initial_population = value;
    });
  }

  setInitialAmount(id: string, value: number): void {
    this.commit((doc) => {
      mustComponent(doc, id).initial_amount = value;
    });
  }

  setAttribute(id: string, field: AttributeField, value: number): void {
    this.commit((doc) => {
      const comp = mustComponent(doc, id);
      if (!comp.attributes) comp.attributes = { ...ATTRIBUTE_DEFAULTS };
      comp.attributes[field] = value;
    });
  }

  applySpeciesBundle(id: string, bundle: AttributeBundleDoc): void {
    this.commit((doc) => {
      const comp = mustComponent(doc, id);
      comp.taxon_id = bundle.taxon_id;
      const attributes = { ...ATTRIBUTE_DEFAULTS, ...comp.attributes };
      for (const [field, value] of Object.entries(bundle.attributes)) {
        if (value != null) attributes[field as AttributeField] = value;
      }
      comp.attributes = attributes;
    }, `applied traits of ${bundle.taxon_id} to '${id}'`);
  }

  toggleBaseline(id: string): void {
    this.commit((doc) => {
      doc.baseline = doc.baseline.includes(id)
        ? doc.baseline.filter((b) => b !== id)
        : [...doc.baseline, id].sort();
    });
  }

  addHabitat(name: string): string {
    const id = this.freeId("h");
    this.commit((doc) => {
      doc.habitats.push({ id, name });
    }, `added habitat '${name}'`);
    return id;
  }

  assignHabitat(componentId: string, habitatId: string | null): void {
    this.commit((doc) => {
      const comp = mustComponent(doc, componentId);
      if (habitatId == null) delete comp.habitat_id;
      else comp.habitat_id = habitatId;
    });
  }

  setInteractionKind(id: string, kind: InteractionKind): void {
    this.commit((doc) => {
      const inter = mustInteraction(doc, id);
      inter.kind = kind;
      delete inter.params;
      const defaults = KIND_DEFAULT_PARAMS[kind];
      if (defaults) inter.params = { ...defaults };
    });
  }

  setParam(id: string, field: ParamField, value: number | null): void {
    this.commit((doc) => {
      const inter = mustInteraction(doc, id);
      const params = { ...(inter.params ?? {}) };
      if (value == null) delete params[field];
      else params[field] = value;
      if (Object.keys(params).length === 0) delete inter.params;
      else inter.params = params;
    });
  }

  // -- service round trips ---------------------------------------------------

  serialize(): ModelDoc {
    return structuredClone(this.state.doc);
  }

  async save(api: ApiClient): Promise<void> {
    const doc = this.serialize();
    try {
      if (this.state.serverId != null && this.state.revision != null) {
        const record = await api.updateModel(this.state.serverId, this.state.revision, doc);
        this.patch({
          revision: record.revision,
          dirty: false,
          status: `saved '${record.id}' (rev ${record.revision})`,
        });
      } else {
        const record = await api.createModel(doc);
        this.patch({
          serverId: record.id,
          revision: record.revision,
          dirty: false,
          status: `saved '${record.id}' (rev ${record.revision})`,
        });
      }
    } catch (error) {
      if (error instanceof ApiError) {
        this.patch({ status: `save failed: ${error.code}: ${error.message}` });
      }
      throw error;
    }
  }

  async runSimulation(api: ApiClient, seed: number, months: number): Promise<RunRecord> {
    if (this.state.serverId == null) {
      throw new Error("save the model before running it");
    }
    this.patch({ status: `running seed ${seed} for ${months} months...` });
    try {
      const record = await api.simulate(this.state.serverId, seed, months);
      this.patch({ run: record, status: `run ${record.run_id.slice(0, 8)} done` });
      return record;
    } catch (error) {
      if (error instanceof ApiError) {
        this.patch({ status: `run failed: ${error.code}: ${error.message}` });
      }
      throw error;
    }
  }

  async validateRemote(api: ApiClient): Promise<ValidationReport> {
    const report = await api.validateDocument(this.serialize());
    this.patch({ report, status: report.valid ? "server: valid" : "server: invalid" });
    return report;
  }

  // -- helpers ---------------------------------------------------------------

  private freeId(prefix: string): string {
    const taken = new Set<string>([
      ...this.state.doc.components.map((c) => c.id),
      ...this.state.doc.interactions.map((i) => i.id),
      ...this.state.doc.habitats.map((h) => h.id),
    ]);
    let n = 1;
    while (taken.has(`${prefix}${n}`)) n += 1;
    return `${prefix}${n}`;
  }

  private nextSlot(): Point {
    const n = Object.keys(this.state.layout).length;
    return { x: 80 + (n % 5) * 150, y: 60 + Math.floor(n / 5) * 120 };
  }
}

function mustComponent(doc: ModelDoc, id: string): ComponentDoc {
  const comp = doc.components.find((c) => c.id === id);
  if (!comp) throw new Error(`no component '${id}'`);
  return comp;
}

function mustInteraction(doc: ModelDoc, id: string): InteractionDoc {
  const inter = doc.interactions.find((i) => i.id === id);
  if (!inter) throw new Error(`no interaction '${id}'`);
  return inter;
}

function autoLayout(doc: ModelDoc): Record<string, Point> {
  const layout: Record<string, Point> = {};
  doc.components.forEach((comp, n) => {
    layout[comp.id] = { x: 80 + (n % 5) * 150, y: 60 + Math.floor(n / 5) * 120 };
  });
  return layout;
}
