// Wire types for the model service. The JSON shapes here mirror the
// service's document format exactly; the editor state is the document
// itself plus purely visual layout data that never leaves the browser.

export const SCHEMA_VERSION = 1;

export const COMPONENT_KINDS = ["biotic", "abiotic"] as const;
export type ComponentKind = (typeof COMPONENT_KINDS)[number];

export const CATEGORIES = [
  "predator",
  "prey",
  "competitor",
  "pathogen",
  "social_factor",
  "environmental_factor",
  "uncategorized",
] as const;
export type Category = (typeof CATEGORIES)[number];

export const INTERACTION_KINDS = [
  "destroys",
  "produces",
  "consumes",
  "becomes_on_death",
  "affects",
  "infects",
  "parasite_of",
] as const;
export type InteractionKind = (typeof INTERACTION_KINDS)[number];

export const AFFECT_LIKE_KINDS: ReadonlySet<InteractionKind> = new Set([
  "affects",
  "infects",
  "parasite_of",
]);

// Nine species attributes in canonical order. Units are fixed by name:
// months, kg, kg, kg/s, kg/s, fraction, months, months, count.
export const ATTRIBUTE_FIELDS = [
  "lifespan",
  "body_mass",
  "carbon_biomass",
  "respiratory_rate",
  "photosynthesis_rate",
  "assimilation_efficiency",
  "reproductive_maturity",
  "reproductive_interval",
  "offspring_count",
] as const;
export type AttributeField = (typeof ATTRIBUTE_FIELDS)[number];

export type AttributeMap = Record<AttributeField, number>;

export const ATTRIBUTE_DEFAULTS: AttributeMap = {
  lifespan: 24,
  body_mass: 1.0,
  carbon_biomass: 0.2,
  respiratory_rate: 1e-9,
  photosynthesis_rate: 0.0,
  assimilation_efficiency: 0.25,
  reproductive_maturity: 6,
  reproductive_interval: 6,
  offspring_count: 2,
};

export const PARAM_FIELDS = [
  "growth_modifier",
  "produce_probability",
  "produce_amount",
  "encounter_half_saturation",
  "destroy_fraction",
] as const;
export type ParamField = (typeof PARAM_FIELDS)[number];

export type InteractionParams = Partial<Record<ParamField, number>>;

export interface ComponentDoc {
  id: string;
  name: string;
  kind: ComponentKind;
  category?: Category;
  taxon_id?: string;
  attributes?: AttributeMap;
  initial_population?: number;
  initial_amount?: number;
  unlimited?: boolean;
  habitat_id?: string;
}

export interface InteractionDoc {
  id: string;
  kind: InteractionKind;
  source_id: string;
  target_id: string;
  params?: InteractionParams;
}

export interface HabitatDoc {
  id: string;
  name: string;
}

export interface ModelDoc {
  version: number;
  id?: string;
  name: string;
  notes?: string;
  components: ComponentDoc[];
  interactions: InteractionDoc[];
  habitats: HabitatDoc[];
  baseline: string[];
}

export type Severity = "error" | "warning";

export interface Issue {
  severity: Severity;
  code: string;
  message: string;
  subject_id: string | null;
}

export interface ValidationReport {
  valid: boolean;
  issues: Issue[];
}

export interface ModelRecord {
  id: string;
  revision: number;
  created_at: string;
  updated_at: string;
  model: ModelDoc;
}

export interface ModelSummary {
  id: string;
  name: string | null;
  revision: number;
  created_at: string;
  updated_at: string;
}

export interface SeriesDoc {
  name: string;
  component_id: string;
  biotic: boolean;
  values: number[];
}

export interface RunResultDoc {
  seed: number;
  duration: number;
  program_hash: string;
  settings: Record<string, unknown>;
  series: SeriesDoc[];
  final_state_summary: Record<string, unknown>;
}

export interface RunRecord {
  run_id: string;
  model_id: string;
  revision: number;
  seed: number;
  months: number;
  settings: Record<string, unknown>;
  status: string;
  created_at: string;
  result: RunResultDoc;
}

export interface SpeciesHit {
  taxon_id: string;
  scientific_name: string;
  common_names: string[];
  attribute_record_count: number;
}

export interface AttributeBundleDoc {
  taxon_id: string;
  attributes: Partial<AttributeMap>;
  provenance: Partial<Record<AttributeField, "store" | "default">>;
}

export interface Scores {
  complexity: number;
  creativity: number;
}
