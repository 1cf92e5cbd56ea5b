// Client-side model validation. This mirrors the service's validator
// rule for rule: same codes, same severities, same subjects. The editor
// runs it on every gesture so problems surface before a round trip, and a
// test suite checks that client and server verdicts agree on generated
// documents.

import {
  AFFECT_LIKE_KINDS,
  ATTRIBUTE_FIELDS,
  type AttributeMap,
  type ComponentDoc,
  type InteractionDoc,
  type InteractionKind,
  type Issue,
  type ModelDoc,
  type ParamField,
  type Severity,
  type ValidationReport,
} from "./types";

const PARAM_SPECS: Array<{
  field: ParamField;
  kinds: ReadonlySet<InteractionKind>;
  required: boolean;
}> = [
  { field: "growth_modifier", kinds: AFFECT_LIKE_KINDS, required: true },
  { field: "produce_probability", kinds: new Set(["produces"]), required: true },
  { field: "produce_amount", kinds: new Set(["produces"]), required: true },
  { field: "encounter_half_saturation", kinds: new Set(["consumes", "destroys"]), required: false },
  { field: "destroy_fraction", kinds: new Set(["destroys"]), required: false },
];

export function attributeIssues(attrs: AttributeMap): Array<[string, string]> {
  const issues: Array<[string, string]> = [];
  const bad = (name: string, msg: string) => issues.push([name, msg]);

  for (const name of ATTRIBUTE_FIELDS) {
    const value = attrs[name];
    if (typeof value !== "number" || !Number.isFinite(value)) {
      bad(name, `${name} must be a finite number`);
      return issues;
    }
  }

  if (attrs.lifespan <= 0) bad("lifespan", "lifespan must be > 0 months");
  if (attrs.body_mass <= 0) bad("body_mass", "body_mass must be > 0 kg");
  if (attrs.carbon_biomass <= 0) {
    bad("carbon_biomass", "carbon_biomass must be > 0 kg");
  } else if (attrs.carbon_biomass > attrs.body_mass && attrs.body_mass > 0) {
    bad("carbon_biomass", "carbon_biomass cannot exceed body_mass");
  }
  if (attrs.respiratory_rate < 0) bad("respiratory_rate", "respiratory_rate must be >= 0 kg/s");
  if (attrs.photosynthesis_rate < 0) {
    bad("photosynthesis_rate", "photosynthesis_rate must be >= 0 kg/s");
  }
  if (!(attrs.assimilation_efficiency >= 0 && attrs.assimilation_efficiency <= 1)) {
    bad("assimilation_efficiency", "assimilation_efficiency must be within [0.0, 1.0]");
  }
  if (attrs.reproductive_maturity < 0) {
    bad("reproductive_maturity", "reproductive_maturity must be >= 0 months");
  } else if (attrs.lifespan > 0 && attrs.reproductive_maturity >= attrs.lifespan) {
    bad("reproductive_maturity", "reproductive_maturity must be < lifespan");
  }
  if (attrs.reproductive_interval <= 0) {
    bad("reproductive_interval", "reproductive_interval must be > 0 months");
  }
  if (attrs.offspring_count < 0) bad("offspring_count", "offspring_count must be >= 0");
  return issues;
}

export function validateModel(doc: ModelDoc): ValidationReport {
  const issues: Issue[] = [];
  const add = (severity: Severity, code: string, message: string, subject: string | null) =>
    issues.push({ severity, code, message, subject_id: subject });
  const err = (code: string, message: string, subject: string | null = null) =>
    add("error", code, message, subject);
  const warn = (code: string, message: string, subject: string | null = null) =>
    add("warning", code, message, subject);

  const seen = new Set<string>();
  for (const comp of doc.components) {
    if (seen.has(comp.id)) err("duplicate-id", `duplicate component id '${comp.id}'`, comp.id);
    seen.add(comp.id);
  }
  const componentIds = new Set(doc.components.map((c) => c.id));

  const habitatIds = new Set<string>();
  for (const hab of doc.habitats) {
    if (habitatIds.has(hab.id)) err("duplicate-id", `duplicate habitat id '${hab.id}'`, hab.id);
    habitatIds.add(hab.id);
  }

  const interactionIds = new Set<string>();
  for (const inter of doc.interactions) {
    if (interactionIds.has(inter.id)) {
      err("duplicate-id", `duplicate interaction id '${inter.id}'`, inter.id);
    }
    interactionIds.add(inter.id);
  }

  for (const comp of doc.components) checkComponent(comp, habitatIds, err, warn);
  for (const inter of doc.interactions) checkInteraction(inter, componentIds, err);

  // the service decodes baseline ids into a set, so duplicates collapse
  for (const baselineId of [...new Set(doc.baseline)].sort()) {
    if (!componentIds.has(baselineId)) {
      err("dangling-baseline", `baseline id '${baselineId}' is not a component`, baselineId);
    }
  }

  checkFoodSources(doc, warn);
  checkHabitatReach(doc, warn);

  return { valid: !issues.some((i) => i.severity === "error"), issues };
}

type Report = (code: string, message: string, subject?: string | null) => void;

function checkComponent(
  comp: ComponentDoc,
  habitatIds: Set<string>,
  err: Report,
  warn: Report,
): void {
  if (comp.habitat_id != null && !habitatIds.has(comp.habitat_id)) {
    err(
      "dangling-habitat",
      `component '${comp.id}' names unknown habitat '${comp.habitat_id}'`,
      comp.id,
    );
  }

  if (comp.kind === "biotic") {
    if (comp.attributes == null) {
      err("missing-attributes", `biotic component '${comp.id}' has no species attributes`, comp.id);
    } else {
      for (const [, message] of attributeIssues(comp.attributes)) {
        err("attr-range", `'${comp.id}': ${message}`, comp.id);
      }
    }
    if (comp.initial_population == null || comp.initial_population < 0) {
      err("init-range", `biotic component '${comp.id}' needs initial_population >= 0`, comp.id);
    }
    if (comp.initial_amount != null) {
      err("kind-mismatch", `biotic component '${comp.id}' must not carry initial_amount`, comp.id);
    }
  } else {
    if (comp.attributes != null) {
      err(
        "kind-mismatch",
        `abiotic component '${comp.id}' must not carry species attributes`,
        comp.id,
      );
    }
    if (comp.initial_population != null) {
      err(
        "kind-mismatch",
        `abiotic component '${comp.id}' must not carry initial_population`,
        comp.id,
      );
    }
    if (comp.initial_amount == null || comp.initial_amount < 0) {
      err("init-range", `abiotic component '${comp.id}' needs initial_amount >= 0 kg`, comp.id);
    }
  }

  if ((comp.category ?? "uncategorized") === "uncategorized") {
    warn("uncategorized-component", `component '${comp.id}' has no category`, comp.id);
  }
}

function checkInteraction(inter: InteractionDoc, componentIds: Set<string>, err: Report): void {
  for (const endpoint of [inter.source_id, inter.target_id]) {
    if (!componentIds.has(endpoint)) {
      err(
        "dangling-endpoint",
        `interaction '${inter.id}' references unknown component '${endpoint}'`,
        inter.id,
      );
    }
  }

  if ((inter.kind === "consumes" || inter.kind === "destroys") && inter.source_id === inter.target_id) {
    err(
      "self-interaction",
      `${inter.kind} interaction '${inter.id}' cannot target its own source`,
      inter.id,
    );
  }

  const params = inter.params ?? {};
  for (const { field, kinds, required } of PARAM_SPECS) {
    const value = params[field];
    if (value != null && !kinds.has(inter.kind)) {
      err(
        "param-mismatch",
        `interaction '${inter.id}': ${field} does not apply to ${inter.kind}`,
        inter.id,
      );
    }
    if (value == null && required && kinds.has(inter.kind)) {
      err("param-mismatch", `interaction '${inter.id}': ${inter.kind} requires ${field}`, inter.id);
    }
  }

  const g = params.growth_modifier;
  if (g != null && AFFECT_LIKE_KINDS.has(inter.kind)) {
    if (!(g >= -1 && g <= 1)) {
      err("param-mismatch", `interaction '${inter.id}': growth_modifier must be in [-1, 1]`, inter.id);
    } else if (inter.kind !== "affects" && g >= 0) {
      // infects / parasite_of run as affects with a harmful modifier
      err(
        "param-mismatch",
        `interaction '${inter.id}': ${inter.kind} requires a negative growth_modifier`,
        inter.id,
      );
    }
  }
  const p = params.produce_probability;
  if (p != null && !(p >= 0 && p <= 1)) {
    err("param-mismatch", `interaction '${inter.id}': produce_probability must be in [0, 1]`, inter.id);
  }
  const a = params.produce_amount;
  if (a != null && !(a > 0)) {
    err("param-mismatch", `interaction '${inter.id}': produce_amount must be > 0 kg`, inter.id);
  }
  const h = params.encounter_half_saturation;
  if (h != null && !(h > 0)) {
    err(
      "param-mismatch",
      `interaction '${inter.id}': encounter_half_saturation must be > 0`,
      inter.id,
    );
  }
  const f = params.destroy_fraction;
  if (f != null && !(f > 0 && f <= 1)) {
    err("param-mismatch", `interaction '${inter.id}': destroy_fraction must be in (0, 1]`, inter.id);
  }
}

function checkFoodSources(doc: ModelDoc, warn: Report): void {
  const eats = new Set(
    doc.interactions.filter((i) => i.kind === "consumes").map((i) => i.source_id),
  );
  for (const comp of doc.components) {
    if (comp.kind !== "biotic" || comp.unlimited === true || comp.attributes == null) continue;
    if (!eats.has(comp.id) && comp.attributes.photosynthesis_rate === 0) {
      warn(
        "no-food-source",
        `biotic component '${comp.id}' consumes nothing and does not photosynthesize; it will starve`,
        comp.id,
      );
    }
  }
}

function checkHabitatReach(doc: ModelDoc, warn: Report): void {
  const habitatOf = new Map(doc.components.map((c) => [c.id, c.habitat_id ?? null]));
  for (const inter of doc.interactions) {
    const src = habitatOf.get(inter.source_id) ?? null;
    const dst = habitatOf.get(inter.target_id) ?? null;
    if (src != null && dst != null && src !== dst) {
      warn(
        "cross-habitat",
        `interaction '${inter.id}' spans habitats '${src}' and '${dst}' and will never fire`,
        inter.id,
      );
    }
  }
}
