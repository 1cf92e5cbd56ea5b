import { describe, expect, test } from "vitest";

import { ApiClient } from "../src/api";
import {
  ATTRIBUTE_DEFAULTS,
  SCHEMA_VERSION,
  type ModelDoc,
  type ValidationReport,
} from "../src/types";
import { attributeIssues, validateModel } from "../src/validate";
import { generateDoc } from "./genDoc";
import { serviceBaseUrl } from "./helpers";

function chainDoc(): ModelDoc {
  return {
    version: SCHEMA_VERSION,
    id: "chain",
    name: "grazing chain",
    components: [
      {
        id: "sheep",
        name: "sheep",
        kind: "biotic",
        category: "prey",
        unlimited: false,
        attributes: { ...ATTRIBUTE_DEFAULTS },
        initial_population: 20,
      },
      {
        id: "grass",
        name: "grass",
        kind: "biotic",
        category: "prey",
        unlimited: true,
        attributes: { ...ATTRIBUTE_DEFAULTS, photosynthesis_rate: 1e-9 },
        initial_population: 50_000,
      },
    ],
    interactions: [
      { id: "grazing", kind: "consumes", source_id: "sheep", target_id: "grass" },
    ],
    habitats: [],
    baseline: [],
  };
}

describe("local validator", () => {
  test("accepts a sound grazing chain with no issues", () => {
    const report = validateModel(chainDoc());
    expect(report.valid).toBe(true);
    expect(report.issues).toEqual([]);
  });

  test("flags duplicate component ids", () => {
    const doc = chainDoc();
    doc.components[1].id = "sheep";
    const report = validateModel(doc);
    expect(report.valid).toBe(false);
    expect(report.issues.map((i) => i.code)).toContain("duplicate-id");
  });

  test("flags dangling interaction endpoints", () => {
    const doc = chainDoc();
    doc.interactions[0].target_id = "ghost";
    const codes = validateModel(doc).issues.map((i) => i.code);
    expect(codes).toContain("dangling-endpoint");
  });

  test("rejects a consume self-loop but allows a self-affect", () => {
    const doc = chainDoc();
    doc.interactions.push({
      id: "auto",
      kind: "consumes",
      source_id: "sheep",
      target_id: "sheep",
    });
    expect(validateModel(doc).issues.map((i) => i.code)).toContain("self-interaction");

    doc.interactions[1] = {
      id: "auto",
      kind: "affects",
      source_id: "sheep",
      target_id: "sheep",
      params: { growth_modifier: 0.2 },
    };
    expect(validateModel(doc).valid).toBe(true);
  });

  test("requires a negative modifier for parasitic links", () => {
    const doc = chainDoc();
    doc.interactions.push({
      id: "bug",
      kind: "parasite_of",
      source_id: "grass",
      target_id: "sheep",
      params: { growth_modifier: 0.3 },
    });
    const issues = validateModel(doc).issues;
    expect(issues.some((i) => i.code === "param-mismatch" && i.subject_id === "bug")).toBe(true);
  });

  test("warns about starving components and uncategorized ones", () => {
    const doc = chainDoc();
    doc.interactions = [];
    doc.components[0].category = undefined;
    const report = validateModel(doc);
    expect(report.valid).toBe(true);
    const warnings = report.issues.filter((i) => i.severity === "warning").map((i) => i.code);
    expect(warnings).toContain("no-food-source");
    expect(warnings).toContain("uncategorized-component");
  });

  test("attribute range checks match the canonical messages", () => {
    expect(attributeIssues({ ...ATTRIBUTE_DEFAULTS })).toEqual([]);
    expect(attributeIssues({ ...ATTRIBUTE_DEFAULTS, lifespan: 0 })).toEqual([
      ["lifespan", "lifespan must be > 0 months"],
    ]);
    expect(
      attributeIssues({ ...ATTRIBUTE_DEFAULTS, carbon_biomass: 2, body_mass: 1 }),
    ).toEqual([["carbon_biomass", "carbon_biomass cannot exceed body_mass"]]);
    expect(
      attributeIssues({ ...ATTRIBUTE_DEFAULTS, reproductive_maturity: 24 }),
    ).toEqual([["reproductive_maturity", "reproductive_maturity must be < lifespan"]]);
  });
});

function verdictKey(report: ValidationReport): string[] {
  return report.issues
    .map((issue) => `${issue.severity}|${issue.code}|${issue.subject_id ?? ""}`)
    .sort();
}

describe("client/server parity", () => {
  test("100 generated editor states get identical verdicts", async () => {
    const api = new ApiClient(serviceBaseUrl());
    let invalidSeen = 0;
    for (let seed = 1; seed <= 100; seed += 1) {
      const doc = generateDoc(seed);
      const client = validateModel(doc);
      const server = await api.validateDocument(doc);
      if (!server.valid) invalidSeen += 1;
      expect(client.valid, `verdict for seed ${seed}`).toBe(server.valid);
      expect(verdictKey(client), `issues for seed ${seed}`).toEqual(verdictKey(server));
    }
    // the corpus must actually exercise both outcomes
    expect(invalidSeen).toBeGreaterThan(20);
    expect(invalidSeen).toBeLessThan(95);
  });
});
