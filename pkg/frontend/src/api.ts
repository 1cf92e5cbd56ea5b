// Thin typed client for the model service. Every non-2xx response carries
// a {code, message, details} body; ApiError surfaces it unchanged.

import type {
  AttributeBundleDoc,
  ModelDoc,
  ModelRecord,
  ModelSummary,
  RunRecord,
  Scores,
  SpeciesHit,
  ValidationReport,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: Record<string, unknown>;

  constructor(status: number, code: string, message: string, details: Record<string, unknown>) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.details = details;
  }
}

async function raiseFor(response: Response): Promise<never> {
  let code = "unknown-error";
  let message = `${response.status} ${response.statusText}`;
  let details: Record<string, unknown> = {};
  try {
    const body = (await response.json()) as Record<string, unknown>;
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if (body.details && typeof body.details === "object") {
      details = body.details as Record<string, unknown>;
    }
  } catch {
    // non-JSON error body; keep the HTTP status text
  }
  throw new ApiError(response.status, code, message, details);
}

export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) await raiseFor(response);
    return response;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.request(path);
    return (await response.json()) as T;
  }

  private async sendJson<T>(method: string, path: string, body: unknown): Promise<T> {
    const response = await this.request(path, {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return (await response.json()) as T;
  }

  listModels(): Promise<ModelSummary[]> {
    return this.getJson("/models");
  }

  getModel(id: string): Promise<ModelRecord> {
    return this.getJson(`/models/${encodeURIComponent(id)}`);
  }

  createModel(doc: ModelDoc): Promise<ModelRecord> {
    return this.sendJson("POST", "/models", doc);
  }

  updateModel(id: string, revision: number, doc: ModelDoc): Promise<ModelRecord> {
    return this.sendJson("PUT", `/models/${encodeURIComponent(id)}`, { revision, model: doc });
  }

  async deleteModel(id: string): Promise<void> {
    await this.request(`/models/${encodeURIComponent(id)}`, { method: "DELETE" });
  }

  validateDocument(doc: ModelDoc): Promise<ValidationReport> {
    return this.sendJson("POST", "/validate", doc);
  }

  scores(id: string): Promise<Scores> {
    return this.getJson(`/models/${encodeURIComponent(id)}/scores`);
  }

  simulate(id: string, seed: number, months: number): Promise<RunRecord> {
    return this.sendJson("POST", `/models/${encodeURIComponent(id)}/simulate`, { seed, months });
  }

  getRun(runId: string): Promise<RunRecord> {
    return this.getJson(`/runs/${encodeURIComponent(runId)}`);
  }

  async runSeriesCsv(runId: string): Promise<string> {
    const response = await this.request(`/runs/${encodeURIComponent(runId)}/series.csv`);
    return response.text();
  }

  searchSpecies(query: string): Promise<SpeciesHit[]> {
    return this.getJson(`/species?q=${encodeURIComponent(query)}`);
  }

  speciesAttributes(taxonId: string): Promise<AttributeBundleDoc> {
    return this.getJson(`/species/${encodeURIComponent(taxonId)}/attributes`);
  }
}
