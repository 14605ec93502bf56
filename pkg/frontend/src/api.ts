import type {
  LatticePayload,
  NeighborhoodPayload,
  SessionPayload,
  ViewRecord,
} from "./types.js";

export class ApiError extends Error {
  code: string;
  detail: string;

  constructor(code: string, message: string, detail = "") {
    super(message);
    this.code = code;
    this.detail = detail;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, init);
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(body.code ?? "error", body.message ?? resp.statusText, body.detail ?? "");
  }
  return body as T;
}

function post<T>(path: string, payload: unknown): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export const api = {
  contexts(): Promise<{ contexts: string[] }> {
    return request("/api/contexts");
  },
  context(name: string): Promise<{ objects: string[]; sorts: string[]; views: string[] }> {
    return request(`/api/contexts/${encodeURIComponent(name)}`);
  },
  lattice(name: string, extended = false): Promise<LatticePayload> {
    const suffix = extended ? "?extended=1" : "";
    return request(`/api/contexts/${encodeURIComponent(name)}/lattice${suffix}`);
  },
  query(name: string, q: string): Promise<{ objects: string[] }> {
    return post(`/api/contexts/${encodeURIComponent(name)}/query`, { q });
  },
  views(name: string): Promise<{ views: ViewRecord[] }> {
    return request(`/api/contexts/${encodeURIComponent(name)}/views`);
  },
  addView(
    name: string,
    view: { name: string; scope: string[]; constructor: string; note?: string },
  ): Promise<{ views: ViewRecord[] }> {
    return post(`/api/contexts/${encodeURIComponent(name)}/views`, view);
  },
  createSession(context: string): Promise<SessionPayload> {
    return post("/api/sessions", { context });
  },
  neighborhood(
    session: string,
    seed: Record<string, string>,
    filters: { threshold?: number; top_k?: number | null; ball?: [string, number] | null },
  ): Promise<NeighborhoodPayload> {
    return post(`/api/sessions/${encodeURIComponent(session)}/neighborhood`, { seed, filters });
  },
  union(session: string, a: number, b: number): Promise<NeighborhoodPayload> {
    return post(`/api/sessions/${encodeURIComponent(session)}/union`, { a, b });
  },
};

export type Api = typeof api;
