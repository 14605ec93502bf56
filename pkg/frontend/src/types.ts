/** Payload shapes served by the workspace API (version v0). */

export interface ConceptPayload {
  extent: string[];
  intent: string[];
  object_labels: string[];
  attribute_labels: string[];
  layer: number;
}

export interface LatticePayload {
  version?: string;
  concepts: ConceptPayload[];
  covers: [number, number][]; // [lower, upper]
  top?: number;
  bottom?: number;
}

export interface NeighborhoodPayload extends LatticePayload {
  seed: Record<string, string>;
  filters: { threshold: number; top_k: number | null; ball: [string, number] | null };
  step?: number;
}

export interface SessionPayload {
  session: string;
  context: string;
  objects: string[];
  attributes: string[];
}

export interface ViewRecord {
  name: string;
  scope: string[];
  constructor: string;
  note: string;
  containment: string[];
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  detail?: string;
}
