/**
 * Typed client for the bcfuse session service.
 *
 * Every payload shape here mirrors the server's JSON exactly; the UI never
 * derives merge results on its own, it only renders what these calls return.
 */

export type ActionKind =
  | "renameSame"
  | "renameDifferent"
  | "mergeConcepts"
  | "deleteOne"
  | "keepBoth";

export interface ActionDoc {
  kind: ActionKind;
  label?: string;
  labelA?: string;
  labelB?: string;
  keep?: "source" | "target";
}

export interface ConceptRef {
  component: string;
  concept: string;
}

export interface ConflictDoc {
  index: number;
  relation: "synonym" | "homonym" | "equivalent";
  source: ConceptRef;
  target: ConceptRef;
  confidence: number;
  anchor: string | null;
  contextKey: string;
  defaultAction: ActionDoc;
  recommendedAction: ActionDoc;
  alternatives: ActionKind[];
  decidedAction: ActionDoc | null;
  pending: boolean;
}

export interface SessionDoc {
  session: string;
  phase: "reviewing" | "finalized";
  conflicts: ConflictDoc[];
}

export interface AttributeDoc {
  name: string;
  type: string;
}

export interface ConceptDoc {
  name: string;
  attributes: AttributeDoc[];
}

export interface RelationDoc {
  source: string;
  target: string;
  kind: string;
  label: string | null;
  cardinality: string | null;
}

export interface ServiceDoc {
  name: string;
  params: AttributeDoc[];
  returnType: string | null;
}

export interface StructureDoc {
  id: string;
  concepts: ConceptDoc[];
  relations: RelationDoc[];
  services: ServiceDoc[];
}

export interface ModelDoc {
  name: string;
  kind: string;
  reuse: string;
  structures: StructureDoc[];
}

export interface UnresolvedDoc {
  index: number;
  relation: string;
  source: ConceptRef;
  target: ConceptRef;
}

export interface PreviewDoc {
  model: ModelDoc;
  unresolved: UnresolvedDoc[];
}

export interface ArtifactDoc {
  bcm: string;
  report: string;
}

export interface NamedText {
  filename: string;
  text: string;
}

export interface SessionRequest {
  components: NamedText[];
  domain?: NamedText;
  lexicon?: NamedText;
}

/** Error envelope the service returns for every non-2xx response. */
export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: unknown;
}

/** Server rejected the request; carries the decoded envelope. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(envelope.message);
    this.name = "ApiError";
    this.status = status;
    this.code = envelope.code;
    this.detail = envelope.detail;
  }
}

/** Request never reached the server (or the response was unreadable). */
export class NetworkError extends Error {
  constructor(cause: unknown) {
    super(cause instanceof Error ? cause.message : String(cause));
    this.name = "NetworkError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * The legal action set for a conflict, in service order: the catalog default
 * first, then the alternatives. The picker must render exactly this list.
 */
export function legalKinds(conflict: ConflictDoc): ActionKind[] {
  return [conflict.defaultAction.kind, ...conflict.alternatives];
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    // Trailing slash would double up when paths are appended.
    this.base = base.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  async health(): Promise<{ status: string; kernelBackend: string }> {
    return this.request("GET", "/health");
  }

  async createSession(req: SessionRequest): Promise<SessionDoc> {
    return this.request("POST", "/sessions", req);
  }

  async getConflicts(sid: string): Promise<SessionDoc> {
    return this.request("GET", `/sessions/${sid}/conflicts`);
  }

  async decide(sid: string, index: number, action: ActionDoc): Promise<ConflictDoc> {
    return this.request("POST", `/sessions/${sid}/conflicts/${index}/decision`, { action });
  }

  async preview(sid: string): Promise<PreviewDoc> {
    return this.request("GET", `/sessions/${sid}/preview`);
  }

  async finalize(sid: string): Promise<ArtifactDoc> {
    return this.request("POST", `/sessions/${sid}/finalize`);
  }

  /** Raw alignment export bytes, exactly as the server serialized them. */
  async alignment(sid: string): Promise<string> {
    let resp: Response;
    try {
      resp = await (0, this.fetchFn)(`${this.base}/sessions/${sid}/alignment`);
    } catch (err) {
      throw new NetworkError(err);
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, await decodeEnvelope(resp));
    }
    return resp.text();
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let resp: Response;
    try {
      resp = await (0, this.fetchFn)(`${this.base}${path}`, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new NetworkError(err);
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, await decodeEnvelope(resp));
    }
    return (await resp.json()) as T;
  }
}

async function decodeEnvelope(resp: Response): Promise<ErrorEnvelope> {
  let doc: unknown = null;
  try {
    doc = await resp.json();
  } catch {
    // Non-JSON error body; fall through to the generic envelope.
  }
  if (doc && typeof doc === "object" && "code" in doc && "message" in doc) {
    const d = doc as Record<string, unknown>;
    return {
      code: String(d.code),
      message: String(d.message),
      detail: "detail" in d ? d.detail : null,
    };
  }
  return { code: "HTTP_" + resp.status, message: `request failed (${resp.status})`, detail: doc };
}
