/**
 * Shared test scaffolding: conflict payload builders matching the service's
 * rule catalog, and a scripted fetch stub for exercising the client without
 * a live server.
 */

import { ConflictDoc, FetchLike } from "../src/api.js";

export function synonymConflict(over: Partial<ConflictDoc> = {}): ConflictDoc {
  return {
    index: 0,
    relation: "synonym",
    source: { component: "SubmissionMgr", concept: "Article" },
    target: { component: "ReviewMgr", concept: "Paper" },
    confidence: 1.0,
    anchor: "Paper",
    contextKey: "synonym|Paper",
    defaultAction: { kind: "renameSame", label: "Paper" },
    recommendedAction: { kind: "renameSame", label: "Paper" },
    alternatives: ["mergeConcepts", "deleteOne", "keepBoth"],
    decidedAction: null,
    pending: true,
    ...over,
  };
}

export function homonymConflict(over: Partial<ConflictDoc> = {}): ConflictDoc {
  return {
    index: 1,
    relation: "homonym",
    source: { component: "Booking", concept: "Session" },
    target: { component: "Auth", concept: "Session" },
    confidence: 0.9,
    anchor: null,
    contextKey: "homonym|unanchored",
    defaultAction: {
      kind: "renameDifferent",
      labelA: "Session_Booking",
      labelB: "Session_Auth",
    },
    recommendedAction: {
      kind: "renameDifferent",
      labelA: "Session_Booking",
      labelB: "Session_Auth",
    },
    alternatives: ["keepBoth"],
    decidedAction: null,
    pending: true,
    ...over,
  };
}

export function equivalentConflict(over: Partial<ConflictDoc> = {}): ConflictDoc {
  return {
    index: 2,
    relation: "equivalent",
    source: { component: "A", concept: "Invoice" },
    target: { component: "B", concept: "Invoice" },
    confidence: 1.0,
    anchor: "Invoice",
    contextKey: "equivalent|Invoice",
    defaultAction: { kind: "mergeConcepts", label: "Invoice" },
    recommendedAction: { kind: "mergeConcepts", label: "Invoice" },
    alternatives: ["keepBoth", "deleteOne"],
    decidedAction: null,
    pending: true,
    ...over,
  };
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface ScriptedReply {
  status?: number;
  json: unknown;
}

type Handler = (call: RecordedCall) => ScriptedReply | Promise<ScriptedReply>;

/**
 * Route-pattern fetch stub. Handlers are matched in registration order;
 * a handler may return a promise to let tests control response timing.
 */
export class FakeService {
  readonly calls: RecordedCall[] = [];
  private readonly routes: Array<{ method: string; pattern: RegExp; handler: Handler }> = [];

  on(method: string, pattern: RegExp, handler: Handler): void {
    this.routes.push({ method, pattern, handler });
  }

  count(method: string, pattern: RegExp): number {
    return this.calls.filter((c) => c.method === method && pattern.test(c.path)).length;
  }

  fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    const call: RecordedCall = { method, path, body };
    this.calls.push(call);
    for (const route of this.routes) {
      if (route.method === method && route.pattern.test(path)) {
        const reply = await route.handler(call);
        return new Response(JSON.stringify(reply.json), {
          status: reply.status ?? 200,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    throw new Error(`unscripted route: ${method} ${path}`);
  };
}

/** Fetch stub that never reaches a server. */
export function failingFetch(message = "connection refused"): FetchLike {
  return async () => {
    throw new TypeError(message);
  };
}

/** Tiny seeded PRNG so randomized tests stay reproducible. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}
