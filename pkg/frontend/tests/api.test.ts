import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, NetworkError, legalKinds } from "../src/api.js";
import { FakeService, failingFetch, synonymConflict } from "./helpers.js";

function sessionReply() {
  return {
    json: { session: "s1", phase: "reviewing", conflicts: [synonymConflict()] },
    status: 201,
  };
}

describe("ApiClient routing", () => {
  it("hits the documented paths with the right methods", async () => {
    const svc = new FakeService();
    svc.on("GET", /^\/health$/, () => ({ json: { status: "ok", kernelBackend: "cython" } }));
    svc.on("POST", /^\/sessions$/, sessionReply);
    svc.on("GET", /^\/sessions\/s1\/conflicts$/, sessionReply);
    svc.on("POST", /^\/sessions\/s1\/conflicts\/0\/decision$/, () => ({
      json: synonymConflict({ pending: false, decidedAction: { kind: "keepBoth" } }),
    }));
    svc.on("GET", /^\/sessions\/s1\/preview$/, () => ({
      json: { model: { name: "M", kind: "entity", reuse: "reusable", structures: [] }, unresolved: [] },
    }));
    svc.on("POST", /^\/sessions\/s1\/finalize$/, () => ({
      json: { bcm: "component M\n", report: "" },
    }));

    const api = new ApiClient("http://x", svc.fetch);
    expect((await api.health()).kernelBackend).toBe("cython");
    const doc = await api.createSession({
      components: [
        { filename: "a.bcm", text: "component A" },
        { filename: "b.bcm", text: "component B" },
      ],
    });
    expect(doc.session).toBe("s1");
    expect((await api.getConflicts("s1")).conflicts).toHaveLength(1);
    const decided = await api.decide("s1", 0, { kind: "keepBoth" });
    expect(decided.pending).toBe(false);
    expect((await api.preview("s1")).unresolved).toEqual([]);
    expect((await api.finalize("s1")).bcm).toBe("component M\n");

    const paths = svc.calls.map((c) => `${c.method} ${c.path}`);
    expect(paths).toEqual([
      "GET /health",
      "POST /sessions",
      "GET /sessions/s1/conflicts",
      "POST /sessions/s1/conflicts/0/decision",
      "GET /sessions/s1/preview",
      "POST /sessions/s1/finalize",
    ]);
  });

  it("wraps the decision in an action envelope", async () => {
    const svc = new FakeService();
    svc.on("POST", /decision$/, (call) => {
      expect(call.body).toEqual({ action: { kind: "renameSame", label: "Paper" } });
      return { json: synonymConflict({ pending: false }) };
    });
    const api = new ApiClient("", svc.fetch);
    await api.decide("s1", 0, { kind: "renameSame", label: "Paper" });
    expect(svc.count("POST", /decision$/)).toBe(1);
  });

  it("strips a trailing slash from the base url", async () => {
    const svc = new FakeService();
    svc.on("GET", /^\/health$/, () => ({ json: { status: "ok", kernelBackend: "python" } }));
    const api = new ApiClient("http://localhost:9999/", svc.fetch);
    await api.health();
    expect(svc.calls[0]?.path).toBe("/health");
  });

  it("returns the alignment export as raw text", async () => {
    const raw = '{"correspondences": []}';
    const api = new ApiClient("", async () => new Response(raw, { status: 200 }));
    expect(await api.alignment("s1")).toBe(raw);
  });
});

describe("ApiClient error handling", () => {
  it("decodes the service error envelope", async () => {
    const svc = new FakeService();
    svc.on("POST", /decision$/, () => ({
      status: 422,
      json: {
        code: "ILLEGAL_ACTION",
        message: "renameDifferent is not in the rule catalog for synonym conflicts",
        detail: { legal: ["renameSame", "mergeConcepts", "deleteOne", "keepBoth"] },
      },
    }));
    const api = new ApiClient("", svc.fetch);
    const err = await api.decide("s1", 0, { kind: "renameDifferent" }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(422);
    expect(err.code).toBe("ILLEGAL_ACTION");
    expect(err.detail.legal).toContain("keepBoth");
  });

  it("falls back to a generic envelope for non-JSON error bodies", async () => {
    const api = new ApiClient(
      "",
      async () => new Response("<html>gateway timeout</html>", { status: 504 }),
    );
    const err = await api.health().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("HTTP_504");
  });

  it("wraps transport failures in NetworkError", async () => {
    const api = new ApiClient("", failingFetch("ECONNREFUSED"));
    const err = await api.health().catch((e) => e);
    expect(err).toBeInstanceOf(NetworkError);
    expect(err.message).toContain("ECONNREFUSED");
  });
});

describe("legalKinds", () => {
  it("is the catalog default followed by the alternatives, in order", () => {
    expect(legalKinds(synonymConflict())).toEqual([
      "renameSame",
      "mergeConcepts",
      "deleteOne",
      "keepBoth",
    ]);
  });
});
