/**
 * Client-side session state for the review loop.
 *
 * The store owns everything the screens render: the conflict queue, the
 * per-card picker state, the server-computed preview, banners and the
 * finalize artifact. Decisions are applied optimistically and then confirmed
 * by the server's response; whenever the server disagrees (already decided,
 * already finalized, session gone) the server's state wins and the queue is
 * reloaded. No merge logic lives here: the preview and the final artifact
 * are always fetched from the service.
 */

import {
  ActionDoc,
  ActionKind,
  ApiClient,
  ApiError,
  ArtifactDoc,
  ConflictDoc,
  NamedText,
  NetworkError,
  PreviewDoc,
  SessionRequest,
  legalKinds,
} from "./api.js";

export interface CardState {
  selectedKind: ActionKind;
  label: string;
  labelA: string;
  labelB: string;
  keep: "source" | "target";
  saving: boolean;
  error: string | null;
}

export type Banner =
  | { kind: "network"; message: string; retry: () => Promise<void> }
  | { kind: "stale"; message: string }
  | null;

export type Phase = "idle" | "loading" | "reviewing" | "finalized";

/** Error codes that mean our view of the session is out of date. */
const STALE_CODES = new Set(["ALREADY_DECIDED", "ALREADY_FINALIZED", "CONFLICT_NOT_FOUND"]);

export function historyBadge(conflict: ConflictDoc): boolean {
  return conflict.recommendedAction.kind !== conflict.defaultAction.kind;
}

/**
 * Initial picker state: the recommended action is pre-selected, its fields
 * prefill the inputs. Fields the recommendation does not carry fall back to
 * the catalog default, then to names derived from the conflicting pair.
 */
export function initialCardState(conflict: ConflictDoc): CardState {
  const rec = conflict.recommendedAction;
  const def = conflict.defaultAction;
  const src = conflict.source;
  const tgt = conflict.target;
  return {
    selectedKind: rec.kind,
    label: rec.label ?? def.label ?? src.concept,
    labelA: rec.labelA ?? def.labelA ?? `${src.concept}_${src.component}`,
    labelB: rec.labelB ?? def.labelB ?? `${tgt.concept}_${tgt.component}`,
    keep: rec.keep ?? def.keep ?? "source",
    saving: false,
    error: null,
  };
}

/** The action the current picker state would submit for this conflict. */
export function buildAction(conflict: ConflictDoc, card: CardState): ActionDoc {
  switch (card.selectedKind) {
    case "renameSame":
      return { kind: "renameSame", label: card.label };
    case "renameDifferent":
      return { kind: "renameDifferent", labelA: card.labelA, labelB: card.labelB };
    case "deleteOne":
      return { kind: "deleteOne", keep: card.keep };
    // mergeConcepts and keepBoth take no fields; the server concretizes them.
    default:
      return { kind: card.selectedKind };
  }
}

export class ReviewStore {
  readonly api: ApiClient;
  phase: Phase = "idle";
  session: string | null = null;
  conflicts: ConflictDoc[] = [];
  cards = new Map<number, CardState>();
  inputs: NamedText[] = [];
  previewDoc: PreviewDoc | null = null;
  previewBusy = false;
  artifact: ArtifactDoc | null = null;
  /** Conflict indexes the server reported as blocking finalize. */
  pendingJump: number[] = [];
  banner: Banner = null;
  loadError: string | null = null;
  finalizeError: string | null = null;

  private finalizing: Promise<ArtifactDoc> | null = null;
  private listeners = new Set<() => void>();

  constructor(api: ApiClient) {
    this.api = api;
  }

  subscribe(fn: () => void): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  card(index: number): CardState {
    const state = this.cards.get(index);
    if (!state) throw new Error(`no card state for conflict ${index}`);
    return state;
  }

  conflict(index: number): ConflictDoc {
    const found = this.conflicts.find((c) => c.index === index);
    if (!found) throw new Error(`no conflict ${index}`);
    return found;
  }

  pendingCount(): number {
    return this.conflicts.filter((c) => c.pending).length;
  }

  async load(req: SessionRequest): Promise<void> {
    this.phase = "loading";
    this.loadError = null;
    this.banner = null;
    this.artifact = null;
    this.finalizing = null;
    this.pendingJump = [];
    this.finalizeError = null;
    this.previewDoc = null;
    this.cards.clear();
    this.emit();
    try {
      const doc = await this.api.createSession(req);
      this.session = doc.session;
      this.phase = doc.phase;
      this.inputs = req.components;
      this.setConflicts(doc.conflicts);
    } catch (err) {
      this.phase = "idle";
      this.loadError = describeError(err);
      this.emit();
      return;
    }
    this.emit();
    await this.refreshPreview();
  }

  /** Server conflict order is authoritative; the queue renders it as-is. */
  private setConflicts(docs: ConflictDoc[]): void {
    this.conflicts = docs;
    for (const doc of docs) {
      // Keep existing picker state across reloads so edits are not lost.
      if (!this.cards.has(doc.index)) {
        this.cards.set(doc.index, initialCardState(doc));
      }
    }
    for (const index of [...this.cards.keys()]) {
      if (!docs.some((d) => d.index === index)) this.cards.delete(index);
    }
  }

  selectKind(index: number, kind: ActionKind): void {
    const conflict = this.conflict(index);
    if (!legalKinds(conflict).includes(kind)) {
      throw new Error(`${kind} is not offered for conflict ${index}`);
    }
    const card = this.card(index);
    card.selectedKind = kind;
    card.error = null;
    this.emit();
  }

  setField(index: number, field: "label" | "labelA" | "labelB", value: string): void {
    this.card(index)[field] = value;
    this.emit();
  }

  setKeep(index: number, keep: "source" | "target"): void {
    this.card(index).keep = keep;
    this.emit();
  }

  async applyDecision(index: number): Promise<void> {
    if (!this.session) return;
    const sid = this.session;
    const conflict = this.conflict(index);
    const card = this.card(index);
    if (!conflict.pending || card.saving) return;
    const action = buildAction(conflict, card);

    // Optimistic: show the card as decided right away, confirm below.
    const slot = this.conflicts.indexOf(conflict);
    this.conflicts[slot] = { ...conflict, pending: false, decidedAction: action };
    card.saving = true;
    card.error = null;
    this.emit();

    try {
      const confirmed = await this.api.decide(sid, index, action);
      this.conflicts[slot] = confirmed;
      card.saving = false;
      this.emit();
      await this.refreshPreview();
    } catch (err) {
      card.saving = false;
      if (err instanceof ApiError && STALE_CODES.has(err.code)) {
        // Someone got there first; take the server's word for it.
        card.error = err.message;
        this.emit();
        await this.reloadConflicts();
        return;
      }
      // Roll the optimistic update back; the picker keeps its state.
      this.conflicts[slot] = conflict;
      if (err instanceof NetworkError) {
        this.banner = {
          kind: "network",
          message: `decision not saved: ${err.message}`,
          retry: () => this.applyDecision(index),
        };
      } else {
        card.error = describeError(err);
      }
      this.emit();
    }
  }

  async reloadConflicts(): Promise<void> {
    if (!this.session) return;
    try {
      const doc = await this.api.getConflicts(this.session);
      this.phase = doc.phase;
      this.setConflicts(doc.conflicts);
      this.banner = null;
      this.emit();
      await this.refreshPreview();
    } catch (err) {
      this.applyTransportFailure(err, () => this.reloadConflicts());
    }
  }

  async refreshPreview(): Promise<void> {
    if (!this.session) return;
    this.previewBusy = true;
    this.emit();
    try {
      this.previewDoc = await this.api.preview(this.session);
      this.previewBusy = false;
      if (this.banner?.kind === "network") this.banner = null;
      this.emit();
    } catch (err) {
      this.previewBusy = false;
      this.applyTransportFailure(err, () => this.refreshPreview());
    }
  }

  /**
   * Finalize once. Repeat calls (including double-clicks racing the first
   * request) settle on the same artifact.
   */
  async finalize(): Promise<ArtifactDoc | null> {
    if (!this.session) return null;
    if (this.artifact) return this.artifact;
    if (!this.finalizing) {
      this.finalizing = this.api.finalize(this.session);
      this.emit();
    }
    try {
      const artifact = await this.finalizing;
      this.artifact = artifact;
      this.phase = "finalized";
      this.pendingJump = [];
      this.finalizeError = null;
      this.emit();
      return artifact;
    } catch (err) {
      this.finalizing = null;
      if (err instanceof ApiError && err.code === "PENDING_CONFLICTS") {
        const detail = err.detail as { pending?: number[] } | null;
        this.pendingJump = detail?.pending ?? [];
        this.finalizeError = err.message;
        this.emit();
        return null;
      }
      if (err instanceof ApiError && err.code === "INTEGRATION_FAILED") {
        this.finalizeError = describeError(err);
        this.emit();
        return null;
      }
      this.applyTransportFailure(err, async () => {
        await this.finalize();
      });
      return null;
    }
  }

  /** Bytes for the merged-model download; identical to the finalize body. */
  mergedBytes(): Uint8Array {
    if (!this.artifact) throw new Error("not finalized");
    return new TextEncoder().encode(this.artifact.bcm);
  }

  reportBytes(): Uint8Array {
    if (!this.artifact) throw new Error("not finalized");
    return new TextEncoder().encode(this.artifact.report);
  }

  mergedFilename(): string {
    const name = this.previewDoc?.model.name ?? "merged";
    return `${name.replace(/[^A-Za-z0-9_+-]+/g, "_")}.bcm`;
  }

  private applyTransportFailure(err: unknown, retry: () => Promise<void>): void {
    if (err instanceof ApiError && err.code === "SESSION_NOT_FOUND") {
      this.banner = {
        kind: "stale",
        message: "this session no longer exists on the server; reload to start over",
      };
    } else if (err instanceof NetworkError) {
      this.banner = { kind: "network", message: err.message, retry };
    } else {
      this.banner = { kind: "network", message: describeError(err), retry };
    }
    this.emit();
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    const findings = extractFindings(err.detail);
    return findings ? `${err.message}: ${findings}` : `${err.code}: ${err.message}`;
  }
  return err instanceof Error ? err.message : String(err);
}

function extractFindings(detail: unknown): string | null {
  if (!detail || typeof detail !== "object") return null;
  // Validation errors carry findings as the bare detail array; integration
  // failures nest them under a findings key.
  const findings = Array.isArray(detail)
    ? detail
    : (detail as { findings?: unknown }).findings;
  if (!Array.isArray(findings) || findings.length === 0) return null;
  return findings
    .map((f) => {
      const doc = f as { code?: string; message?: string };
      return doc.code ? `${doc.code} ${doc.message ?? ""}`.trim() : String(f);
    })
    .join("; ");
}
