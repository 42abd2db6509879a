/**
 * HTML renderers for the review screens. All functions are pure string
 * builders so they can be asserted on directly; event wiring happens in the
 * controller via data-act attributes.
 */

import { ActionDoc, ActionKind, ConflictDoc, ModelDoc, NamedText, legalKinds } from "./api.js";
import { Banner, CardState, ReviewStore, historyBadge } from "./state.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function describeAction(action: ActionDoc): string {
  switch (action.kind) {
    case "renameSame":
      return `renameSame(${action.label ?? ""})`;
    case "renameDifferent":
      return `renameDifferent(${action.labelA ?? ""},${action.labelB ?? ""})`;
    case "deleteOne":
      return `deleteOne(keep=${action.keep ?? "source"})`;
    default:
      return action.kind;
  }
}

function kindFields(kind: ActionKind, index: number, card: CardState, conflict: ConflictDoc): string {
  switch (kind) {
    case "renameSame":
      return `<label class="field">new name
        <input type="text" data-act="field" data-index="${index}" data-field="label"
               value="${escapeHtml(card.label)}"></label>`;
    case "renameDifferent":
      return `<label class="field">${escapeHtml(conflict.source.component)} side
        <input type="text" data-act="field" data-index="${index}" data-field="labelA"
               value="${escapeHtml(card.labelA)}"></label>
      <label class="field">${escapeHtml(conflict.target.component)} side
        <input type="text" data-act="field" data-index="${index}" data-field="labelB"
               value="${escapeHtml(card.labelB)}"></label>`;
    case "deleteOne":
      return `<label class="field">keep
        <select data-act="keep" data-index="${index}">
          <option value="source"${card.keep === "source" ? " selected" : ""}>
            ${escapeHtml(conflict.source.concept)} (${escapeHtml(conflict.source.component)})</option>
          <option value="target"${card.keep === "target" ? " selected" : ""}>
            ${escapeHtml(conflict.target.concept)} (${escapeHtml(conflict.target.component)})</option>
        </select></label>`;
    default:
      return "";
  }
}

export function renderConflictCard(conflict: ConflictDoc, card: CardState): string {
  const index = conflict.index;
  const kinds = legalKinds(conflict);
  const fromHistory = historyBadge(conflict);
  const badge = fromHistory
    ? `<span class="badge badge-history">recommended from history</span>`
    : "";
  const anchor = conflict.anchor
    ? `<span class="anchor">anchor: ${escapeHtml(conflict.anchor)}</span>`
    : `<span class="anchor anchor-none">unanchored</span>`;

  const picker = kinds
    .map((kind) => {
      const checked = kind === card.selectedKind ? " checked" : "";
      const isDefault = kind === conflict.defaultAction.kind;
      const isRecommended = kind === conflict.recommendedAction.kind;
      const marks = [
        isRecommended ? `<em class="mark mark-rec">recommended</em>` : "",
        isDefault ? `<em class="mark mark-def">default</em>` : "",
      ].join("");
      return `<label class="choice${isRecommended ? " choice-rec" : ""}">
        <input type="radio" name="action-${index}" value="${kind}"
               data-act="kind" data-index="${index}"${checked}>
        ${kind}${marks}
      </label>`;
    })
    .join("\n");

  const body = conflict.pending
    ? `<div class="picker">${picker}</div>
       <div class="fields">${kindFields(card.selectedKind, index, card, conflict)}</div>
       <button data-act="apply" data-index="${index}"${card.saving ? " disabled" : ""}>
         ${card.saving ? "saving" : "apply decision"}</button>`
    : `<p class="decided">decided: <code>${escapeHtml(
        describeAction(conflict.decidedAction ?? conflict.defaultAction),
      )}</code></p>`;

  const error = card.error ? `<p class="card-error">${escapeHtml(card.error)}</p>` : "";

  return `<article class="card${conflict.pending ? "" : " card-done"}" id="conflict-${index}">
    <header>
      <strong>${escapeHtml(conflict.source.concept)} &#8596; ${escapeHtml(conflict.target.concept)}</strong>
      <span class="chip chip-${conflict.relation}">${conflict.relation}</span>
      ${badge}
    </header>
    <p class="meta">
      ${escapeHtml(conflict.source.component)} vs ${escapeHtml(conflict.target.component)}
      &middot; confidence ${conflict.confidence.toFixed(2)}
      &middot; ${anchor}
    </p>
    ${body}
    ${error}
  </article>`;
}

export function renderQueue(store: ReviewStore): string {
  if (store.conflicts.length === 0) {
    return `<div class="empty-state">
      <p>No conflicts detected. The components merge cleanly.</p>
    </div>`;
  }
  return store.conflicts.map((c) => renderConflictCard(c, store.card(c.index))).join("\n");
}

export function renderModel(model: ModelDoc): string {
  const parts: string[] = [
    `<p class="model-name"><strong>${escapeHtml(model.name)}</strong>
      <span class="chip">${escapeHtml(model.kind)}</span></p>`,
  ];
  for (const structure of model.structures) {
    const concepts = structure.concepts
      .map((c) => {
        const attrs = c.attributes
          .map((a) => `<li>${escapeHtml(a.name)} : ${escapeHtml(a.type)}</li>`)
          .join("");
        return `<li class="node" data-concept="${escapeHtml(c.name)}">
          <span class="node-name">${escapeHtml(c.name)}</span>
          ${attrs ? `<ul class="attrs">${attrs}</ul>` : ""}
        </li>`;
      })
      .join("\n");
    const relations = structure.relations
      .map((r) => {
        const label = r.label ? ` ${escapeHtml(r.label)}` : "";
        return `<li class="edge">${escapeHtml(r.source)} &rarr; ${escapeHtml(r.target)}
          <span class="edge-kind">${escapeHtml(r.kind)}${label}</span></li>`;
      })
      .join("\n");
    parts.push(`<ul class="nodes">${concepts}</ul>`);
    if (relations) parts.push(`<ul class="edges">${relations}</ul>`);
  }
  return parts.join("\n");
}

export function renderPreview(store: ReviewStore): string {
  const inputs = store.inputs
    .map(
      (doc: NamedText) => `<div class="input-doc">
        <h4>${escapeHtml(doc.filename)}</h4>
        <pre>${escapeHtml(doc.text)}</pre>
      </div>`,
    )
    .join("\n");

  let merged: string;
  if (store.previewDoc) {
    const unresolved = store.previewDoc.unresolved
      .map(
        (u) => `<li class="unresolved" data-index="${u.index}">
          <a href="#conflict-${u.index}" data-act="jump">
            ${escapeHtml(u.source.concept)} / ${escapeHtml(u.target.concept)}
            (${escapeHtml(u.relation)}, undecided)</a></li>`,
      )
      .join("\n");
    merged = `${renderModel(store.previewDoc.model)}
      ${unresolved ? `<ul class="unresolved-list">${unresolved}</ul>` : ""}`;
  } else {
    merged = `<p class="placeholder">preview not loaded</p>`;
  }

  return `<div class="pane pane-inputs">
      <h3>inputs</h3>
      ${inputs}
    </div>
    <div class="pane pane-merged${store.previewBusy ? " busy" : ""}">
      <h3>merged preview${store.previewBusy ? " (refreshing)" : ""}</h3>
      ${merged}
    </div>`;
}

export function renderBanner(banner: Banner): string {
  if (!banner) return "";
  if (banner.kind === "network") {
    return `<div class="banner banner-network">
      <span>${escapeHtml(banner.message)}</span>
      <button data-act="retry">retry</button>
    </div>`;
  }
  return `<div class="banner banner-stale">
    <span>${escapeHtml(banner.message)}</span>
    <button data-act="reload">reload session</button>
  </div>`;
}

export function renderFinalize(store: ReviewStore): string {
  if (store.artifact) {
    return `<div class="finalize finalized">
      <p>Session finalized.</p>
      <button data-act="download-bcm">download ${escapeHtml(store.mergedFilename())}</button>
      <button data-act="download-report">download report.tsv</button>
    </div>`;
  }
  const pendingLinks = store.pendingJump
    .map((i) => `<a href="#conflict-${i}" data-act="jump">conflict ${i}</a>`)
    .join(", ");
  const error = store.finalizeError
    ? `<p class="finalize-error">${escapeHtml(store.finalizeError)}${
        pendingLinks ? `: ${pendingLinks}` : ""
      }</p>`
    : "";
  return `<div class="finalize">
    <button data-act="finalize">finalize</button>
    <span class="pending-note">${store.pendingCount()} undecided</span>
    ${error}
  </div>`;
}

export function renderApp(store: ReviewStore): string {
  if (store.phase === "idle" || store.phase === "loading") {
    const error = store.loadError
      ? `<p class="load-error">${escapeHtml(store.loadError)}</p>`
      : "";
    return `<div class="loader">
      ${store.phase === "loading" ? "<p>loading session</p>" : ""}
      ${error}
    </div>`;
  }
  return `${renderBanner(store.banner)}
    <section class="queue">
      <h2>conflicts</h2>
      ${renderQueue(store)}
    </section>
    <section class="preview">
      ${renderPreview(store)}
    </section>
    <section class="actions">
      ${renderFinalize(store)}
    </section>`;
}
