/**
 * DOM controller: renders the store into a root element and translates
 * user events back into store calls. Rendering is a full re-render of the
 * root on every store change; the screens are small enough that diffing
 * would be overhead without benefit.
 */

import { ActionKind } from "./api.js";
import { renderApp } from "./render.js";
import { ReviewStore } from "./state.js";

export type DownloadFn = (filename: string, bytes: Uint8Array) => void;

function browserDownload(filename: string, bytes: Uint8Array): void {
  const blob = new Blob([bytes as BlobPart], { type: "application/octet-stream" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  document.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}

export class Controller {
  readonly store: ReviewStore;
  readonly root: HTMLElement;
  private readonly download: DownloadFn;

  constructor(store: ReviewStore, root: HTMLElement, download: DownloadFn = browserDownload) {
    this.store = store;
    this.root = root;
    this.download = download;
    store.subscribe(() => this.render());
    root.addEventListener("click", (ev) => this.onClick(ev));
    root.addEventListener("change", (ev) => this.onChange(ev));
    this.render();
  }

  render(): void {
    this.root.innerHTML = renderApp(this.store);
  }

  private onClick(ev: Event): void {
    const target = (ev.target as HTMLElement).closest("[data-act]");
    if (!(target instanceof HTMLElement)) return;
    const act = target.dataset.act;
    const index = Number(target.dataset.index);
    switch (act) {
      case "apply":
        void this.store.applyDecision(index);
        break;
      case "finalize":
        void this.store.finalize();
        break;
      case "retry": {
        const banner = this.store.banner;
        if (banner?.kind === "network") void banner.retry();
        break;
      }
      case "reload":
        window.location.reload();
        break;
      case "download-bcm":
        this.download(this.store.mergedFilename(), this.store.mergedBytes());
        break;
      case "download-report":
        this.download("report.tsv", this.store.reportBytes());
        break;
      default:
        break; // jump links are plain anchors, the browser handles them
    }
  }

  private onChange(ev: Event): void {
    const target = ev.target;
    if (!(target instanceof HTMLInputElement) && !(target instanceof HTMLSelectElement)) return;
    const act = target.dataset.act;
    const index = Number(target.dataset.index);
    if (act === "kind" && target instanceof HTMLInputElement) {
      this.store.selectKind(index, target.value as ActionKind);
    } else if (act === "field" && target instanceof HTMLInputElement) {
      const field = target.dataset.field as "label" | "labelA" | "labelB";
      this.store.setField(index, field, target.value);
    } else if (act === "keep" && target instanceof HTMLSelectElement) {
      this.store.setKeep(index, target.value as "source" | "target");
    }
  }
}
