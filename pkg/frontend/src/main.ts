/**
 * Entry point: wires the load form to a fresh store and mounts the
 * controller. The API base defaults to the page origin (the service mounts
 * the built UI under /ui); override with ?api=http://host:port when the UI
 * is served elsewhere.
 */

import { ApiClient, NamedText } from "./api.js";
import { ReviewStore } from "./state.js";
import { Controller } from "./ui.js";

async function readFile(input: HTMLInputElement): Promise<NamedText | null> {
  const file = input.files?.[0];
  if (!file) return null;
  return { filename: file.name, text: await file.text() };
}

function mount(): void {
  const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
  const store = new ReviewStore(new ApiClient(apiBase));
  const root = document.querySelector<HTMLElement>("#app");
  const form = document.querySelector<HTMLFormElement>("#load-form");
  if (!root || !form) throw new Error("app shell markup missing");
  new Controller(store, root);

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void (async () => {
      const pick = (name: string) =>
        form.querySelector<HTMLInputElement>(`input[name="${name}"]`);
      const a = await readFile(pick("component-a")!);
      const b = await readFile(pick("component-b")!);
      if (!a || !b) {
        root.innerHTML = `<p class="load-error">pick two component files first</p>`;
        return;
      }
      const domain = await readFile(pick("domain")!);
      const lexicon = await readFile(pick("lexicon")!);
      await store.load({
        components: [a, b],
        domain: domain ?? undefined,
        lexicon: lexicon ?? undefined,
      });
    })();
  });
}

mount();
