/**
 * The interactive browse loop: seed picker, pruning knobs, and the
 * compare-with-previous union view.
 *
 * Each knob change issues one neighborhood request tagged with a sequence
 * number; responses arriving out of order are discarded, so the drawn
 * diagram always reflects the latest input state.
 */

import type { Api } from "./api.js";
import { conceptKey, renderLattice } from "./diagram.js";
import type { NeighborhoodPayload, SessionPayload } from "./types.js";

export interface BrowseElements {
  seedInput: HTMLInputElement;
  seedKind: HTMLSelectElement;
  threshold: HTMLInputElement;
  topK: HTMLInputElement;
  metric: HTMLSelectElement;
  radius: HTMLInputElement;
  compare: HTMLInputElement;
  status: HTMLElement;
  diagram: HTMLElement;
}

export class BrowseControls {
  private api: Api;
  private session: SessionPayload;
  private el: BrowseElements;
  private seq = 0;
  private appliedSeq = -1;
  private lastPayload: NeighborhoodPayload | null = null;
  private previousPayload: NeighborhoodPayload | null = null;

  constructor(api: Api, session: SessionPayload, elements: BrowseElements) {
    this.api = api;
    this.session = session;
    this.el = elements;
    for (const input of [
      elements.seedInput,
      elements.seedKind,
      elements.threshold,
      elements.topK,
      elements.metric,
      elements.radius,
      elements.compare,
    ]) {
      input.addEventListener("change", () => void this.refresh());
    }
  }

  seedFromName(name: string): Record<string, string> | null {
    if (this.session.objects.includes(name)) return { object: name };
    if (this.session.attributes.includes(name)) return { attribute: name };
    return null;
  }

  /** Programmatic seed selection (diagram clicks land here). */
  choose(kind: "object" | "attribute", name: string): Promise<void> {
    this.el.seedKind.value = kind;
    this.el.seedInput.value = name;
    return this.refresh();
  }

  currentFilters() {
    const threshold = Number(this.el.threshold.value || "1");
    const topKRaw = this.el.topK.value.trim();
    const radiusRaw = this.el.radius.value.trim();
    return {
      threshold,
      top_k: topKRaw === "" ? null : Number(topKRaw),
      ball:
        radiusRaw === ""
          ? null
          : ([this.el.metric.value, Number(radiusRaw)] as [string, number]),
    };
  }

  async refresh(): Promise<void> {
    const name = this.el.seedInput.value.trim();
    if (!name) return;
    const seed: Record<string, string> =
      this.el.seedKind.value === "attribute" ? { attribute: name } : { object: name };
    const ticket = ++this.seq;
    try {
      const payload = await this.api.neighborhood(
        this.session.session,
        seed,
        this.currentFilters(),
      );
      if (ticket <= this.appliedSeq) {
        return; // a newer response already rendered
      }
      this.appliedSeq = ticket;
      this.previousPayload = this.lastPayload;
      this.lastPayload = payload;
      await this.render();
    } catch (err) {
      if (ticket > this.appliedSeq) {
        this.appliedSeq = ticket;
        this.el.status.textContent = `error: ${(err as Error).message}`;
        this.el.status.classList.add("error");
      }
    }
  }

  private async render(): Promise<void> {
    const current = this.lastPayload;
    if (current === null) return;
    this.el.status.classList.remove("error");

    if (this.el.compare.checked && this.previousPayload !== null) {
      const prev = this.previousPayload;
      const union = await this.api.union(
        this.session.session,
        prev.step ?? 0,
        current.step ?? 0,
      );
      const prevKeys = new Set(prev.concepts.map(conceptKey));
      const currentKeys = new Set(current.concepts.map(conceptKey));
      const shared = new Set(
        [...currentKeys].filter((k) => prevKeys.has(k)),
      );
      renderLattice(this.el.diagram, union, { highlight: shared });
      const moved =
        [...prevKeys].filter((k) => !currentKeys.has(k)).length +
        [...currentKeys].filter((k) => !prevKeys.has(k)).length;
      this.el.status.textContent =
        `union: ${union.concepts.length} concepts; ` +
        `${shared.size} classes in common; distance moved ${moved}`;
      return;
    }

    renderLattice(this.el.diagram, current, {
      onSelect: (kind, label) => void this.choose(kind, label),
    });
    this.el.status.textContent =
      `${current.concepts.length} concepts, ${current.covers.length} cover edges`;
  }
}

/** Build the browse panel's DOM inside `root`; returns the wired controls. */
export function mountBrowsePanel(
  api: Api,
  session: SessionPayload,
  root: HTMLElement,
): BrowseControls {
  root.replaceChildren();
  const bar = document.createElement("div");
  bar.className = "browse-bar";
  bar.innerHTML = `
    <label>seed
      <select class="seed-kind">
        <option value="object">object</option>
        <option value="attribute">attribute</option>
      </select>
      <input class="seed-name" list="seed-options" placeholder="object or attribute" />
      <datalist id="seed-options"></datalist>
    </label>
    <label>threshold <input class="threshold" type="range" min="1" max="8" value="1" />
      <output class="threshold-value">1</output></label>
    <label>top attributes <input class="top-k" type="number" min="0" placeholder="all" /></label>
    <label>metric
      <select class="metric"><option value="jaccard">jaccard</option></select>
      radius <input class="radius" type="number" min="0" max="1" step="0.05" placeholder="off" />
    </label>
    <label><input class="compare" type="checkbox" /> compare with previous</label>
    <span class="status" role="status"></span>
  `;
  const diagram = document.createElement("div");
  diagram.className = "diagram";
  root.append(bar, diagram);

  const datalist = bar.querySelector("datalist")!;
  for (const name of [...session.objects, ...session.attributes]) {
    const opt = document.createElement("option");
    opt.value = name;
    datalist.append(opt);
  }
  const threshold = bar.querySelector<HTMLInputElement>(".threshold")!;
  const output = bar.querySelector<HTMLOutputElement>(".threshold-value")!;
  threshold.addEventListener("input", () => (output.value = threshold.value));

  const controls = new BrowseControls(api, session, {
    seedInput: bar.querySelector<HTMLInputElement>(".seed-name")!,
    seedKind: bar.querySelector<HTMLSelectElement>(".seed-kind")!,
    threshold,
    topK: bar.querySelector<HTMLInputElement>(".top-k")!,
    metric: bar.querySelector<HTMLSelectElement>(".metric")!,
    radius: bar.querySelector<HTMLInputElement>(".radius")!,
    compare: bar.querySelector<HTMLInputElement>(".compare")!,
    status: bar.querySelector<HTMLElement>(".status")!,
    diagram,
  });
  return controls;
}
