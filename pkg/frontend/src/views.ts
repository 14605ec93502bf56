/**
 * View editor: name the class, pick scope parents, write a constructor.
 *
 * The constructor is validated with a query dry-run before saving; server
 * errors (cycles, duplicate names, parse failures) are shown verbatim.
 * A successful save refreshes the extended lattice so the new class
 * appears as a node.
 */

import type { Api } from "./api.js";
import { ApiError } from "./api.js";
import { renderLattice } from "./diagram.js";
import type { ViewRecord } from "./types.js";

export class ViewEditor {
  private api: Api;
  private context: string;
  private root: HTMLElement;
  private diagram: HTMLElement;

  constructor(api: Api, context: string, root: HTMLElement, diagram: HTMLElement) {
    this.api = api;
    this.context = context;
    this.root = root;
    this.diagram = diagram;
  }

  async mount(): Promise<void> {
    const { views } = await this.api.views(this.context);
    this.root.replaceChildren();
    const form = document.createElement("form");
    form.className = "view-editor";
    form.innerHTML = `
      <label>name <input name="name" required /></label>
      <label>scope
        <select name="scope" multiple size="4">
          ${views
            .map((v) => `<option value="${v.name}">${v.name}</option>`)
            .join("")}
        </select>
      </label>
      <label>constructor <input name="constructor" value="*" /></label>
      <label>note <input name="note" /></label>
      <button type="submit">create view</button>
      <span class="form-error" role="alert"></span>
      <ul class="view-list">
        ${views
          .map(
            (v) =>
              `<li><b>${v.name}</b> &le; ${v.scope.join(", ") || "(root)"} :: ` +
              `<code>${v.constructor}</code> (${v.containment.length} objects)</li>`,
          )
          .join("")}
      </ul>
    `;
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.save(form);
    });
    this.root.append(form);
    await this.refreshLattice();
  }

  private errorBox(form: HTMLFormElement): HTMLElement {
    return form.querySelector(".form-error")!;
  }

  async save(form: HTMLFormElement): Promise<void> {
    const data = new FormData(form);
    const constructor = String(data.get("constructor") || "*");
    const errors = this.errorBox(form);
    errors.textContent = "";

    try {
      await this.api.query(this.context, constructor); // dry-run the syntax
    } catch (err) {
      errors.textContent = this.describe(err);
      return;
    }
    const scopeSelect = form.querySelector<HTMLSelectElement>("select[name=scope]")!;
    const scope = [...scopeSelect.selectedOptions].map((o) => o.value);
    try {
      await this.api.addView(this.context, {
        name: String(data.get("name")),
        scope,
        constructor,
        note: String(data.get("note") || ""),
      });
    } catch (err) {
      errors.textContent = this.describe(err);
      return;
    }
    await this.mount(); // re-list views and redraw the extended lattice
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) {
      return err.detail ? `${err.message}: ${err.detail}` : err.message;
    }
    return String(err);
  }

  async refreshLattice(): Promise<void> {
    const payload = await this.api.lattice(this.context, true);
    renderLattice(this.diagram, payload);
  }

  static containmentSummary(views: ViewRecord[]): Map<string, number> {
    return new Map(views.map((v) => [v.name, v.containment.length]));
  }
}
