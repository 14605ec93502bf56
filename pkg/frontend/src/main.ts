/** Single-page app bootstrap: context picker, lattice / browse / views tabs. */

import { api } from "./api.js";
import { mountBrowsePanel } from "./controls.js";
import { renderLattice } from "./diagram.js";
import { ViewEditor } from "./views.js";

type Tab = "lattice" | "browse" | "views";

async function showLattice(context: string, extended: boolean, panel: HTMLElement) {
  const payload = await api.lattice(context, extended);
  renderLattice(panel, payload);
}

async function activate(context: string, tab: Tab, panel: HTMLElement) {
  panel.replaceChildren();
  if (tab === "lattice") {
    const toggle = document.createElement("label");
    toggle.innerHTML = `<input type="checkbox" class="extended" /> include views as nodes`;
    const diagram = document.createElement("div");
    diagram.className = "diagram";
    panel.append(toggle, diagram);
    const box = toggle.querySelector<HTMLInputElement>("input")!;
    box.addEventListener("change", () => void showLattice(context, box.checked, diagram));
    await showLattice(context, false, diagram);
  } else if (tab === "browse") {
    const session = await api.createSession(context);
    mountBrowsePanel(api, session, panel);
  } else {
    const editor = document.createElement("div");
    const diagram = document.createElement("div");
    diagram.className = "diagram";
    panel.append(editor, diagram);
    await new ViewEditor(api, context, editor, diagram).mount();
  }
}

export async function boot(root: HTMLElement): Promise<void> {
  const { contexts } = await api.contexts();
  root.innerHTML = `
    <header>
      <h1>nebfca</h1>
      <label>context <select class="context-pick"></select></label>
      <nav>
        <button data-tab="lattice" class="active">lattice</button>
        <button data-tab="browse">browse</button>
        <button data-tab="views">views</button>
      </nav>
    </header>
    <main class="panel"></main>
  `;
  const pick = root.querySelector<HTMLSelectElement>(".context-pick")!;
  for (const name of contexts) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    pick.append(opt);
  }
  const panel = root.querySelector<HTMLElement>(".panel")!;
  let tab: Tab = "lattice";

  const rerender = () => void activate(pick.value, tab, panel);
  pick.addEventListener("change", rerender);
  for (const button of root.querySelectorAll<HTMLButtonElement>("nav button")) {
    button.addEventListener("click", () => {
      root.querySelectorAll("nav button").forEach((b) => b.classList.remove("active"));
      button.classList.add("active");
      tab = button.dataset.tab as Tab;
      rerender();
    });
  }
  if (contexts.length > 0) {
    await activate(pick.value, tab, panel);
  } else {
    panel.textContent = "workspace has no contexts; ingest something first";
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
