import { beforeEach, describe, expect, it, vi } from "vitest";

import type { Api } from "../src/api.js";
import { ApiError } from "../src/api.js";
import { ViewEditor } from "../src/views.js";
import universeLattice from "./fixtures/universe_lattice.json";
import universeViews from "./fixtures/universe_views.json";

function editorApi(overrides: Partial<Record<keyof Api, unknown>> = {}) {
  const addView = vi.fn().mockResolvedValue(universeViews);
  const api = {
    views: vi.fn().mockResolvedValue(JSON.parse(JSON.stringify(universeViews))),
    lattice: vi.fn().mockResolvedValue(JSON.parse(JSON.stringify(universeLattice))),
    query: vi.fn().mockResolvedValue({ objects: [] }),
    addView,
    ...overrides,
  } as unknown as Api;
  return { api, addView };
}

describe("view editor", () => {
  let root: HTMLElement;
  let diagram: HTMLElement;

  beforeEach(() => {
    document.body.replaceChildren();
    root = document.createElement("div");
    diagram = document.createElement("div");
    document.body.append(root, diagram);
  });

  it("lists existing views and draws the extended lattice", async () => {
    const { api } = editorApi();
    await new ViewEditor(api, "universe", root, diagram).mount();
    expect(root.querySelectorAll(".view-list li")).toHaveLength(5);
    expect(diagram.querySelectorAll("circle")).toHaveLength(11);
  });

  it("saves a view after a successful constructor dry-run", async () => {
    const { api, addView } = editorApi();
    const editor = new ViewEditor(api, "universe", root, diagram);
    await editor.mount();
    const form = root.querySelector("form")!;
    form.querySelector<HTMLInputElement>("input[name=name]")!.value = "Texts";
    form.querySelector<HTMLInputElement>("input[name=constructor]")!.value = "format=text";
    await editor.save(form);
    expect(addView).toHaveBeenCalledWith(
      "universe",
      expect.objectContaining({ name: "Texts", constructor: "format=text" }),
    );
  });

  it("shows parser errors from the dry-run verbatim and does not save", async () => {
    const { api, addView } = editorApi({
      query: vi
        .fn()
        .mockRejectedValue(
          new ApiError("QuerySyntaxError", "expected a value at offset 7 (expected value)"),
        ),
    });
    const editor = new ViewEditor(api, "universe", root, diagram);
    await editor.mount();
    const form = root.querySelector("form")!;
    form.querySelector<HTMLInputElement>("input[name=name]")!.value = "Broken";
    form.querySelector<HTMLInputElement>("input[name=constructor]")!.value = "format=";
    await editor.save(form);
    expect(root.querySelector(".form-error")!.textContent).toMatch(/offset 7/);
    expect(addView).not.toHaveBeenCalled();
  });

  it("shows server cycle errors verbatim", async () => {
    const { api } = editorApi({
      addView: vi
        .fn()
        .mockRejectedValue(
          new ApiError("invalid-views", "view set fails validation", "cycle: scope graph has a cycle [A -> B -> A]"),
        ),
    });
    const editor = new ViewEditor(api, "universe", root, diagram);
    await editor.mount();
    const form = root.querySelector("form")!;
    form.querySelector<HTMLInputElement>("input[name=name]")!.value = "A";
    await editor.save(form);
    expect(root.querySelector(".form-error")!.textContent).toMatch(/cycle/);
  });
});
