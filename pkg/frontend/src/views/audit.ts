// The knowledge audit screen: the template new knowledge is authored
// from — basic attributes, the four dimension sliders with live
// semantic labels, and a read-only preview of the context that will be
// captured on submit.

import { el, flash } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";
import { AuditFormModel, contextPreview } from "../viewmodel/audit.js";
import { DIMENSION_KINDS } from "../types.js";
import type { LabelTable, Situation } from "../types.js";

export async function auditView(state: AppState): Promise<HTMLElement> {
  const [labels, who, sit] = await Promise.all([
    state.api.labels() as Promise<LabelTable>,
    state.api.whoami(),
    state.api.situation(),
  ]);
  const model = new AuditFormModel(labels);

  const fieldErrors = new Map<string, HTMLElement>();
  const errorFor = (name: string): HTMLElement => {
    const node = el("p", { class: "field-error hidden" });
    fieldErrors.set(name, node);
    return node;
  };
  const showErrors = (errors: Record<string, string>) => {
    for (const [name, node] of fieldErrors) {
      const message = errors[name];
      node.textContent = message ?? "";
      node.classList.toggle("hidden", !message);
    }
  };

  const titleInput = el("input", { id: "audit-title" });
  const kindInput = el("input", { id: "audit-kind", list: "kind-suggestions" });
  const keywordsInput = el("input", { id: "audit-keywords" });
  const descriptionInput = el("textarea", { id: "audit-description", rows: "4" });
  const sourceInput = el("input", { id: "audit-source" });

  const sliderBlock = (kind: (typeof DIMENSION_KINDS)[number]): HTMLElement => {
    const slider = el("input", {
      type: "range",
      min: "1",
      max: "5",
      step: "1",
      value: String(model.degree(kind)),
      id: `audit-${kind}`,
    });
    const label = el("span", { class: "degree-label" }, model.currentLabel(kind));
    const value = el("span", { class: "degree-value" }, String(model.degree(kind)));
    slider.addEventListener("input", () => {
      model.setDegree(kind, Number(slider.value));
      label.textContent = model.currentLabel(kind);
      value.textContent = String(model.degree(kind));
    });
    return el(
      "div",
      { class: "slider-row" },
      el("label", { for: `audit-${kind}` }, kind),
      slider,
      value,
      label,
      errorFor(kind),
    );
  };

  const preview = contextPreview(who, sit.situation as Situation | null);
  const contextCard = el(
    "aside",
    { class: "context-card" },
    el("h3", {}, "context to be captured"),
    el("dl", {},
      el("dt", {}, "actor"), el("dd", {}, preview.actor),
      el("dt", {}, "project"), el("dd", {}, preview.project),
      el("dt", {}, "task"), el("dd", {}, preview.task),
      el("dt", {}, "place"), el("dd", {}, preview.place),
      el("dt", {}, "resources"), el("dd", {}, preview.resources),
    ),
    sit.situation
      ? null
      : el("p", { class: "muted" }, "no working situation open — only actor and time will be recorded"),
  );

  const submit = el("button", { type: "submit" }, "Create knowledge element");
  const form = el(
    "form",
    { class: "audit-form" },
    el("label", { for: "audit-title" }, "title"),
    titleInput,
    errorFor("title"),
    el("label", { for: "audit-kind" }, "kind"),
    kindInput,
    el("datalist", { id: "kind-suggestions" },
      ...["Procedure", "Design experience", "Design rule", "Idea", "Lesson learned"].map(
        (k) => el("option", { value: k }),
      )),
    errorFor("kind"),
    el("label", { for: "audit-keywords" }, "keywords (comma or semicolon separated)"),
    keywordsInput,
    el("label", { for: "audit-description" }, "description"),
    descriptionInput,
    errorFor("description"),
    el("label", { for: "audit-source" }, "source"),
    sourceInput,
    el("h3", {}, "content dimensions"),
    ...DIMENSION_KINDS.map(sliderBlock),
    submit,
  );

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    model.fields.title = titleInput.value;
    model.fields.kind = kindInput.value;
    model.fields.keywords = keywordsInput.value;
    model.fields.description = descriptionInput.value;
    model.fields.source = sourceInput.value;
    const problems = model.validate();
    showErrors(problems);
    if (Object.keys(problems).length > 0) return;
    submit.setAttribute("disabled", "");
    try {
      const created = await state.api.createElement(model.toPayload());
      const e = created.element;
      flash(
        `created ${e.id} v${e.version}: ${e.title}` +
          (created.context_captured ? "" : " (no situation context)"),
      );
      window.location.hash = `#/element/${e.id}`;
    } catch (err) {
      if (err instanceof ApiError) showErrors({ title: err.message });
      else throw err;
    } finally {
      submit.removeAttribute("disabled");
    }
  });

  return el("section", { class: "audit-screen" },
    el("h2", {}, "Knowledge audit"),
    el("div", { class: "audit-layout" }, form, contextCard));
}
