// Element detail: attributes, dimensions, context trail, links, and the
// action bar (publish / use / derive / evaluate / delete).

import { el, flash } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";
import {
  availableActions,
  contextLines,
  detailRows,
  dimensionRows,
} from "../viewmodel/detail.js";
import type { ElementEnvelope, LabelTable } from "../types.js";

export async function detailView(state: AppState, id: string): Promise<HTMLElement> {
  let envelope: ElementEnvelope;
  try {
    envelope = await state.api.getElement(id);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      return el("section", {}, el("h2", {}, `element ${id}`), el("p", {}, err.message));
    }
    throw err;
  }
  const [labels, who, evals] = await Promise.all([
    state.api.labels() as Promise<LabelTable>,
    state.api.whoami(),
    envelope.element.published ? state.api.evaluations(id) : Promise.resolve([]),
  ]);
  const e = envelope.element;

  const attributeTable = el(
    "table",
    { class: "detail-table" },
    ...detailRows(envelope).map((row) =>
      el("tr", {}, el("th", {}, row.label), el("td", {}, row.value)),
    ),
  );

  const dimensionList = el(
    "table",
    { class: "detail-table" },
    ...dimensionRows(e, labels).map((row) =>
      el("tr", {},
        el("th", {}, row.kind),
        el("td", {}, `${row.degree} — ${row.label}`)),
    ),
  );

  const contextBlock = el(
    "div",
    { class: "context-trail" },
    ...contextLines(e).map((line) =>
      el("div", { class: "context-line" },
        el("strong", {}, line.heading),
        ` ${line.actor} · ${line.when} · ${line.where}` +
          (line.task !== "—" ? ` · task ${line.task}` : "")),
    ),
  );

  const linkList =
    e.links.length === 0
      ? el("p", { class: "muted" }, "no links")
      : el("ul", {},
          ...e.links.map((link) =>
            el("li", {},
              `${link.kind} → `,
              el("a", { href: `#/element/${link.target}` }, link.target)),
          ));

  const evalBlock =
    evals.length === 0
      ? null
      : el("div", {},
          el("h3", {}, "evaluations"),
          el("table", { class: "detail-table" },
            ...evals.map((row) =>
              el("tr", {},
                el("th", {}, row.evaluator),
                el("td", {}, `${row.score} · ${row.timestamp}`)),
            )));

  const reload = () => {
    window.location.hash = `#/element/${id}`;
    window.dispatchEvent(new HashChangeEvent("hashchange"));
  };

  const actionBar = el("div", { class: "action-bar" });
  const actions = availableActions(envelope, who);
  if (actions.includes("publish")) {
    const button = el("button", {}, "publish");
    button.addEventListener("click", async () => {
      const result = await state.api.publish(id).catch((err) => {
        flash(String(err instanceof ApiError ? err.message : err), "error");
        return null;
      });
      if (result) {
        flash(result.duplicate
          ? `${id} v${result.version} was already published`
          : `published ${id} v${result.version}`);
        reload();
      }
    });
    actionBar.append(button);
  }
  {
    const button = el("button", {}, "use");
    button.addEventListener("click", async () => {
      try {
        const used = await state.api.use(id);
        flash(`recorded a usage of ${id} on the ${used.scope} copy`);
        reload();
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });
    actionBar.append(button);
  }
  if (actions.includes("evaluate")) {
    const select = el("select", {},
      ...[1, 2, 3, 4, 5].map((n) => el("option", { value: String(n) }, String(n))));
    const button = el("button", {}, "evaluate");
    button.addEventListener("click", async () => {
      try {
        const result = await state.api.evaluate(id, Number(select.value));
        flash(`${result.element_id} ranking is now ${result.ranking}`);
        reload();
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });
    actionBar.append(el("span", { class: "evaluate-group" }, select, button));
  }
  {
    const button = el("button", {}, "derive new version");
    button.addEventListener("click", async () => {
      const description = window.prompt("description for the derived version", e.description);
      if (description === null) return;
      try {
        const derived = await state.api.derive(id, { description });
        flash(`derived ${derived.element.id} v${derived.element.version} from ${id}`);
        window.location.hash = `#/element/${derived.element.id}`;
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });
    actionBar.append(button);
  }
  if (actions.includes("delete")) {
    const button = el("button", { class: "danger" }, "delete");
    button.addEventListener("click", async () => {
      if (!window.confirm(`logically delete ${id} (${envelope.scope})?`)) return;
      try {
        await state.api.deleteElement(id, envelope.scope);
        flash(`deleted ${id} from the ${envelope.scope} base`);
        window.location.hash = "#/browse";
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });
    actionBar.append(button);
  }

  return el(
    "section",
    { class: "detail-screen" },
    el("h2", {}, `${e.title} `, el("span", { class: "muted" }, `(${e.id} v${e.version})`)),
    el("span", { class: `scope-badge scope-${envelope.scope}` }, envelope.scope),
    e.published ? el("span", { class: "scope-badge published" }, "published") : null,
    actionBar,
    el("div", { class: "detail-columns" },
      el("div", {}, el("h3", {}, "attributes"), attributeTable),
      el("div", {},
        el("h3", {}, "dimensions"), dimensionList,
        el("h3", {}, "links"), linkList,
        evalBlock)),
    el("h3", {}, "context"),
    contextBlock,
  );
}
