// Element detail pane: label/value rows built 1:1 from a server
// element envelope. No field shown here is computed client-side —
// formatting joins and localized dashes only.

import type {
  DimensionKind,
  ElementEnvelope,
  KnowledgeElement,
  LabelTable,
} from "../types.js";
import { DIMENSION_KINDS } from "../types.js";

export interface DetailRow {
  label: string;
  value: string;
}

export function detailRows(envelope: ElementEnvelope): DetailRow[] {
  const e = envelope.element;
  return [
    { label: "id", value: e.id },
    { label: "title", value: e.title },
    { label: "kind", value: e.kind },
    { label: "keywords", value: e.keywords.join("; ") },
    { label: "description", value: e.description },
    { label: "creator", value: e.creator },
    { label: "created", value: e.created_date },
    { label: "version", value: e.version },
    { label: "parent", value: e.parent ?? "—" },
    { label: "source", value: e.source },
    { label: "published", value: e.published ? "yes" : "no" },
    { label: "ranking", value: String(e.ranking) },
    { label: "scope", value: envelope.scope },
  ];
}

export interface DimensionRow {
  kind: DimensionKind;
  degree: number;
  label: string;
}

export function dimensionRows(element: KnowledgeElement, labels: LabelTable): DimensionRow[] {
  return DIMENSION_KINDS.map((kind) => ({
    kind,
    degree: element.content[kind],
    label: labels[kind][String(element.content[kind])] ?? "",
  }));
}

export interface ContextLine {
  heading: string;
  actor: string;
  when: string;
  where: string;
  task: string;
  resources: string;
}

export function contextLines(element: KnowledgeElement): ContextLine[] {
  const fmt = (heading: string, c: KnowledgeElement["context"]["creation"]): ContextLine => ({
    heading,
    actor: `${c.actor.user} (${c.actor.team})`,
    when: c.timestamp,
    where: c.place ?? "—",
    task: c.task ?? "—",
    resources: c.resources.length ? c.resources.join(", ") : "—",
  });
  return [
    fmt("created", element.context.creation),
    ...element.context.usages.map((u, i) => fmt(`usage ${i + 1}`, u)),
  ];
}

/** actions the detail pane offers for this element, given who is looking */
export function availableActions(
  envelope: ElementEnvelope,
  viewer: { user: string; is_admin: boolean },
): string[] {
  const e = envelope.element;
  const actions = ["use", "derive"];
  if (envelope.scope === "personal" && !e.published) actions.unshift("publish");
  if (e.published) actions.push("evaluate");
  if (envelope.scope === "personal" || viewer.is_admin || e.creator === viewer.user) {
    actions.push("delete");
  }
  return actions;
}
