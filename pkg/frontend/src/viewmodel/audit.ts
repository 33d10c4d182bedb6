// Knowledge audit form: the template a new element is authored from.
// Degrees are plain 1-5 integers; the semantic label shown next to each
// slider always comes from the server's label table, never from text
// baked into the UI.

import type { DimensionKind, LabelTable, Situation } from "../types.js";
import { DIMENSION_KINDS } from "../types.js";
import type { ElementDraft } from "../api.js";

export const DEGREE_MIN = 1;
export const DEGREE_MAX = 5;

export interface AuditFields {
  title: string;
  kind: string;
  keywords: string;      // raw input, split on commas/semicolons on submit
  description: string;
  source: string;
  degrees: Record<DimensionKind, number>;
}

export function emptyAuditFields(): AuditFields {
  return {
    title: "",
    kind: "",
    keywords: "",
    description: "",
    source: "",
    degrees: { explicitness: 3, novelty: 3, importance: 3, usability: 3 },
  };
}

export class AuditFormModel {
  fields: AuditFields = emptyAuditFields();

  constructor(private labels: LabelTable) {}

  /** slider movement; values clamp into the 1-5 scale */
  setDegree(kind: DimensionKind, degree: number): void {
    const d = Math.round(degree);
    this.fields.degrees[kind] = Math.min(DEGREE_MAX, Math.max(DEGREE_MIN, d));
  }

  degree(kind: DimensionKind): number {
    return this.fields.degrees[kind];
  }

  /** the label the form shows beside a slider at a given position */
  labelFor(kind: DimensionKind, degree: number): string {
    return this.labels[kind][String(degree)] ?? `degree ${degree}`;
  }

  currentLabel(kind: DimensionKind): string {
    return this.labelFor(kind, this.fields.degrees[kind]);
  }

  keywordList(): string[] {
    return this.fields.keywords
      .split(/[,;]/)
      .map((k) => k.trim())
      .filter((k) => k.length > 0);
  }

  /** blocking problems, keyed by field name, for inline display */
  validate(): Record<string, string> {
    const errors: Record<string, string> = {};
    if (!this.fields.title.trim()) errors.title = "title is required";
    if (!this.fields.kind.trim()) errors.kind = "kind is required";
    if (!this.fields.description.trim()) errors.description = "description is required";
    for (const kind of DIMENSION_KINDS) {
      const d = this.fields.degrees[kind];
      if (!Number.isInteger(d) || d < DEGREE_MIN || d > DEGREE_MAX) {
        errors[kind] = `${kind} degree must be an integer in ${DEGREE_MIN}..${DEGREE_MAX}`;
      }
    }
    return errors;
  }

  toPayload(): ElementDraft {
    return {
      title: this.fields.title.trim(),
      kind: this.fields.kind.trim(),
      keywords: this.keywordList(),
      description: this.fields.description.trim(),
      source: this.fields.source.trim(),
      content: { ...this.fields.degrees },
    };
  }
}

/** read-only preview of what creation context would be captured right now */
export function contextPreview(
  who: { user: string; team: string },
  situation: Situation | null,
): { actor: string; project: string; task: string; place: string; resources: string } {
  return {
    actor: `${who.user} (${who.team})`,
    project: situation?.project ?? "—",
    task: situation?.task ?? "—",
    place: situation?.place ?? "—",
    resources: situation && situation.resources.length ? situation.resources.join(", ") : "—",
  };
}
