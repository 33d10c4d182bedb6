// Filter panel → search query. The panel exposes exactly the query
// fields the protocol accepts: terms, scope, kind, per-dimension degree
// ranges, include-unpublished.

import type { DimensionFilter, DimensionKind, Scope, SearchQuery } from "../types.js";
import { DIMENSION_KINDS } from "../types.js";

export interface FilterPanelState {
  terms: string;
  scope: Scope;
  kind: string;
  includeUnpublished: boolean;
  ranges: Record<DimensionKind, { lo: number | null; hi: number | null }>;
}

export function emptyFilters(): FilterPanelState {
  const ranges = {} as FilterPanelState["ranges"];
  for (const kind of DIMENSION_KINDS) ranges[kind] = { lo: null, hi: null };
  return { terms: "", scope: "shared", kind: "", includeUnpublished: false, ranges };
}

export function termList(raw: string): string[] {
  return raw
    .split(/\s+/)
    .map((t) => t.trim())
    .filter((t) => t.length > 0);
}

/**
 * Null when the panel is too empty to submit — the server requires at
 * least one of terms, kind, or a dimension constraint.
 */
export function toQuery(panel: FilterPanelState): SearchQuery | null {
  const terms = termList(panel.terms);
  const dimensions: DimensionFilter[] = [];
  for (const kind of DIMENSION_KINDS) {
    const { lo, hi } = panel.ranges[kind];
    if (lo === null && hi === null) continue;
    const filter: DimensionFilter = { kind };
    if (lo !== null) filter.lo = lo;
    if (hi !== null) filter.hi = hi;
    dimensions.push(filter);
  }
  const kind = panel.kind.trim();
  if (terms.length === 0 && !kind && dimensions.length === 0) return null;

  const query: SearchQuery = { terms, scope: panel.scope };
  if (kind) query.kind = kind;
  if (dimensions.length > 0) query.dimensions = dimensions;
  if (panel.includeUnpublished && panel.scope === "personal") {
    query.include_unpublished = true;
  }
  return query;
}
