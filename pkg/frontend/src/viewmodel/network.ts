// Render model for the knowledge network view. Every node and edge
// comes from one network response — the view draws this list and
// nothing else, so counts always match what the server reported.

import type { NetworkEdge, NetworkNode, NetworkResponse } from "../types.js";

export interface GraphNode extends NetworkNode {
  /** radius scales gently with community ranking */
  radius: number;
}

export interface GraphModel {
  scope: string;
  nodes: GraphNode[];
  edges: NetworkEdge[];
}

const BASE_RADIUS = 10;
const MAX_RADIUS = 26;

export function nodeRadius(ranking: number): number {
  const r = BASE_RADIUS + 3 * Math.sqrt(Math.max(0, ranking));
  return Math.min(MAX_RADIUS, r);
}

export function toGraphModel(response: NetworkResponse): GraphModel {
  return {
    scope: response.scope,
    nodes: response.nodes.map((n) => ({ ...n, radius: nodeRadius(n.ranking) })),
    edges: response.edges.slice(),
  };
}

// one stroke style per relation kind; the legend mirrors this map
export const EDGE_STYLE: Record<NetworkEdge["kind"], { dash: string; label: string }> = {
  "parent-child": { dash: "", label: "version lineage" },
  association: { dash: "6 3", label: "association" },
  dependency: { dash: "2 3", label: "dependency" },
};

export function edgeCountsByKind(model: GraphModel): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const e of model.edges) counts[e.kind] = (counts[e.kind] ?? 0) + 1;
  return counts;
}
