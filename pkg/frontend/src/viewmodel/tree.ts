// Collapsible lineage tree. The server sends a forest of version
// lineages; the view-model flattens it to indented rows, hiding the
// subtrees of collapsed nodes.

import type { TreeNode, TreeResponse } from "../types.js";

export interface TreeRow {
  id: string;
  title: string;
  version: string;
  depth: number;
  hasChildren: boolean;
  collapsed: boolean;
}

export class TreeModel {
  private collapsedIds = new Set<string>();

  constructor(private response: TreeResponse) {}

  get nodeCount(): number {
    return this.response.node_count;
  }

  get depth(): number {
    return this.response.depth;
  }

  toggle(id: string): void {
    if (this.collapsedIds.has(id)) this.collapsedIds.delete(id);
    else this.collapsedIds.add(id);
  }

  isCollapsed(id: string): boolean {
    return this.collapsedIds.has(id);
  }

  rows(): TreeRow[] {
    const out: TreeRow[] = [];
    const walk = (node: TreeNode, depth: number) => {
      const collapsed = this.collapsedIds.has(node.id);
      out.push({
        id: node.id,
        title: node.title,
        version: node.version,
        depth,
        hasChildren: node.children.length > 0,
        collapsed,
      });
      if (!collapsed) {
        for (const child of node.children) walk(child, depth + 1);
      }
    };
    for (const root of this.response.roots) walk(root, 0);
    return out;
  }

  /** every id in the forest, expanded or not */
  allIds(): string[] {
    const out: string[] = [];
    const walk = (node: TreeNode) => {
      out.push(node.id);
      node.children.forEach(walk);
    };
    this.response.roots.forEach(walk);
    return out;
  }
}
