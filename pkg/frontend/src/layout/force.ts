// Small force-directed layout: pairwise repulsion, spring attraction
// along edges, and a centering pull, integrated with plain Euler steps
// and velocity damping. Deterministic for a given seed so snapshots and
// tests are stable.

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
  /** pinned by a drag; forces no longer move it */
  fixed: boolean;
}

export interface LayoutEdge {
  source: string;
  target: string;
}

export interface ForceOptions {
  width: number;
  height: number;
  repulsion: number;   // Coulomb-like constant
  springLength: number;
  springStrength: number;
  centerPull: number;
  damping: number;
  seed: number;
}

export const DEFAULT_FORCE: ForceOptions = {
  width: 800,
  height: 600,
  repulsion: 12000,
  springLength: 120,
  springStrength: 0.04,
  centerPull: 0.01,
  damping: 0.85,
  seed: 1,
};

/** mulberry32 — tiny sereproducible PRNG, plenty for scatter placement */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export class ForceLayout {
  readonly nodes: LayoutNode[] = [];
  private index = new Map<string, LayoutNode>();
  private edges: LayoutEdge[] = [];
  private options: ForceOptions;

  constructor(options: Partial<ForceOptions> = {}) {
    this.options = { ...DEFAULT_FORCE, ...options };
  }

  /**
   * Replace the graph. Nodes whose id survives keep their position, so
   * refreshing a view after a publish doesn't reshuffle the picture.
   */
  setGraph(ids: string[], edges: LayoutEdge[]): void {
    const rand = mulberry32(this.options.seed + ids.length);
    const { width, height } = this.options;
    const next: LayoutNode[] = [];
    const nextIndex = new Map<string, LayoutNode>();
    for (const id of ids) {
      const existing = this.index.get(id);
      const node = existing ?? {
        id,
        x: width * (0.2 + 0.6 * rand()),
        y: height * (0.2 + 0.6 * rand()),
        vx: 0,
        vy: 0,
        fixed: false,
      };
      next.push(node);
      nextIndex.set(id, node);
    }
    this.nodes.length = 0;
    this.nodes.push(...next);
    this.index = nextIndex;
    this.edges = edges.filter((e) => nextIndex.has(e.source) && nextIndex.has(e.target));
  }

  node(id: string): LayoutNode | undefined {
    return this.index.get(id);
  }

  pin(id: string, x: number, y: number): void {
    const node = this.index.get(id);
    if (!node) return;
    node.x = x;
    node.y = y;
    node.vx = 0;
    node.vy = 0;
    node.fixed = true;
  }

  release(id: string): void {
    const node = this.index.get(id);
    if (node) node.fixed = false;
  }

  /** one integration step; returns total kinetic energy (settling signal) */
  step(): number {
    const { repulsion, springLength, springStrength, centerPull, damping, width, height } =
      this.options;
    const n = this.nodes.length;
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const a = this.nodes[i];
        const b = this.nodes[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1) {
          // coincident nodes: nudge apart along a stable axis
          dx = 0.5 + (i % 3) * 0.25;
          dy = 0.5 - (j % 3) * 0.25;
          d2 = dx * dx + dy * dy;
        }
        const f = repulsion / d2;
        const d = Math.sqrt(d2);
        fx[i] += (f * dx) / d;
        fy[i] += (f * dy) / d;
        fx[j] -= (f * dx) / d;
        fy[j] -= (f * dy) / d;
      }
    }

    for (const edge of this.edges) {
      const a = this.index.get(edge.source)!;
      const b = this.index.get(edge.target)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(1, Math.sqrt(dx * dx + dy * dy));
      const f = springStrength * (d - springLength);
      const i = this.nodes.indexOf(a);
      const j = this.nodes.indexOf(b);
      fx[i] += (f * dx) / d;
      fy[i] += (f * dy) / d;
      fx[j] -= (f * dx) / d;
      fy[j] -= (f * dy) / d;
    }

    const cx = width / 2;
    const cy = height / 2;
    let energy = 0;
    for (let i = 0; i < n; i++) {
      const node = this.nodes[i];
      if (node.fixed) continue;
      fx[i] += (cx - node.x) * centerPull;
      fy[i] += (cy - node.y) * centerPull;
      node.vx = (node.vx + fx[i]) * damping;
      node.vy = (node.vy + fy[i]) * damping;
      node.x += node.vx;
      node.y += node.vy;
      energy += node.vx * node.vx + node.vy * node.vy;
    }
    return energy;
  }

  /** run to (near) rest; bounded so a pathological graph can't spin forever */
  settle(maxSteps = 300, restEnergy = 0.05): number {
    let steps = 0;
    while (steps < maxSteps) {
      steps += 1;
      if (this.step() < restEnergy) break;
    }
    return steps;
  }
}
