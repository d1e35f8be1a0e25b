// Board layouts, computed client-side: radial embedding for trees,
// a circle for cycles (and for anything else). Coordinates land in the
// unit square; the renderer scales them to the viewport.

export interface Point {
  x: number;
  y: number;
}

type Adjacency = number[][];

function adjacency(n: number, edges: [number, number][]): Adjacency {
  const adj: Adjacency = Array.from({ length: n }, () => []);
  for (const [u, v] of edges) {
    adj[u].push(v);
    adj[v].push(u);
  }
  for (const list of adj) list.sort((a, b) => a - b);
  return adj;
}

function isTree(n: number, edges: [number, number][]): boolean {
  if (edges.length !== n - 1) return false;
  const adj = adjacency(n, edges);
  const seen = new Set<number>([0]);
  const queue = [0];
  while (queue.length) {
    const u = queue.shift()!;
    for (const v of adj[u]) {
      if (!seen.has(v)) {
        seen.add(v);
        queue.push(v);
      }
    }
  }
  return seen.size === n;
}

/** Tree center by leaf peeling (one or two vertices; we take the smaller). */
export function treeCenter(n: number, edges: [number, number][]): number {
  if (n === 1) return 0;
  const adj = adjacency(n, edges);
  const degree = adj.map((a) => a.length);
  let layer = [];
  const removed = new Array(n).fill(false);
  for (let v = 0; v < n; v++) if (degree[v] <= 1) layer.push(v);
  let remaining = n;
  while (remaining > 2) {
    const next: number[] = [];
    for (const leaf of layer) {
      removed[leaf] = true;
      remaining -= 1;
      for (const w of adj[leaf]) {
        if (!removed[w]) {
          degree[w] -= 1;
          if (degree[w] === 1) next.push(w);
        }
      }
    }
    layer = next;
  }
  const survivors = [];
  for (let v = 0; v < n; v++) if (!removed[v]) survivors.push(v);
  return Math.min(...survivors);
}

/**
 * Radial tree layout: the center sits mid-square, depth maps to radius,
 * and every subtree gets an angular wedge proportional to its leaf count,
 * which keeps sibling branches from overlapping.
 */
export function treeLayout(n: number, edges: [number, number][]): Point[] {
  if (n === 1) return [{ x: 0.5, y: 0.5 }];
  const adj = adjacency(n, edges);
  const root = treeCenter(n, edges);
  const parent = new Array<number>(n).fill(-1);
  const order: number[] = [root];
  const depth = new Array<number>(n).fill(0);
  parent[root] = root;
  for (let i = 0; i < order.length; i++) {
    const u = order[i];
    for (const v of adj[u]) {
      if (parent[v] === -1) {
        parent[v] = u;
        depth[v] = depth[u] + 1;
        order.push(v);
      }
    }
  }
  const leaves = new Array<number>(n).fill(0);
  for (let i = order.length - 1; i >= 0; i--) {
    const u = order[i];
    const kids = adj[u].filter((v) => parent[v] === u);
    leaves[u] = kids.length === 0 ? 1 : kids.reduce((s, v) => s + leaves[v], 0);
  }
  const maxDepth = Math.max(...depth, 1);
  const points: Point[] = new Array(n);
  const place = (u: number, from: number, to: number) => {
    const angle = (from + to) / 2;
    const radius = 0.45 * (depth[u] / maxDepth);
    points[u] = {
      x: 0.5 + radius * Math.cos(angle),
      y: 0.5 + radius * Math.sin(angle),
    };
    let cursor = from;
    for (const v of adj[u]) {
      if (parent[v] !== u || v === u) continue;
      const span = ((to - from) * leaves[v]) / leaves[u];
      place(v, cursor, cursor + span);
      cursor += span;
    }
  };
  place(root, -Math.PI / 2, (3 * Math.PI) / 2);
  return points;
}

export function circleLayout(n: number): Point[] {
  const points: Point[] = [];
  for (let v = 0; v < n; v++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * v) / n;
    points.push({
      x: 0.5 + 0.42 * Math.cos(angle),
      y: 0.5 + 0.42 * Math.sin(angle),
    });
  }
  return points;
}

export function boardLayout(n: number, edges: [number, number][]): Point[] {
  if (isTree(n, edges)) return treeLayout(n, edges);
  return circleLayout(n);
}
