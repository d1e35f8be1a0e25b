// Rendering split in two: a pure board model (testable without a DOM)
// and a thin SVG applier.

import { Point } from "./layout.js";
import { StoreState } from "./store.js";

export interface VertexGlyph {
  vertex: number;
  x: number;
  y: number;
  radius: number;
  label: string;
  weightText: string;
  owner: "alice" | "bob" | null;
  head: boolean;
  clickable: boolean;
  hinted: boolean;
  heat: number | null; // per-start value, lower is better for Alice
}

export interface EdgeLine {
  from: Point;
  to: Point;
  owner: "alice" | "bob" | null;
}

export interface BoardModel {
  vertices: VertexGlyph[];
  edges: EdgeLine[];
  turnText: string;
  bannerText: string | null;
  statusText: string;
}

const MIN_R = 0.018;
const MAX_R = 0.06;

export function boardModel(
  state: StoreState,
  layout: Point[],
  clickTarget: (v: number) => string | null,
): BoardModel {
  const s = state.server;
  if (!s) {
    return {
      vertices: [],
      edges: [],
      turnText: "no game",
      bannerText: null,
      statusText: state.error ?? "create a game to begin",
    };
  }
  const alice = new Set(s.alice_path);
  const bob = new Set(s.bob_path);
  const aliceHead = s.alice_path[s.alice_path.length - 1];
  const bobHead = s.bob_path[s.bob_path.length - 1];
  const hinted = state.hintEnabled && state.hint ? hintedVertex(state.hint.move) : null;

  const maxWeight = Math.max(...s.weights_decimal, 1e-9);
  const vertices: VertexGlyph[] = [];
  for (let v = 0; v < s.n; v++) {
    const owner = alice.has(v) ? "alice" : bob.has(v) ? "bob" : null;
    const optimistic = state.optimisticVertex === v;
    vertices.push({
      vertex: v,
      x: layout[v].x,
      y: layout[v].y,
      radius: MIN_R + (MAX_R - MIN_R) * Math.sqrt(s.weights_decimal[v] / maxWeight),
      label: String(v),
      weightText: s.weights[v],
      owner: owner ?? (optimistic ? state.humanSide : null),
      head: v === aliceHead || v === bobHead,
      clickable: clickTarget(v) !== null,
      hinted: hinted === v,
      heat:
        state.hintEnabled && state.heatmap && s.phase === "await_alice_placement"
          ? (state.heatmap.get(v) ?? null)
          : null,
    });
  }

  const claimedEdge = (u: number, v: number): "alice" | "bob" | null => {
    const iu = s.alice_path.indexOf(u);
    if (iu >= 0 && Math.abs(iu - s.alice_path.indexOf(v)) === 1) return "alice";
    const ju = s.bob_path.indexOf(u);
    if (ju >= 0 && Math.abs(ju - s.bob_path.indexOf(v)) === 1) return "bob";
    return null;
  };
  const edges: EdgeLine[] = s.edges.map(([u, v]) => ({
    from: layout[u],
    to: layout[v],
    owner: claimedEdge(u, v),
  }));

  const turnText = s.finished
    ? "game over"
    : s.turn === state.humanSide
      ? `your move (${state.humanSide})`
      : `engine thinking (${s.turn})`;
  const bannerText = state.banner
    ? `final value ${state.banner.value} (alice ${state.banner.aliceWeight}, bob ${state.banner.bobWeight})`
    : null;
  const statusParts = [];
  if (state.error) statusParts.push(state.error);
  if (state.lastEngineMoves.length)
    statusParts.push(`engine: ${state.lastEngineMoves.join(" ")}`);
  if (state.hintEnabled && state.hint)
    statusParts.push(`hint ${state.hint.move} (value ${state.hint.value})`);
  return {
    vertices,
    edges,
    turnText,
    bannerText,
    statusText: statusParts.join(" | "),
  };
}

function hintedVertex(code: string): number | null {
  if (code.endsWith("--")) return null;
  return Number(code.slice(2));
}

/** Map a per-start value in [-1, 1] to a heat tint (good for the mover = green). */
export function heatColor(value: number, side: "alice" | "bob"): string {
  const good = side === "alice" ? -value : value; // alice wants small values
  const t = Math.max(-1, Math.min(1, good));
  const hue = 120 * ((t + 1) / 2); // red (bad) .. green (good)
  return `hsl(${hue.toFixed(0)}, 75%, 55%)`;
}

// ---------------------------------------------------------------------------
// DOM side

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderBoard(
  svg: SVGSVGElement,
  model: BoardModel,
  side: "alice" | "bob",
  onClick: (vertex: number) => void,
): void {
  svg.innerHTML = "";
  const size = 640;
  svg.setAttribute("viewBox", `0 0 ${size} ${size}`);
  for (const edge of model.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.from.x * size));
    line.setAttribute("y1", String(edge.from.y * size));
    line.setAttribute("x2", String(edge.to.x * size));
    line.setAttribute("y2", String(edge.to.y * size));
    line.setAttribute(
      "class",
      edge.owner ? `edge edge-${edge.owner}` : "edge",
    );
    svg.appendChild(line);
  }
  for (const glyph of model.vertices) {
    const group = document.createElementNS(SVG_NS, "g");
    const classes = ["vertex"];
    if (glyph.owner) classes.push(`owned-${glyph.owner}`);
    if (glyph.head) classes.push("head");
    if (glyph.clickable) classes.push("clickable");
    if (glyph.hinted) classes.push("hinted");
    group.setAttribute("class", classes.join(" "));

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(glyph.x * size));
    circle.setAttribute("cy", String(glyph.y * size));
    circle.setAttribute("r", String(glyph.radius * size));
    if (glyph.heat !== null && !glyph.owner) {
      circle.setAttribute("fill", heatColor(glyph.heat, side));
    }
    group.appendChild(circle);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(glyph.x * size));
    label.setAttribute("y", String(glyph.y * size - glyph.radius * size - 6));
    label.setAttribute("class", "vertex-label");
    label.textContent = `${glyph.label} · ${glyph.weightText}`;
    group.appendChild(label);

    if (glyph.clickable) {
      group.addEventListener("click", () => onClick(glyph.vertex));
    }
    svg.appendChild(group);
  }
}
