// Wire types and client for the tronlab play server. The UI never
// re-implements game rules: everything it needs (legal moves, values,
// outcomes) arrives over this protocol.

export type Side = "alice" | "bob";

export type Phase =
  | "await_alice_placement"
  | "await_bob_placement"
  | "running"
  | "finished";

export interface ServerState {
  phase: Phase;
  turn: Side;
  alice_path: number[];
  bob_path: number[];
  alice_stuck: boolean;
  bob_stuck: boolean;
  n: number;
  edges: [number, number][];
  weights: string[];
  weights_decimal: number[];
  is_tree: boolean;
  is_cycle: boolean;
  finished: boolean;
}

export interface OutcomeJson {
  value: string;
  value_decimal: number;
  alice_weight: string;
  bob_weight: string;
}

export interface GameResponse {
  id: string;
  state: ServerState;
  legal_moves: string[];
  engine_moves?: string[];
  engine_move?: string | null;
  outcome: OutcomeJson | null;
  human_side?: Side;
  engine_policy?: string;
  log?: { move: string; by: string; ts: number }[];
}

export interface MoveResponse {
  state: ServerState;
  legal_moves: string[];
  engine_moves: string[];
  engine_move: string | null;
  outcome: OutcomeJson | null;
}

export interface HintResponse {
  move: string;
  value: string;
  value_decimal: number;
  active_bounds?: { name: string; orientation: string; rhs: string }[];
}

export interface PerStartEntry {
  value: string;
  decimal: number;
  bob_reply: number | null;
}

export interface AnalysisResponse {
  per_start: Record<string, PerStartEntry>;
  delta: string;
  optimal_starts: number[];
  decomposition?: unknown;
  certificates?: unknown;
}

export interface NewGameOptions {
  instance?: string;
  generator?: { family: string; n: number; weight_mode?: unknown; seed?: number };
  human_side: Side;
  engine_policy: string;
}

export class ServerError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

/** Parse "p/q" (or "p") into a number for rendering purposes only. */
export function fractionToNumber(text: string): number {
  const slash = text.indexOf("/");
  if (slash < 0) return Number(text);
  const num = Number(text.slice(0, slash));
  const den = Number(text.slice(slash + 1));
  return num / den;
}

/** The vertex a move code targets, or null for a pass. */
export function vertexOfCode(code: string): number | null {
  if (code.endsWith("--")) return null;
  return Number(code.slice(2));
}

export function isPassCode(code: string): boolean {
  return code.endsWith("--");
}

/** Find the legal move code that claims `vertex`, if any. */
export function codeForVertex(legal: string[], vertex: number): string | null {
  for (const code of legal) {
    if (vertexOfCode(code) === vertex) return code;
  }
  return null;
}

export function passCode(legal: string[]): string | null {
  return legal.find(isPassCode) ?? null;
}

export class Client {
  constructor(public baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await resp.text();
    const data = text ? JSON.parse(text) : null;
    if (!resp.ok) {
      throw new ServerError(resp.status, data?.detail ?? data);
    }
    return data as T;
  }

  createGame(opts: NewGameOptions): Promise<GameResponse> {
    return this.request("POST", "/games", opts);
  }

  getGame(id: string): Promise<GameResponse> {
    return this.request("GET", `/games/${id}`);
  }

  submitMove(id: string, move: string): Promise<MoveResponse> {
    return this.request("POST", `/games/${id}/moves`, { move });
  }

  hint(id: string): Promise<HintResponse> {
    return this.request("GET", `/games/${id}/hint`);
  }

  analysis(id: string): Promise<AnalysisResponse> {
    return this.request("GET", `/games/${id}/analysis`);
  }
}
