// Session view model. Holds the authoritative server state plus the
// transient UI bits (optimistic click, hint, heatmap, banner) and keeps
// every legality decision on the server side: a vertex is clickable iff
// the server listed a move code for it.

import {
  AnalysisResponse,
  Client,
  GameResponse,
  HintResponse,
  NewGameOptions,
  ServerError,
  ServerState,
  codeForVertex,
  fractionToNumber,
  isPassCode,
  passCode,
  vertexOfCode,
} from "./protocol.js";

export interface Banner {
  value: string;
  valueDecimal: number;
  aliceWeight: string;
  bobWeight: string;
}

export interface StoreState {
  gameId: string | null;
  server: ServerState | null;
  legalMoves: string[];
  humanSide: "alice" | "bob";
  enginePolicy: string;
  optimisticVertex: number | null;
  lastEngineMoves: string[];
  hint: HintResponse | null;
  hintEnabled: boolean;
  heatmap: Map<number, number> | null; // vertex -> per-start value (decimal)
  perStart: Map<number, string> | null; // vertex -> exact value text
  banner: Banner | null;
  error: string | null;
  busy: boolean;
}

type Listener = (s: StoreState) => void;

export class SessionStore {
  private state: StoreState = {
    gameId: null,
    server: null,
    legalMoves: [],
    humanSide: "alice",
    enginePolicy: "optimal",
    optimisticVertex: null,
    lastEngineMoves: [],
    hint: null,
    hintEnabled: false,
    heatmap: null,
    perStart: null,
    banner: null,
    error: null,
    busy: false,
  };
  private listeners: Listener[] = [];

  constructor(private client: Client) {}

  get snapshot(): StoreState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<StoreState>): void {
    this.state = { ...this.state, ...patch };
    for (const l of this.listeners) l(this.state);
  }

  private absorb(state: ServerState, legal: string[], outcome: GameResponse["outcome"]): void {
    this.update({
      server: state,
      legalMoves: legal,
      optimisticVertex: null,
      banner: outcome
        ? {
            value: outcome.value,
            valueDecimal: outcome.value_decimal,
            aliceWeight: outcome.alice_weight,
            bobWeight: outcome.bob_weight,
          }
        : null,
    });
  }

  async newGame(opts: NewGameOptions): Promise<void> {
    this.update({ busy: true, error: null, hint: null, heatmap: null, perStart: null });
    try {
      const game = await this.client.createGame(opts);
      this.update({
        gameId: game.id,
        humanSide: opts.human_side,
        enginePolicy: opts.engine_policy,
        lastEngineMoves: game.engine_moves ?? [],
      });
      this.absorb(game.state, game.legal_moves, game.outcome);
      if (this.state.hintEnabled) await this.refreshHint();
    } catch (err) {
      this.update({ error: describe(err) });
      throw err;
    } finally {
      this.update({ busy: false });
    }
  }

  get isHumanTurn(): boolean {
    const s = this.state.server;
    return !!s && !s.finished && s.turn === this.state.humanSide;
  }

  /** The move code a click on `vertex` would submit, or null if not clickable. */
  clickTarget(vertex: number): string | null {
    if (!this.isHumanTurn || this.state.busy) return null;
    return codeForVertex(this.state.legalMoves, vertex);
  }

  /** Pass is offered only when it is the single legal move. */
  get mustPass(): boolean {
    return (
      this.isHumanTurn &&
      this.state.legalMoves.length === 1 &&
      isPassCode(this.state.legalMoves[0])
    );
  }

  async clickVertex(vertex: number): Promise<boolean> {
    const code = this.clickTarget(vertex);
    if (code === null) return false; // illegal clicks never leave the client
    return this.submit(code, vertex);
  }

  async submitPass(): Promise<boolean> {
    const code = this.state.gameId ? passCode(this.state.legalMoves) : null;
    if (!this.mustPass || code === null) return false;
    return this.submit(code, null);
  }

  private async submit(code: string, vertex: number | null): Promise<boolean> {
    const before = this.state;
    this.update({ optimisticVertex: vertex, busy: true, error: null });
    try {
      const reply = await this.client.submitMove(this.state.gameId!, code);
      this.update({ lastEngineMoves: reply.engine_moves, hint: null });
      this.absorb(reply.state, reply.legal_moves, reply.outcome);
      if (this.state.hintEnabled && this.isHumanTurn) await this.refreshHint();
      return true;
    } catch (err) {
      // authoritative rollback: the server rejected the move
      this.state = {
        ...before,
        optimisticVertex: null,
        busy: false,
        error: describe(err),
      };
      for (const l of this.listeners) l(this.state);
      return false;
    } finally {
      if (this.state.busy) this.update({ busy: false });
    }
  }

  async setHintEnabled(enabled: boolean): Promise<void> {
    this.update({ hintEnabled: enabled });
    if (!enabled) {
      this.update({ hint: null, heatmap: null });
      return;
    }
    await this.refreshHint();
  }

  async refreshHint(): Promise<void> {
    if (!this.state.gameId || !this.isHumanTurn) return;
    try {
      const hint = await this.client.hint(this.state.gameId);
      this.update({ hint });
      const placing = this.state.server && this.state.server.phase.startsWith("await");
      if (placing && !this.state.heatmap) await this.loadHeatmap();
    } catch (err) {
      this.update({ hint: null, error: describe(err) });
    }
  }

  async loadHeatmap(): Promise<void> {
    if (!this.state.gameId) return;
    const analysis: AnalysisResponse = await this.client.analysis(this.state.gameId);
    const heat = new Map<number, number>();
    const exact = new Map<number, string>();
    for (const [vertex, entry] of Object.entries(analysis.per_start)) {
      heat.set(Number(vertex), entry.decimal);
      exact.set(Number(vertex), entry.value);
    }
    this.update({ heatmap: heat, perStart: exact });
  }

  get hintVertex(): number | null {
    const h = this.state.hint;
    return h ? vertexOfCode(h.move) : null;
  }

  /** Weight of a vertex as a number, for glyph sizing. */
  weightOf(vertex: number): number {
    const s = this.state.server;
    if (!s) return 0;
    return fractionToNumber(s.weights[vertex]);
  }
}

function describe(err: unknown): string {
  if (err instanceof ServerError) {
    const d = err.detail as { error?: string } | string;
    if (typeof d === "object" && d && "error" in d) return String(d.error);
    return String(err.message);
  }
  return err instanceof Error ? err.message : String(err);
}
