"""Game server for interactive play against the engine.

JSON over HTTP; all rationals travel as "p/q" strings with a decimal
convenience field, moves travel as transcript codes ("A+3", "B>2", "A--").
Sessions live in memory; requests within one session are serialized by a
per-session lock, and solver work is cached per instance digest so
repeated sessions on the same board are instant.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .certificates import CertificateReport, certify
from .decomposition import Decomposition, decompose
from .engine import (
    GameState,
    IllegalMoveError,
    Move,
    Phase,
    Player,
    apply_move,
    initial_state,
    legal_moves,
    move_code,
    outcome,
    parse_move_code,
)
from .graphs import Instance, TronParseError, parse_instance, serialize_instance
from .lab import GeneratorConfig, generate
from .policies import avoid_bob, longest_path_bob, optimal_policy
from .solver import (
    GENERAL_MAX_VERTICES,
    TREEPATH_MAX_VERTICES,
    ValueReport,
    best_move,
    game_value,
)

__all__ = ["create_app"]

ENGINE_POLICIES = ("optimal", "avoidbob", "longestpath")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _decimal(x: Fraction) -> float:
    return x.numerator / x.denominator


class CreateGameRequest(BaseModel):
    instance: Optional[str] = None
    generator: Optional[dict] = None
    human_side: str = "alice"
    engine_policy: str = "optimal"
    normalize: bool = False


class MoveRequest(BaseModel):
    move: str


@dataclass
class Analysis:
    report: ValueReport
    decomposition: Optional[Decomposition]
    certificates: Optional[CertificateReport]


_ANALYSIS_CACHE: dict[str, Analysis] = {}
_ANALYSIS_LOCK = threading.Lock()


def _analysis_for(inst: Instance) -> Analysis:
    key = inst.digest()
    with _ANALYSIS_LOCK:
        cached = _ANALYSIS_CACHE.get(key)
    if cached is not None:
        return cached
    report = game_value(inst)
    dec = cert = None
    if inst.graph.is_tree and inst.n >= 2:
        dec = decompose(inst, report=report)
        cert = certify(inst, report=report, dec=dec)
    analysis = Analysis(report=report, decomposition=dec, certificates=cert)
    with _ANALYSIS_LOCK:
        if len(_ANALYSIS_CACHE) > 64:
            _ANALYSIS_CACHE.pop(next(iter(_ANALYSIS_CACHE)))
        _ANALYSIS_CACHE[key] = analysis
    return analysis


@dataclass
class Session:
    id: str
    state: GameState
    human_side: Player
    engine_policy_name: str
    policy: Any
    log: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    log_path: Optional[Any] = None

    def record(self, mover: Player, m: Move, by: str) -> str:
        code = move_code(mover, m)
        self.log.append({"move": code, "by": by, "ts": time.time()})
        if self.log_path is not None:
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(f"{code}\n")
        return code


def _within_budget(inst: Instance) -> bool:
    if inst.graph.is_tree:
        return inst.n <= TREEPATH_MAX_VERTICES
    return inst.n <= GENERAL_MAX_VERTICES


def _engine_policy(name: str, inst: Instance, engine_side: Player):
    """Resolve the requested engine style to a concrete policy.

    The avoid-Bob family plays Alice and the longest-path heuristic plays
    Bob; when the engine sits on the other side these fall back to optimal
    play rather than improvising an undefined strategy.
    """
    if name == "optimal":
        return optimal_policy(engine_side)
    if name == "longestpath":
        if engine_side is Player.BOB and inst.graph.is_tree:
            return longest_path_bob(inst)
        return optimal_policy(engine_side)
    if name == "avoidbob":
        if engine_side is Player.ALICE and inst.graph.is_tree and inst.n >= 2:
            return _auto_avoid_bob(inst)
        return optimal_policy(engine_side)
    raise ValueError(f"unknown engine policy {name!r}")


def _auto_avoid_bob(inst: Instance):
    """Pick the avoid-Bob strategy with the best guaranteed trade."""
    analysis = _analysis_for(inst)
    dec = analysis.decomposition
    cert = analysis.certificates
    a_l, a_r = dec.crossing
    candidates = [
        (cert.bound("anchor_left").rhs, a_l, a_l),
        (cert.bound("anchor_right").rhs, a_r, a_r),
    ]
    dash = cert.bound("dash_to_d")
    if dash.applicable:
        candidates.append((dash.rhs, a_r, dec.left.d))
    dash_dual = cert.bound("dash_to_d", "dual")
    if dash_dual.applicable:
        candidates.append((dash_dual.rhs, a_l, dec.right.d))
    rhs, u, v = min(candidates, key=lambda c: c[0])
    return avoid_bob(inst, u, v)


def _state_json(s: GameState) -> dict:
    inst = s.instance
    return {
        "phase": s.phase.value,
        "turn": s.turn.value,
        "alice_path": list(s.alice_path),
        "bob_path": list(s.bob_path),
        "alice_stuck": s.alice_stuck,
        "bob_stuck": s.bob_stuck,
        "n": inst.n,
        "edges": [list(e) for e in inst.graph.edges],
        "weights": [_frac(w) for w in inst.weights],
        "weights_decimal": [_decimal(w) for w in inst.weights],
        "is_tree": inst.graph.is_tree,
        "is_cycle": inst.graph.is_cycle,
        "finished": s.finished,
    }


def _outcome_json(s: GameState) -> Optional[dict]:
    if not s.finished:
        return None
    out = outcome(s)
    return {
        "value": _frac(out.value),
        "value_decimal": _decimal(out.value),
        "alice_weight": _frac(out.alice_weight),
        "bob_weight": _frac(out.bob_weight),
    }


def _legal_codes(s: GameState) -> list[str]:
    if s.finished:
        return []
    return [move_code(s.turn, m) for m in legal_moves(s)]


def create_app(log_dir: Optional[str] = None) -> FastAPI:
    """Build the app; ``log_dir`` enables append-only transcript files
    (one per session), replayable through the engine."""
    app = FastAPI(title="tronlab", version="0.1.0")
    # the browser UI is served statically from another port
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()

    def get_session(game_id: str) -> Session:
        with sessions_lock:
            session = sessions.get(game_id)
        if session is None:
            raise HTTPException(status_code=404, detail="no such game")
        return session

    def engine_turn(session: Session) -> list[str]:
        """Let the engine move until it is the human's turn or the end."""
        codes = []
        s = session.state
        while not s.finished and s.turn is not session.human_side:
            m = session.policy.choose(s)
            codes.append(session.record(s.turn, m, "engine"))
            s = apply_move(s, m)
        session.state = s
        return codes

    @app.post("/games")
    def create_game(req: CreateGameRequest):
        if (req.instance is None) == (req.generator is None):
            raise HTTPException(
                status_code=400, detail="provide exactly one of instance, generator"
            )
        try:
            if req.instance is not None:
                inst = parse_instance(req.instance, normalize=req.normalize)
            else:
                gen = dict(req.generator)
                mode = gen.get("weight_mode", "uniform")
                if isinstance(mode, list):
                    mode = tuple(mode)
                cfg = GeneratorConfig(
                    family=gen.get("family", "random"),
                    n=int(gen.get("n", 7)),
                    weight_mode=mode,
                    seed=int(gen.get("seed", 0)),
                )
                inst = next(generate(cfg, 1))
        except (TronParseError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            human = Player(req.human_side)
        except ValueError:
            raise HTTPException(status_code=400, detail="human_side must be alice or bob")
        if req.engine_policy not in ENGINE_POLICIES:
            raise HTTPException(
                status_code=400,
                detail=f"engine_policy must be one of {', '.join(ENGINE_POLICIES)}",
            )
        if req.engine_policy == "optimal" and not _within_budget(inst):
            raise HTTPException(
                status_code=400,
                detail=(
                    f"instance too large for the optimal engine "
                    f"(trees up to {TREEPATH_MAX_VERTICES}, other graphs up to "
                    f"{GENERAL_MAX_VERTICES} vertices)"
                ),
            )
        engine_side = human.opponent
        try:
            policy = _engine_policy(req.engine_policy, inst, engine_side)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = Session(
            id=secrets.token_hex(8),
            state=initial_state(inst),
            human_side=human,
            engine_policy_name=req.engine_policy,
            policy=policy,
        )
        if log_dir is not None:
            from pathlib import Path

            root = Path(log_dir)
            root.mkdir(parents=True, exist_ok=True)
            session.log_path = root / f"{session.id}.log"
        with session.lock:
            engine_codes = engine_turn(session)
        with sessions_lock:
            sessions[session.id] = session
        return {
            "id": session.id,
            "state": _state_json(session.state),
            "legal_moves": _legal_codes(session.state),
            "engine_moves": engine_codes,
            "engine_move": engine_codes[-1] if engine_codes else None,
            "human_side": human.value,
            "engine_policy": req.engine_policy,
            "outcome": _outcome_json(session.state),
        }

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        session = get_session(game_id)
        with session.lock:
            return {
                "id": session.id,
                "state": _state_json(session.state),
                "legal_moves": _legal_codes(session.state),
                "outcome": _outcome_json(session.state),
                "human_side": session.human_side.value,
                "engine_policy": session.engine_policy_name,
                "log": list(session.log),
            }

    @app.post("/games/{game_id}/moves")
    def submit_move(game_id: str, req: MoveRequest):
        session = get_session(game_id)
        with session.lock:
            s = session.state
            if s.finished:
                raise HTTPException(status_code=409, detail="game is finished")
            if s.turn is not session.human_side:
                raise HTTPException(status_code=409, detail="not your turn")
            try:
                player, action, vertex = parse_move_code(req.move)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            if player is not session.human_side:
                raise HTTPException(
                    status_code=409, detail="move code names the engine's side"
                )
            if action == "--":
                m = Move.pass_()
            elif action == "+":
                m = Move.place(player, vertex)
            else:
                m = Move.extend(player, vertex)
            try:
                nxt = apply_move(s, m)
            except IllegalMoveError as exc:
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": str(exc),
                        "legal_moves": _legal_codes(s),
                    },
                )
            session.record(s.turn, m, "human")
            session.state = nxt
            engine_codes = engine_turn(session)
            return {
                "state": _state_json(session.state),
                "legal_moves": _legal_codes(session.state),
                "engine_moves": engine_codes,
                "engine_move": engine_codes[-1] if engine_codes else None,
                "outcome": _outcome_json(session.state),
            }

    @app.get("/games/{game_id}/hint")
    def hint(game_id: str):
        session = get_session(game_id)
        with session.lock:
            s = session.state
            if s.finished:
                raise HTTPException(status_code=409, detail="game is finished")
            if s.turn is not session.human_side:
                raise HTTPException(status_code=409, detail="engine to move, no hint")
            if not _within_budget(s.instance):
                raise HTTPException(
                    status_code=400, detail="instance too large for exact hints"
                )
            move, value = best_move(s)
            payload = {
                "move": move_code(s.turn, move),
                "value": _frac(value),
                "value_decimal": _decimal(value),
            }
            if s.instance.graph.is_tree and s.instance.n >= 2:
                cert = _analysis_for(s.instance).certificates
                payload["active_bounds"] = [
                    {"name": b.name, "orientation": b.orientation, "rhs": _frac(b.rhs)}
                    for b in cert.bounds
                    if b.applicable and not b.diagnostic and b.rhs is not None
                ]
            return payload

    @app.get("/games/{game_id}/analysis")
    def analysis(game_id: str):
        session = get_session(game_id)
        with session.lock:
            inst = session.state.instance
            if not _within_budget(inst):
                raise HTTPException(
                    status_code=400, detail="instance too large for exact analysis"
                )
            data = _analysis_for(inst)
            payload: dict = {
                "per_start": {
                    str(rec.start): {
                        "value": _frac(rec.value),
                        "decimal": _decimal(rec.value),
                        "bob_reply": rec.bob_reply,
                    }
                    for rec in data.report.per_start
                },
                "delta": _frac(data.report.delta),
                "optimal_starts": sorted(data.report.optimal_starts),
            }
            if data.decomposition is not None:
                dec = data.decomposition
                payload["decomposition"] = {
                    "crossing_edge": list(dec.crossing),
                    "left_vertices": sorted(dec.left_vertices),
                    "right_vertices": sorted(dec.right_vertices),
                    "sides": {
                        label: {
                            "a": side.a,
                            "b": side.b,
                            "c": side.c,
                            "d": side.d,
                            "e": side.e,
                            "P": list(side.P.vertices),
                            "Q": list(side.Q.vertices),
                            "x": _frac(side.x),
                            "y": _frac(side.y),
                            "z": _frac(side.z),
                            "r": _frac(side.r),
                            "q": _frac(side.q),
                            "alpha": _frac(side.alpha),
                        }
                        for label, side in (("left", dec.left), ("right", dec.right))
                    },
                }
            if data.certificates is not None:
                payload["certificates"] = [
                    {
                        "name": b.name,
                        "orientation": b.orientation,
                        "applicable": b.applicable,
                        "rhs": None if b.rhs is None else _frac(b.rhs),
                        "verdict": b.verdict,
                    }
                    for b in data.certificates.bounds
                ]
            return payload

    return app
