"""Exact game values and optimal strategies.

Two independent backends compute the same minimax value (Bob maximizes,
Alice minimizes, the objective is final w(Bob) - w(Alice)):

* ``general``: memoized search over (claimed bitset, heads, mover); works
  on any graph up to 22 vertices.
* ``treepath``: tree-only encoding. In a tree each player's claimed set is
  the geodesic between its start and head, so a state is just four vertex
  endpoints plus the mover; scales to 120 vertices.

All arithmetic runs on integer-scaled weights (weights times their common
denominator), so values are exact; results are returned as ``Fraction``.
Forced passes are value-neutral and handled implicitly in the recursion;
the engine-level principal variation re-inserts them explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .engine import (
    GameState,
    Move,
    Phase,
    Player,
    apply_move,
    initial_state,
    outcome,
)
from .graphs import Instance

__all__ = [
    "GENERAL",
    "TREEPATH",
    "GENERAL_MAX_VERTICES",
    "TREEPATH_MAX_VERTICES",
    "SolverBudgetError",
    "SolveRecord",
    "ValueReport",
    "CrossCheck",
    "solve_from",
    "game_value",
    "best_move",
    "cross_check",
]

GENERAL = "general"
TREEPATH = "treepath"
GENERAL_MAX_VERTICES = 22
TREEPATH_MAX_VERTICES = 120


class SolverBudgetError(ValueError):
    """Instance outside the configured state budget of the chosen backend."""


@dataclass(frozen=True)
class SolveRecord:
    """Optimal play from one Alice start: exact value and the realized line."""

    start: int
    value: Fraction
    bob_reply: Optional[int]
    alice_claimed: frozenset[int]
    bob_claimed: frozenset[int]
    principal_variation: tuple[Move, ...]


@dataclass(frozen=True)
class ValueReport:
    delta: Fraction
    per_start: tuple[SolveRecord, ...]
    optimal_starts: frozenset[int]
    backend: str


@dataclass(frozen=True)
class CrossCheck:
    ok: bool
    first_mismatch: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


# --------------------------------------------------------------------------
# Backend cores. Both expose the same surface over integer-scaled weights:
#   start_value(u, tie_high)      -> (scaled value, Bob's reply vertex)
#   running_future(state)         -> scaled future differential
#   choose(state, tie_high)       -> best Move for the player to move


class _TreePathCore:
    def __init__(self, n: int, adj, dist: list[list[int]], wi: Sequence[int]):
        self.n = n
        self.adj = adj
        self.D = dist
        self.wi = tuple(wi)
        self.memo: dict[int, int] = {}

    def _future(self, a_s: int, a_h: int, b_s: int, b_h: int, bob_moves: int) -> int:
        n = self.n
        key = (((a_s * n + a_h) * n + b_s) * n + b_h) * 2 + bob_moves
        memo = self.memo
        val = memo.get(key)
        if val is not None:
            return val
        D = self.D
        da, dah = D[a_s], D[a_h]
        db, dbh = D[b_s], D[b_h]
        la = da[a_h]
        lb = db[b_h]
        wi = self.wi
        best = None
        if bob_moves:
            for v in self.adj[b_h]:
                if da[v] + dah[v] == la or db[v] + dbh[v] == lb:
                    continue
                cand = wi[v] + self._future(a_s, a_h, b_s, v, 0)
                if best is None or cand > best:
                    best = cand
            if best is None:
                # Bob is stuck; Alice continues alone if she can.
                for v in self.adj[a_h]:
                    if not (da[v] + dah[v] == la or db[v] + dbh[v] == lb):
                        best = self._future(a_s, a_h, b_s, b_h, 0)
                        break
                else:
                    best = 0
        else:
            for v in self.adj[a_h]:
                if da[v] + dah[v] == la or db[v] + dbh[v] == lb:
                    continue
                cand = -wi[v] + self._future(a_s, v, b_s, b_h, 1)
                if best is None or cand < best:
                    best = cand
            if best is None:
                for v in self.adj[b_h]:
                    if not (da[v] + dah[v] == la or db[v] + dbh[v] == lb):
                        best = self._future(a_s, a_h, b_s, b_h, 1)
                        break
                else:
                    best = 0
        memo[key] = best
        return best

    def _is_claimed(self, a_s, a_h, b_s, b_h, v) -> bool:
        D = self.D
        return (
            D[a_s][v] + D[a_h][v] == D[a_s][a_h]
            or D[b_s][v] + D[b_h][v] == D[b_s][b_h]
        )

    def _ends(self, s: GameState) -> tuple[int, int, int, int]:
        ap, bp = s.alice_path, s.bob_path
        return ap[0], ap[-1], bp[0], bp[-1]

    def start_value(self, u: int, tie_high: bool) -> tuple[int, Optional[int]]:
        wi = self.wi
        if self.n == 1:
            return -wi[u], None
        best = None
        reply = None
        for v in range(self.n):
            if v == u:
                continue
            cand = wi[v] + self._future(u, u, v, v, 0)
            if best is None or cand > best or (tie_high and cand == best):
                best, reply = cand, v
        return -wi[u] + best, reply

    def running_future(self, s: GameState) -> int:
        a_s, a_h, b_s, b_h = self._ends(s)
        return self._future(a_s, a_h, b_s, b_h, 1 if s.turn is Player.BOB else 0)

    def choose(self, s: GameState, tie_high: bool) -> Move:
        wi = self.wi
        if s.phase is Phase.AWAIT_BOB_PLACEMENT:
            u = s.alice_path[0]
            best = None
            pick = None
            for v in range(self.n):
                if v == u:
                    continue
                cand = wi[v] + self._future(u, u, v, v, 0)
                if best is None or cand > best or (tie_high and cand == best):
                    best, pick = cand, v
            if pick is None:
                return Move.pass_()
            return Move.place(Player.BOB, pick)
        if not s.bob_path:
            return _solo_move(s)
        a_s, a_h, b_s, b_h = self._ends(s)
        mover = s.turn
        best = None
        pick = None
        if mover is Player.BOB:
            for v in self.adj[b_h]:
                if self._is_claimed(a_s, a_h, b_s, b_h, v):
                    continue
                cand = wi[v] + self._future(a_s, a_h, b_s, v, 0)
                if best is None or cand > best or (tie_high and cand == best):
                    best, pick = cand, v
        else:
            for v in self.adj[a_h]:
                if self._is_claimed(a_s, a_h, b_s, b_h, v):
                    continue
                cand = -wi[v] + self._future(a_s, v, b_s, b_h, 1)
                if best is None or cand < best or (tie_high and cand == best):
                    best, pick = cand, v
        if pick is None:
            return Move.pass_()
        return Move.extend(mover, pick)


class _GeneralCore:
    def __init__(self, n: int, adj, wi: Sequence[int]):
        self.n = n
        self.adj = adj
        self.wi = tuple(wi)
        self.memo: dict[int, int] = {}

    def _future(self, mask: int, a_h: int, b_h: int, bob_moves: int) -> int:
        n = self.n
        key = ((mask * n + a_h) * n + b_h) * 2 + bob_moves
        memo = self.memo
        val = memo.get(key)
        if val is not None:
            return val
        wi = self.wi
        best = None
        if bob_moves:
            for v in self.adj[b_h]:
                bit = 1 << v
                if mask & bit:
                    continue
                cand = wi[v] + self._future(mask | bit, a_h, v, 0)
                if best is None or cand > best:
                    best = cand
            if best is None:
                for v in self.adj[a_h]:
                    if not mask & (1 << v):
                        best = self._future(mask, a_h, b_h, 0)
                        break
                else:
                    best = 0
        else:
            for v in self.adj[a_h]:
                bit = 1 << v
                if mask & bit:
                    continue
                cand = -wi[v] + self._future(mask | bit, v, b_h, 1)
                if best is None or cand < best:
                    best = cand
            if best is None:
                for v in self.adj[b_h]:
                    if not mask & (1 << v):
                        best = self._future(mask, a_h, b_h, 1)
                        break
                else:
                    best = 0
        memo[key] = best
        return best

    def _mask_of(self, s: GameState) -> int:
        mask = 0
        for v in s.alice_path:
            mask |= 1 << v
        for v in s.bob_path:
            mask |= 1 << v
        return mask

    def start_value(self, u: int, tie_high: bool) -> tuple[int, Optional[int]]:
        wi = self.wi
        if self.n == 1:
            return -wi[u], None
        best = None
        reply = None
        ubit = 1 << u
        for v in range(self.n):
            if v == u:
                continue
            cand = wi[v] + self._future(ubit | (1 << v), u, v, 0)
            if best is None or cand > best or (tie_high and cand == best):
                best, reply = cand, v
        return -wi[u] + best, reply

    def running_future(self, s: GameState) -> int:
        mask = self._mask_of(s)
        return self._future(
            mask, s.alice_path[-1], s.bob_path[-1], 1 if s.turn is Player.BOB else 0
        )

    def choose(self, s: GameState, tie_high: bool) -> Move:
        wi = self.wi
        if s.phase is Phase.AWAIT_BOB_PLACEMENT:
            u = s.alice_path[0]
            best = None
            pick = None
            for v in range(self.n):
                if v == u:
                    continue
                cand = wi[v] + self._future((1 << u) | (1 << v), u, v, 0)
                if best is None or cand > best or (tie_high and cand == best):
                    best, pick = cand, v
            if pick is None:
                return Move.pass_()
            return Move.place(Player.BOB, pick)
        if not s.bob_path:
            return _solo_move(s)
        mask = self._mask_of(s)
        a_h, b_h = s.alice_path[-1], s.bob_path[-1]
        mover = s.turn
        best = None
        pick = None
        if mover is Player.BOB:
            for v in self.adj[b_h]:
                bit = 1 << v
                if mask & bit:
                    continue
                cand = wi[v] + self._future(mask | bit, a_h, v, 0)
                if best is None or cand > best or (tie_high and cand == best):
                    best, pick = cand, v
        else:
            for v in self.adj[a_h]:
                bit = 1 << v
                if mask & bit:
                    continue
                cand = -wi[v] + self._future(mask | bit, v, b_h, 1)
                if best is None or cand < best or (tie_high and cand == best):
                    best, pick = cand, v
        if pick is None:
            return Move.pass_()
        return Move.extend(mover, pick)


def _solo_move(s: GameState) -> Move:
    # Bob never placed, which only happens on a single-vertex board: the
    # lone claimed vertex has no free neighbor, so Alice can only pass.
    head = s.alice_path[-1]
    claimed = set(s.alice_path)
    free = [v for v in s.instance.graph.adj[head] if v not in claimed]
    if free:
        raise ValueError("unreachable solo state with available extensions")
    return Move.pass_()


# --------------------------------------------------------------------------
# Public layer


def resolve_backend(inst: Instance, backend: Optional[str]) -> str:
    if backend is None:
        return TREEPATH if inst.graph.is_tree else GENERAL
    if backend not in (GENERAL, TREEPATH):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def _build_core(inst: Instance, backend: str):
    g = inst.graph
    wi, _ = inst.scaled_weights()
    if backend == TREEPATH:
        if not g.is_tree:
            raise SolverBudgetError("treepath backend requires a tree instance")
        if g.n > TREEPATH_MAX_VERTICES:
            raise SolverBudgetError(
                f"treepath backend refuses n={g.n} > {TREEPATH_MAX_VERTICES}"
            )
        return _TreePathCore(g.n, g.adj, g.dist_matrix(), wi)
    if g.n > GENERAL_MAX_VERTICES:
        raise SolverBudgetError(
            f"general backend refuses n={g.n} > {GENERAL_MAX_VERTICES}"
        )
    return _GeneralCore(g.n, g.adj, wi)


_CORE_CACHE: dict[tuple[str, str], object] = {}
_CORE_CACHE_MAX = 128


def _core_for(inst: Instance, backend: str):
    key = (inst.digest(), backend)
    core = _CORE_CACHE.get(key)
    if core is None:
        core = _build_core(inst, backend)
        if len(_CORE_CACHE) >= _CORE_CACHE_MAX:
            _CORE_CACHE.pop(next(iter(_CORE_CACHE)))
        _CORE_CACHE[key] = core
    return core


def _principal_variation(core, inst: Instance, u: int, tie_high: bool):
    moves = [Move.place(Player.ALICE, u)]
    s = apply_move(initial_state(inst), moves[0])
    while s.phase is not Phase.FINISHED:
        m = core.choose(s, tie_high)
        moves.append(m)
        s = apply_move(s, m)
    return tuple(moves), s


def solve_from(
    inst: Instance,
    u: int,
    backend: Optional[str] = None,
    tie_break: str = "low",
) -> SolveRecord:
    """Exact value and optimal line when Alice must start at ``u``.

    ``tie_break`` picks among value-equal moves: ``"low"`` takes the
    smallest vertex index, ``"high"`` the largest. Values never depend
    on it.
    """
    inst.graph.check_vertex(u)
    backend = resolve_backend(inst, backend)
    tie_high = _tie_high(tie_break)
    core = _core_for(inst, backend)
    _, scale = inst.scaled_weights()
    value_scaled, reply = core.start_value(u, tie_high)
    pv, final = _principal_variation(core, inst, u, tie_high)
    value = Fraction(value_scaled, scale)
    realized = outcome(final)
    if realized.value != value:
        raise AssertionError(
            f"principal variation from {u} replays to {realized.value}, "
            f"solver value is {value}"
        )
    return SolveRecord(
        start=u,
        value=value,
        bob_reply=reply,
        alice_claimed=frozenset(final.alice_path),
        bob_claimed=frozenset(final.bob_path),
        principal_variation=pv,
    )


def _tie_high(tie_break: str) -> bool:
    if tie_break not in ("low", "high"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    return tie_break == "high"


def game_value(
    inst: Instance,
    backend: Optional[str] = None,
    tie_break: str = "low",
) -> ValueReport:
    """Per-start records for every vertex plus the instance value (their minimum)."""
    backend = resolve_backend(inst, backend)
    records = tuple(
        solve_from(inst, u, backend=backend, tie_break=tie_break)
        for u in range(inst.n)
    )
    delta = min(r.value for r in records)
    optimal = frozenset(r.start for r in records if r.value == delta)
    return ValueReport(
        delta=delta, per_start=records, optimal_starts=optimal, backend=backend
    )


def best_move(
    s: GameState, backend: Optional[str] = None, tie_break: str = "low"
) -> tuple[Move, Fraction]:
    """Optimal move for the player to move plus the exact value of the state.

    The value is the final w(Bob) - w(Alice) under optimal play from here,
    including weights already claimed.
    """
    if s.phase is Phase.FINISHED:
        raise ValueError("finished game has no moves")
    inst = s.instance
    backend = resolve_backend(inst, backend)
    tie_high = _tie_high(tie_break)
    core = _core_for(inst, backend)
    _, scale = inst.scaled_weights()

    if s.phase is Phase.AWAIT_ALICE_PLACEMENT:
        best_val = None
        pick = None
        for u in range(inst.n):
            val, _ = core.start_value(u, tie_high)
            if best_val is None or val < best_val or (tie_high and val == best_val):
                best_val, pick = val, u
        return Move.place(Player.ALICE, pick), Fraction(best_val, scale)

    wi, _ = inst.scaled_weights()
    current = sum(wi[v] for v in s.bob_path) - sum(wi[v] for v in s.alice_path)
    move = core.choose(s, tie_high)
    nxt = apply_move(s, move)
    if nxt.phase is Phase.FINISHED:
        future = 0
        gain = _move_gain(wi, move)
    elif not nxt.bob_path:
        future = 0  # single-vertex board: Bob never places
        gain = _move_gain(wi, move)
    else:
        future = core.running_future(nxt)
        gain = _move_gain(wi, move)
    return move, Fraction(current + gain + future, scale)


def _move_gain(wi, move: Move) -> int:
    from .engine import MoveKind

    if move.kind in (MoveKind.PLACE_BOB, MoveKind.EXTEND_BOB):
        return wi[move.vertex]
    if move.kind in (MoveKind.PLACE_ALICE, MoveKind.EXTEND_ALICE):
        return -wi[move.vertex]
    return 0


def cross_check(inst: Instance, tie_break: str = "low") -> CrossCheck:
    """True iff the two backends agree on every per-start value and on delta."""
    if not inst.graph.is_tree:
        raise ValueError("cross_check requires a tree (both backends must apply)")
    general = game_value(inst, backend=GENERAL, tie_break=tie_break)
    treepath = game_value(inst, backend=TREEPATH, tie_break=tie_break)
    for rg, rt in zip(general.per_start, treepath.per_start):
        if rg.value != rt.value:
            return CrossCheck(ok=False, first_mismatch=rg.start)
    if general.delta != treepath.delta:
        return CrossCheck(ok=False, first_mismatch=min(general.optimal_starts))
    return CrossCheck(ok=True)
