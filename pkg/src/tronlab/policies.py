"""Executable strategies and a policy-vs-policy simulator.

The central family is Alice's *avoid-Bob* strategy: place at ``u``, walk
the unique tree path to ``v``, then follow a heaviest path from ``v`` that
stays clear of the subtrees of T - v holding ``u`` and Bob's start. It is
applicable when dist(u, v) <= dist(B(u), v), i.e. Alice reaches ``v``
first. Bob's counterpart for uniform weights is the longest-path
heuristic: answer next to Alice's start inside the longer half of a
longest path through it, then keep extending toward the longest available
continuation.

Policies are deterministic functions of the visible game state, so one
policy object can be queried from any position without hidden bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .engine import (
    GameState,
    Move,
    Outcome,
    Phase,
    Player,
    apply_move,
    initial_state,
    legal_moves,
    move_code,
    outcome,
)
from .graphs import Instance, heaviest_path_from
from .solver import best_move

__all__ = [
    "Policy",
    "Transcript",
    "SimulationError",
    "AvoidBobPolicy",
    "LongestPathBobPolicy",
    "OptimalPolicy",
    "avoid_bob",
    "applicable",
    "longest_path_bob",
    "optimal_policy",
    "simulate",
]


class Policy:
    """A deterministic move chooser for one side of the game."""

    name = "policy"

    def choose(self, s: GameState) -> Move:
        raise NotImplementedError


@dataclass(frozen=True)
class Transcript:
    moves: tuple[Move, ...]
    codes: tuple[str, ...]
    final: Outcome

    def text(self) -> str:
        return "\n".join(self.codes) + ("\n" if self.codes else "")


class SimulationError(RuntimeError):
    """A policy produced an illegal move; carries the partial transcript."""

    def __init__(self, message: str, codes: tuple[str, ...]):
        super().__init__(message)
        self.codes = codes


def applicable(inst: Instance, u: int, v: int, replies: dict[int, int]) -> bool:
    """Alice reaches v no later than Bob's reply to u can: dist(u,v) <= dist(B(u),v)."""
    return inst.graph.dist(u, v) <= inst.graph.dist(replies[u], v)


def _greedy_extension(s: GameState, mover: Player) -> Move:
    """Heaviest available continuation from the mover's head, else pass."""
    head = s.head_of(mover)
    claimed = s.claimed
    free = [v for v in s.instance.graph.adj[head] if v not in claimed]
    if not free:
        return Move.pass_()
    cont = heaviest_path_from(s.instance, head, claimed - {head})
    if len(cont) > 1:
        return Move.extend(mover, cont.vertices[1])
    return Move.extend(mover, free[0])


class AvoidBobPolicy(Policy):
    """Alice: place at ``u``, walk to ``v``, then avoid Bob's territory.

    By default the avoided subtree is the one holding Bob's *actual* first
    vertex, which matches the nominal definition whenever Bob answers with
    his optimal reply; ``literal_reply`` pins the avoidance to B(u) from
    the reply table instead. When the plan is blocked the policy falls
    back to greedy heaviest extensions.
    """

    def __init__(
        self,
        inst: Instance,
        u: int,
        v: int,
        replies: Optional[dict[int, int]] = None,
        literal_reply: bool = False,
    ):
        if not inst.graph.is_tree:
            raise ValueError("avoid-Bob strategies are defined on trees")
        inst.graph.check_vertex(u)
        inst.graph.check_vertex(v)
        if literal_reply and replies is None:
            raise ValueError("literal_reply needs a reply table")
        self.inst = inst
        self.u = u
        self.v = v
        self.replies = replies
        self.literal_reply = literal_reply
        self.walk = inst.graph.path_between(u, v).vertices
        self.name = f"avoidbob(u={u},v={v})"

    def _plan(self, s: GameState) -> tuple[int, ...]:
        g = self.inst.graph
        if self.literal_reply:
            anchor = self.replies[self.u]
        else:
            anchor = s.bob_path[0] if s.bob_path else None
        forbidden: set[int] = set()
        if self.u != self.v:
            forbidden |= g.reachable_from(self.u, frozenset((self.v,)))
        if anchor is not None and anchor != self.v and anchor not in forbidden:
            forbidden |= g.reachable_from(anchor, frozenset((self.v,)))
        forbidden.discard(self.v)
        cont = heaviest_path_from(self.inst, self.v, forbidden)
        return self.walk + cont.vertices[1:]

    def choose(self, s: GameState) -> Move:
        if s.phase is Phase.AWAIT_ALICE_PLACEMENT:
            return Move.place(Player.ALICE, self.u)
        if s.turn is not Player.ALICE:
            raise ValueError("avoid-Bob policy plays Alice")
        plan = self._plan(s)
        progress = len(s.alice_path)
        if plan[:progress] == s.alice_path and progress < len(plan):
            nxt = plan[progress]
            if nxt not in s.claimed:
                return Move.extend(Player.ALICE, nxt)
        return _greedy_extension(s, Player.ALICE)

    def planned_path(self, bob_start: Optional[int]) -> tuple[int, ...]:
        """The full path the policy intends to claim given Bob's start."""
        fake = initial_state(self.inst)
        fake = apply_move(fake, Move.place(Player.ALICE, self.u))
        if bob_start is not None:
            fake = apply_move(fake, Move.place(Player.BOB, bob_start))
        return self._plan(fake)


class LongestPathBobPolicy(Policy):
    """Bob's heuristic for uniform weights: shadow the longer half.

    Placement: over all neighbors of Alice's start, take the one whose
    branch supports the deepest chain (a longest path through the start
    runs down the two deepest branches; the deeper one is the longer
    half). Extension: move toward the longest available continuation.
    Ties go to the smaller vertex index. Runs on weighted instances too,
    but its guarantee is only about claimed-vertex counts.
    """

    name = "longestpath"

    def _chain_depth(self, inst: Instance, start: int, blocked: frozenset) -> int:
        g = inst.graph
        best = 0

        def deepen(v: int, seen: set[int], depth: int) -> None:
            nonlocal best
            best = max(best, depth)
            for w in g.adj[v]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    deepen(w, seen, depth + 1)
                    seen.discard(w)

        deepen(start, {start}, 1)
        return best

    def choose(self, s: GameState) -> Move:
        inst = s.instance
        if s.phase is Phase.AWAIT_ALICE_PLACEMENT:
            raise ValueError("longest-path policy plays Bob")
        if s.phase is Phase.AWAIT_BOB_PLACEMENT:
            u = s.alice_path[0]
            free = [v for v in range(inst.n) if v not in s.claimed]
            if not free:
                return Move.pass_()
            best_v, best_depth = None, -1
            for v in inst.graph.adj[u]:
                depth = self._chain_depth(inst, v, frozenset((u,)))
                if depth > best_depth:
                    best_v, best_depth = v, depth
            if best_v is None:  # isolated start cannot happen in a tree n>1
                best_v = free[0]
            return Move.place(Player.BOB, best_v)
        if s.turn is not Player.BOB:
            raise ValueError("longest-path policy plays Bob")
        head = s.head_of(Player.BOB)
        claimed = frozenset(s.claimed)
        best_v, best_depth = None, -1
        for v in inst.graph.adj[head]:
            if v in claimed:
                continue
            depth = self._chain_depth(inst, v, claimed)
            if depth > best_depth:
                best_v, best_depth = v, depth
        if best_v is None:
            return Move.pass_()
        return Move.extend(Player.BOB, best_v)


class OptimalPolicy(Policy):
    """Plays exact minimax moves for whichever side is to move."""

    def __init__(self, side: Optional[Player] = None, backend: Optional[str] = None):
        self.side = side
        self.backend = backend
        self.name = f"optimal({side.value})" if side else "optimal"

    def choose(self, s: GameState) -> Move:
        if self.side is not None and s.turn is not self.side:
            raise ValueError(f"{self.name} asked to move for {s.turn.value}")
        move, _ = best_move(s, backend=self.backend)
        return move


def avoid_bob(
    inst: Instance,
    u: int,
    v: Optional[int] = None,
    replies: Optional[dict[int, int]] = None,
    literal_reply: bool = False,
) -> AvoidBobPolicy:
    return AvoidBobPolicy(
        inst, u, u if v is None else v, replies=replies, literal_reply=literal_reply
    )


def longest_path_bob(inst: Instance) -> LongestPathBobPolicy:
    if not inst.graph.is_tree:
        raise ValueError("the longest-path heuristic is defined on trees")
    return LongestPathBobPolicy()


def optimal_policy(side: Optional[Player] = None, backend: Optional[str] = None) -> OptimalPolicy:
    return OptimalPolicy(side=side, backend=backend)


def simulate(inst: Instance, alice: Policy, bob: Policy) -> Transcript:
    """Deterministic playout of two policies through the engine."""
    s = initial_state(inst)
    moves: list[Move] = []
    codes: list[str] = []
    while not s.finished:
        policy = alice if s.turn is Player.ALICE else bob
        m = policy.choose(s)
        code = move_code(s.turn, m)
        try:
            s = apply_move(s, m)
        except Exception as exc:
            raise SimulationError(
                f"{policy.name} proposed illegal {code}: {exc}", tuple(codes)
            ) from exc
        moves.append(m)
        codes.append(code)
    return Transcript(moves=tuple(moves), codes=tuple(codes), final=outcome(s))
