"""Rules engine for the two-player path-claiming game.

Alice places first, then Bob, then both alternately extend their own path
by one unclaimed adjacent vertex. A player with no extension must pass
(explicit move, played exactly once) and is skipped afterwards; the game
ends when both players are stuck. The result is the exact weight of Bob's
path minus the weight of Alice's path.

States are immutable values; ``apply_move`` returns a new state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional

from .graphs import Instance

__all__ = [
    "Player",
    "Phase",
    "MoveKind",
    "Move",
    "GameState",
    "Outcome",
    "IllegalMoveError",
    "initial_state",
    "legal_moves",
    "apply_move",
    "outcome",
    "move_code",
    "parse_move_code",
    "format_transcript",
    "replay_transcript",
]


class Player(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def opponent(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE

    @property
    def letter(self) -> str:
        return "A" if self is Player.ALICE else "B"


class Phase(str, enum.Enum):
    AWAIT_ALICE_PLACEMENT = "await_alice_placement"
    AWAIT_BOB_PLACEMENT = "await_bob_placement"
    RUNNING = "running"
    FINISHED = "finished"


class MoveKind(str, enum.Enum):
    PLACE_ALICE = "place_alice"
    PLACE_BOB = "place_bob"
    EXTEND_ALICE = "extend_alice"
    EXTEND_BOB = "extend_bob"
    PASS = "pass"


_PLACE = {Player.ALICE: MoveKind.PLACE_ALICE, Player.BOB: MoveKind.PLACE_BOB}
_EXTEND = {Player.ALICE: MoveKind.EXTEND_ALICE, Player.BOB: MoveKind.EXTEND_BOB}
_MOVER = {
    MoveKind.PLACE_ALICE: Player.ALICE,
    MoveKind.EXTEND_ALICE: Player.ALICE,
    MoveKind.PLACE_BOB: Player.BOB,
    MoveKind.EXTEND_BOB: Player.BOB,
}


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    vertex: Optional[int] = None

    def __post_init__(self):
        if self.kind is MoveKind.PASS:
            if self.vertex is not None:
                raise ValueError("pass carries no vertex")
        elif self.vertex is None:
            raise ValueError(f"{self.kind.value} requires a vertex")

    @staticmethod
    def place(player: Player, vertex: int) -> "Move":
        return Move(_PLACE[player], vertex)

    @staticmethod
    def extend(player: Player, vertex: int) -> "Move":
        return Move(_EXTEND[player], vertex)

    @staticmethod
    def pass_() -> "Move":
        return Move(MoveKind.PASS)

    def __repr__(self) -> str:
        if self.kind is MoveKind.PASS:
            return "Move(pass)"
        return f"Move({self.kind.value} {self.vertex})"


class IllegalMoveError(ValueError):
    """Move rejected; the state is unchanged."""

    def __init__(self, message: str, legal: Optional[list] = None):
        super().__init__(message)
        self.legal = legal or []


@dataclass(frozen=True)
class Outcome:
    value: Fraction
    alice_weight: Fraction
    bob_weight: Fraction


@dataclass(frozen=True)
class GameState:
    instance: Instance
    alice_path: tuple[int, ...]
    bob_path: tuple[int, ...]
    turn: Player
    phase: Phase
    alice_stuck: bool
    bob_stuck: bool

    def path_of(self, player: Player) -> tuple[int, ...]:
        return self.alice_path if player is Player.ALICE else self.bob_path

    def head_of(self, player: Player) -> Optional[int]:
        path = self.path_of(player)
        return path[-1] if path else None

    def is_stuck(self, player: Player) -> bool:
        return self.alice_stuck if player is Player.ALICE else self.bob_stuck

    @property
    def claimed(self) -> frozenset[int]:
        return frozenset(self.alice_path) | frozenset(self.bob_path)

    @property
    def finished(self) -> bool:
        return self.phase is Phase.FINISHED


def initial_state(inst: Instance) -> GameState:
    return GameState(
        instance=inst,
        alice_path=(),
        bob_path=(),
        turn=Player.ALICE,
        phase=Phase.AWAIT_ALICE_PLACEMENT,
        alice_stuck=False,
        bob_stuck=False,
    )


def _extensions(s: GameState, player: Player) -> list[int]:
    head = s.head_of(player)
    if head is None:
        return []
    claimed = s.claimed
    return [v for v in s.instance.graph.adj[head] if v not in claimed]


def legal_moves(s: GameState) -> list[Move]:
    """All moves available to the player to move.

    Placement phases offer every unclaimed vertex; afterwards every
    unclaimed neighbor of the mover's head. When no such vertex exists the
    single legal move is an explicit pass. Moving is compulsory: a player
    with a legal extension may not pass voluntarily.
    """
    if s.phase is Phase.FINISHED:
        raise ValueError("no legal moves in a finished game")
    if s.phase is Phase.AWAIT_ALICE_PLACEMENT:
        return [Move.place(Player.ALICE, v) for v in range(s.instance.n)]
    if s.phase is Phase.AWAIT_BOB_PLACEMENT:
        free = [v for v in range(s.instance.n) if v not in s.claimed]
        if not free:
            return [Move.pass_()]
        return [Move.place(Player.BOB, v) for v in free]
    ext = _extensions(s, s.turn)
    if not ext:
        return [Move.pass_()]
    return [Move.extend(s.turn, v) for v in ext]


def _next_running_state(s: GameState, **changes) -> GameState:
    """Advance the turn, skipping a permanently stuck opponent."""
    s = replace(s, **changes)
    mover = s.turn
    nxt = mover.opponent
    if s.is_stuck(nxt):
        nxt = mover
    if s.is_stuck(nxt):
        return replace(s, phase=Phase.FINISHED)
    return replace(s, turn=nxt)


def apply_move(s: GameState, m: Move) -> GameState:
    """Apply a legal move, returning the successor state.

    Raises :class:`IllegalMoveError` (state unchanged) for wrong-turn,
    non-adjacent, or already-claimed moves.
    """
    if s.phase is Phase.FINISHED:
        raise IllegalMoveError("game is finished")
    legal = legal_moves(s)
    if m not in legal:
        raise IllegalMoveError(f"illegal move {m!r}", legal=legal)

    if m.kind is MoveKind.PLACE_ALICE:
        return replace(
            s,
            alice_path=(m.vertex,),
            turn=Player.BOB,
            phase=Phase.AWAIT_BOB_PLACEMENT,
        )
    if m.kind is MoveKind.PLACE_BOB:
        return replace(
            s,
            bob_path=(m.vertex,),
            turn=Player.ALICE,
            phase=Phase.RUNNING,
        )
    if m.kind is MoveKind.PASS:
        if s.phase is Phase.AWAIT_BOB_PLACEMENT:
            # No vertex left to place on (single-vertex board): Bob scores 0.
            return replace(s, bob_stuck=True, phase=Phase.RUNNING, turn=Player.ALICE)
        stuck_field = "alice_stuck" if s.turn is Player.ALICE else "bob_stuck"
        return _next_running_state(s, **{stuck_field: True})
    # extension
    mover = _MOVER[m.kind]
    path_field = "alice_path" if mover is Player.ALICE else "bob_path"
    new_path = s.path_of(mover) + (m.vertex,)
    return _next_running_state(s, **{path_field: new_path})


def outcome(s: GameState) -> Outcome:
    """Exact final score of a finished game: w(Bob) - w(Alice)."""
    if s.phase is not Phase.FINISHED:
        raise ValueError("outcome of an unfinished game")
    aw = s.instance.weight_of_set(s.alice_path)
    bw = s.instance.weight_of_set(s.bob_path)
    return Outcome(value=bw - aw, alice_weight=aw, bob_weight=bw)


# --------------------------------------------------------------------------
# Transcripts: "A+3" place, "A>4" extend, "A--"/"B--" pass, one per line.


def move_code(mover: Player, m: Move) -> str:
    if m.kind is MoveKind.PASS:
        return f"{mover.letter}--"
    symbol = "+" if m.kind in (MoveKind.PLACE_ALICE, MoveKind.PLACE_BOB) else ">"
    return f"{mover.letter}{symbol}{m.vertex}"


def parse_move_code(code: str) -> tuple[Player, str, Optional[int]]:
    """Split a code into (player, action, vertex); action is '+', '>' or '--'."""
    code = code.strip()
    if len(code) < 3 or code[0] not in "AB":
        raise ValueError(f"bad move code {code!r}")
    player = Player.ALICE if code[0] == "A" else Player.BOB
    if code[1:] == "--":
        return player, "--", None
    action = code[1]
    if action not in "+>":
        raise ValueError(f"bad move code {code!r}")
    try:
        vertex = int(code[2:])
    except ValueError:
        raise ValueError(f"bad move code {code!r}") from None
    return player, action, vertex


def _materialize(s: GameState, player: Player, action: str, vertex: Optional[int]) -> Move:
    if s.turn is not player:
        raise IllegalMoveError(f"it is not {player.value}'s turn")
    if action == "--":
        return Move.pass_()
    if action == "+":
        return Move.place(player, vertex)
    return Move.extend(player, vertex)


def format_transcript(inst: Instance, moves: Iterable[Move]) -> str:
    """Render a move sequence as transcript lines, validating it on the way."""
    s = initial_state(inst)
    lines = []
    for m in moves:
        lines.append(move_code(s.turn, m))
        s = apply_move(s, m)
    return "\n".join(lines) + ("\n" if lines else "")


def replay_transcript(inst: Instance, text: str) -> GameState:
    """Re-run a transcript, validating every move; returns the final state."""
    s = initial_state(inst)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            player, action, vertex = parse_move_code(body)
            m = _materialize(s, player, action, vertex)
            s = apply_move(s, m)
        except (ValueError, IllegalMoveError) as exc:
            raise IllegalMoveError(f"transcript line {lineno}: {exc}") from None
    return s
