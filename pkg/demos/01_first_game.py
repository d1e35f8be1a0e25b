"""A first game, move by move.

Two players claim vertices on a weighted tree. Alice places first, Bob
second, then they alternate, each extending their own path by one free
neighbor of its head. Whoever has no extension must pass and is out; the
score is Bob's total weight minus Alice's.
"""

from tronlab import (
    Move,
    Player,
    apply_move,
    initial_state,
    legal_moves,
    load_instance,
    outcome,
)
from tronlab.engine import move_code

inst = load_instance("instances/p5_uniform.tron")
print("Board: a path of five vertices, each of weight 1/5.")
print("Edges:", inst.graph.edges)

s = initial_state(inst)
print("\nLegal first placements:", [m.vertex for m in legal_moves(s)])

line = [
    Move.place(Player.ALICE, 2),
    Move.place(Player.BOB, 1),
    Move.extend(Player.ALICE, 3),
    Move.extend(Player.BOB, 0),
    Move.extend(Player.ALICE, 4),
    Move.pass_(),
    Move.pass_(),
]
for m in line:
    print(f"  {move_code(s.turn, m)}", end="")
    s = apply_move(s, m)
print("\n\nAlice claimed", s.alice_path, "and Bob claimed", s.bob_path)

out = outcome(s)
print(f"Score: bob {out.bob_weight} - alice {out.alice_weight} = {out.value}")
print("Bob ends exactly one vertex (1/5) behind, and this is optimal play.")
