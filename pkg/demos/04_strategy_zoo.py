"""Executable strategies: avoid-Bob walks and the longest-path heuristic.

avoid_bob(u, v) has Alice place at u, walk the tree path to v, then follow
a heaviest path that stays clear of the subtrees holding u and Bob's
start. It is applicable when Alice reaches v first, and an applicable
avoid-Bob walk always completes its plan whatever Bob does afterwards.

longest_path_bob is Bob's answer on uniform trees: reply inside the longer
half of a longest path through Alice's start, then keep extending toward
the longest available continuation. It never ends more than one vertex
behind.
"""

from tronlab import (
    applicable,
    avoid_bob,
    bob_reply_table,
    longest_path_bob,
    load_instance,
    optimal_policy,
    simulate,
)
from tronlab.engine import Player

inst = load_instance("instances/p5_uniform.tron")
replies = bob_reply_table(inst)

print("avoid_bob(2) against the optimal Bob on the uniform path:")
t = simulate(inst, avoid_bob(inst, 2), optimal_policy(Player.BOB))
print("  transcript:", " ".join(t.codes))
print(f"  alice {t.final.alice_weight}, bob {t.final.bob_weight}, value {t.final.value}")

print("\nApplicability is a pure distance test, dist(u,v) <= dist(B(u),v):")
for u, v in [(2, 2), (2, 1), (0, 4)]:
    print(f"  avoid_bob({u},{v}) applicable: {applicable(inst, u, v, replies)}")

star = load_instance("instances/k13_uniform.tron")
print("\nOn the star, avoiding Bob's leaf still nets Alice half the weight:")
t = simulate(star, avoid_bob(star, 0), optimal_policy(Player.BOB))
print("  transcript:", " ".join(t.codes), "-> alice", t.final.alice_weight)

print("\nlongest_path_bob versus an optimal Alice on the path:")
t = simulate(inst, optimal_policy(Player.ALICE), longest_path_bob(inst))
print("  transcript:", " ".join(t.codes))
print(f"  value {t.final.value} (Bob keeps the one-vertex guarantee)")
