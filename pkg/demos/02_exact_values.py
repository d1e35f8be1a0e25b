"""Exact game values from two independent solver backends.

The value of an instance is the best outcome Alice can force, minimized
over her starting vertex; Bob maximizes. Values are exact rationals: the
general backend searches over claimed bitsets, the tree backend encodes a
state by four path endpoints only. They must agree to the last digit.
"""

from tronlab import GENERAL, TREEPATH, cross_check, game_value, load_instance

for name in ("p3_uniform", "p5_uniform", "k13_uniform", "skew_edge", "bob_tenth"):
    inst = load_instance(f"instances/{name}.tron")
    rep = game_value(inst)
    print(f"{name}: delta = {rep.delta}, optimal starts {sorted(rep.optimal_starts)}")
    for rec in rep.per_start:
        print(f"    start {rec.start}: value {rec.value}, Bob replies {rec.bob_reply}")
    if inst.graph.is_tree:
        agreement = cross_check(inst)
        both = (
            game_value(inst, backend=GENERAL).delta,
            game_value(inst, backend=TREEPATH).delta,
        )
        print(f"    backends agree: {bool(agreement)} ({both[0]} == {both[1]})")
    print()

print("bob_tenth is an 8-vertex weighted tree where Bob wins at least 1/10")
print("wherever Alice starts; the one-fifth theorem says no tree beats 1/5.")
