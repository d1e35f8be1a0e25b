import random
from fractions import Fraction

import pytest

from tronlab.decomposition import (
    DecompositionError,
    bob_reply_table,
    crossing_edge,
    decompose,
    format_decomposition,
    locate_e,
)
from tronlab.graphs import Graph, Instance, VertexPath
from tronlab.solver import game_value

from conftest import path_instance, random_tree_instance


def test_reply_tables(p3_uniform, p5_uniform, k13_uniform):
    assert bob_reply_table(p3_uniform) == {0: 1, 1: 0, 2: 1}
    # On P5 from the middle every placement ties at -1/5, so B(2) = 0.
    assert bob_reply_table(p5_uniform) == {0: 1, 1: 2, 2: 0, 3: 2, 4: 3}
    assert bob_reply_table(k13_uniform) == {0: 1, 1: 0, 2: 0, 3: 0}


def test_crossing_edges(p3_uniform, p5_uniform, k13_uniform):
    assert crossing_edge(p3_uniform, bob_reply_table(p3_uniform)) == (0, 1)
    assert crossing_edge(p5_uniform, bob_reply_table(p5_uniform)) == (1, 2)
    assert crossing_edge(k13_uniform, bob_reply_table(k13_uniform)) == (0, 1)


def test_decompose_p5(p5_uniform):
    dec = decompose(p5_uniform)
    assert dec.crossing == (1, 2)
    assert dec.left_vertices == {0, 1}
    assert dec.right_vertices == {2, 3, 4}
    L, R = dec.left, dec.right
    assert (L.X, L.Y, L.Z, L.R) == (frozenset(), {0, 1}, frozenset(), frozenset())
    assert (L.x, L.y, L.z, L.r) == (0, Fraction(2, 5), 0, 0)
    assert L.d == 1 and L.b == 0 and L.c == 1
    assert L.alpha == Fraction(4, 15)
    assert L.e is None  # alpha >= z - x = 0
    assert R.Y == {2, 3, 4}
    assert (R.x, R.y, R.z, R.r) == (0, Fraction(3, 5), 0, 0)
    assert R.alpha == Fraction(2, 5)
    assert R.e is None


def test_decompose_k13(k13_uniform):
    dec = decompose(k13_uniform)
    assert dec.crossing == (0, 1)
    assert dec.left_vertices == {0, 2, 3}
    assert dec.right_vertices == {1}
    L, R = dec.left, dec.right
    assert L.P.vertices == (0, 2)
    assert L.Q.vertices == (2, 0, 3)
    assert L.Y == {0, 2} and L.Z == {3} and L.X == frozenset() and L.R == frozenset()
    assert L.d == 0
    assert (L.x, L.y, L.z, L.r) == (0, Fraction(1, 2), Fraction(1, 4), 0)
    assert L.alpha == Fraction(5, 12)
    assert L.e is None  # 5/12 >= 1/4
    assert (R.x, R.y, R.z, R.r) == (0, Fraction(1, 4), 0, 0)


def test_decompose_two_vertices():
    inst = path_instance(2, [Fraction(1, 3), Fraction(2, 3)])
    dec = decompose(inst)
    for side in (dec.left, dec.right):
        assert side.X == side.Z == side.R == frozenset()
        assert side.Y == {side.a}
        assert side.y == inst.weights[side.a]
        assert side.b == side.c == side.d == side.a


def test_decompose_preconditions():
    from conftest import cycle_instance

    with pytest.raises(ValueError):
        decompose(cycle_instance(4))
    with pytest.raises(ValueError):
        decompose(Instance(Graph(1, []), [Fraction(1)]))


def test_locate_e_uniform_quarters(p5_uniform):
    # Stretches are inclusive of e on both sides. With quarter weights and
    # alpha = 1/4 every position qualifies; d itself wins at distance 0.
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    inst = Instance(g, [Fraction(1, 4)] * 4)
    Q = VertexPath((0, 1, 2, 3))
    assert locate_e(inst, Q, 1, Fraction(1, 4)) == 1
    # Away from d the closest qualifier is picked, toward c on exact ties.
    assert locate_e(inst, Q, 0, Fraction(1, 4)) == 0
    assert locate_e(inst, Q, 3, Fraction(1, 4)) == 3


def test_locate_e_tie_breaks_toward_c():
    # Only the two neighbors of d qualify here; the c-side one wins.
    g = Graph(3, [(0, 1), (1, 2)])
    inst = Instance(g, [Fraction(1, 2), Fraction(0), Fraction(1, 2)])
    Q = VertexPath((0, 1, 2))
    # alpha = 1/2: vertex 0 -> (1/2, 1), vertex 1 -> (1/2, 1/2): both stretch
    # sums fail (need one side >= q - alpha = 1/2 and other >= 1/2; vertex 1
    # gives exactly (1/2, 1/2) so it qualifies at distance 0).
    assert locate_e(inst, Q, 1, Fraction(1, 2)) == 1
    # push alpha low so the middle no longer qualifies
    g2 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    inst2 = Instance(g2, [Fraction(2, 5), Fraction(1, 10), Fraction(1, 10), Fraction(2, 5)])
    Q2 = VertexPath((0, 1, 2, 3))
    # alpha = 2/5, q = 1, q - alpha = 3/5. Stretches (inclusive):
    #   i=1: (1/2, 3/5) qualifies; i=2: (3/5, 1/2) qualifies; both flank d
    # when d = 1 -> distance 0 candidate i=1 wins; with d between them the
    # toward-c rule decides.
    assert locate_e(inst2, Q2, 1, Fraction(2, 5)) == 1
    assert locate_e(inst2, Q2, 2, Fraction(2, 5)) == 2


def test_locate_e_vice_versa_orientation():
    g = Graph(2, [(0, 1)])
    inst = Instance(g, [Fraction(1, 2), Fraction(1, 2)])
    Q = VertexPath((0, 1))
    # alpha = 1/8: vertex 0 stretches are (1/2, 1): to_b fails q - alpha
    # but the swapped orientation (to_b >= alpha, to_c >= q - alpha) holds.
    assert locate_e(inst, Q, 0, Fraction(1, 8)) == 0


def test_half_split_example():
    # Quarter weights, alpha = 1/4, d at index 1: indices 0..3 all qualify
    # under inclusive stretches; d itself is the closest.
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    inst = Instance(g, [Fraction(1, 4)] * 4)
    Q = VertexPath((0, 1, 2, 3))
    got = locate_e(inst, Q, 1, Fraction(1, 4))
    assert got == 1


def test_fuzz_structure_invariants():
    from conftest import double_spider_instance

    rng = random.Random(71)
    instances = [double_spider_instance(leg) for leg in (1, 2, 3)]
    instances += [random_tree_instance(rng.randint(2, 10), rng) for _ in range(150)]
    seen_e = 0
    for inst in instances:
        n = inst.n
        report = game_value(inst)
        dec = decompose(inst, report=report)
        L, R = dec.left, dec.right
        # partition of each side
        assert L.vertices == dec.left_vertices
        assert R.vertices == dec.right_vertices
        assert not (dec.left_vertices & dec.right_vertices)
        assert dec.left_vertices | dec.right_vertices == set(range(n))
        for side in (L, R):
            assert side.X | side.Y | side.Z | side.R == side.vertices
            assert side.x + side.y + side.z + side.r == side.side_weight
            assert side.x <= side.z <= side.y
            assert side.q == side.y + side.z
            assert side.b in side.Y
            assert (side.d == side.b) == (len(side.Y) == 1)
            if side.e is not None:
                seen_e += 1
                assert side.e in side.Q.vertices
        assert L.side_weight + R.side_weight == 1
        # replies point across the crossing edge
        a_l, a_r = dec.crossing
        assert dec.replies[a_l] in dec.right_vertices
        assert dec.replies[a_r] in dec.left_vertices
        # alpha non-negative unless the instance value is negative
        delta = report.delta
        assert L.alpha >= 0 or delta < 0
        assert R.alpha >= 0 or delta < 0
    assert seen_e > 0  # the split vertex construction must actually fire


def test_reversed_tie_break_still_decomposes():
    rng = random.Random(73)
    for _ in range(60):
        n = rng.randint(2, 9)
        inst = random_tree_instance(n, rng)
        dec = decompose(inst, tie_break="high")
        assert dec.left.side_weight + dec.right.side_weight == 1
        for side in (dec.left, dec.right):
            assert side.x <= side.z <= side.y


def test_orientation_flip():
    rng = random.Random(79)
    inst = random_tree_instance(8, rng)
    low = decompose(inst, orient="low")
    high = decompose(inst, orient="high")
    assert low.crossing == (high.crossing[1], high.crossing[0])
    assert low.left == high.right and low.right == high.left


def test_format_decomposition_smoke(p5_uniform):
    text = format_decomposition(decompose(p5_uniform))
    assert "crossing edge: (1, 2)" in text
    assert "alpha=4/15" in text
