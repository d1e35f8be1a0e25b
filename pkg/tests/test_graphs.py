import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tronlab.graphs import (
    Graph,
    Instance,
    TronParseError,
    VertexPath,
    heaviest_path,
    heaviest_path_from,
    parse_instance,
    serialize_instance,
)

from conftest import path_instance, random_tree_instance, star_instance
from oracles import enumerate_paths_from, max_path_weight, max_path_weight_from


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 5)])


def test_classification_flags():
    path = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert path.is_tree and not path.is_cycle
    cyc = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert cyc.is_cycle and not cyc.is_tree
    disconnected = Graph(4, [(0, 1), (2, 3)])
    assert not disconnected.is_connected and not disconnected.is_tree


def test_dist_basics():
    g = Graph(3, [(0, 1), (1, 2)])
    assert g.dist(0, 2) == 2
    assert g.dist(1, 1) == 0
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert star.dist(0, 3) == 1


def test_path_between_and_on_path():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert g.path_between(0, 2).vertices == (0, 1, 2)
    assert g.path_between(1, 1).vertices == (1,)
    assert g.on_path(0, 1, 2)
    assert not g.on_path(0, 3, 2)
    cyc = Graph(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        cyc.path_between(0, 2)


def test_weight_of_set(k13_uniform):
    assert k13_uniform.weight_of_set({0, 1}) == Fraction(1, 2)
    assert k13_uniform.weight_of_set(set()) == 0
    assert k13_uniform.weight_of_set(range(4)) == 1


def test_instance_validation():
    g = Graph(2, [(0, 1)])
    with pytest.raises(ValueError):
        Instance(g, [Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(ValueError):
        Instance(g, [Fraction(3, 2), Fraction(-1, 2)])
    inst = Instance(g, [1, 1], normalize=True)
    assert inst.weights == (Fraction(1, 2), Fraction(1, 2))


def test_vertex_path_basics():
    p = VertexPath((1, 2, 3))
    assert p.start == 1 and p.end == 3 and len(p) == 3
    with pytest.raises(ValueError):
        VertexPath((1, 2, 1))
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(ValueError):
        VertexPath((0, 2)).require_valid_in(g)


# --------------------------------------------------------------------------
# .tron format


P5_TEXT = """tron v1
n 5
w 0 1/5
w 1 1/5
w 2 1/5
w 3 1/5
w 4 1/5
e 0 1
e 1 2
e 2 3
e 3 4
"""


def test_parse_round_trip(p5_uniform):
    inst = parse_instance(P5_TEXT)
    assert inst == p5_uniform
    assert serialize_instance(inst) == P5_TEXT
    assert parse_instance(serialize_instance(inst)) == inst


def test_parse_comments_and_plain_integers():
    text = "# a comment\ntron v1\nn 2\nw 0 1  # heavy\nw 1 0\ne 0 1\n"
    inst = parse_instance(text)
    assert inst.weights == (Fraction(1), Fraction(0))


def test_parse_bad_sum_reports_value():
    text = "tron v1\nn 2\nw 0 1/2\nw 1 1/3\ne 0 1\n"
    with pytest.raises(TronParseError, match=r"5/6"):
        parse_instance(text)
    inst = parse_instance("tron v1\nn 2\nw 0 1\nw 1 1\ne 0 1\n", normalize=True)
    assert inst.weights == (Fraction(1, 2), Fraction(1, 2))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(TronParseError, match="line 1"):
        parse_instance("tron v2\n")
    with pytest.raises(TronParseError, match="line 3"):
        parse_instance("tron v1\nn 2\nw 0 nope\nw 1 1\ne 0 1\n")
    with pytest.raises(TronParseError, match="negative"):
        parse_instance("tron v1\nn 2\nw 0 3/2\nw 1 -1/2\ne 0 1\n")
    with pytest.raises(TronParseError, match="not connected"):
        parse_instance("tron v1\nn 3\nw 0 1/2\nw 1 1/2\nw 2 0\ne 0 1\n")


# --------------------------------------------------------------------------
# Heaviest paths


def test_heaviest_path_from_p5(p5_uniform):
    # Both directions from the middle weigh 3/5; lexicographic tie-break.
    p = heaviest_path_from(p5_uniform, 2)
    assert p.vertices == (2, 1, 0)
    assert p.weight_in(p5_uniform) == Fraction(3, 5)


def test_heaviest_path_from_star(k13_uniform):
    p = heaviest_path_from(k13_uniform, 0)
    assert p.vertices == (0, 1)
    assert p.weight_in(k13_uniform) == Fraction(1, 2)
    single = heaviest_path_from(k13_uniform, 2, forbidden={0})
    assert single.vertices == (2,)


def test_heaviest_path_from_forbidden_start(p5_uniform):
    with pytest.raises(ValueError):
        heaviest_path_from(p5_uniform, 1, forbidden={1})


def test_heaviest_path_allowed_sets(p5_uniform, k13_uniform):
    p = heaviest_path(p5_uniform, allowed={2, 3, 4})
    assert p.vertices == (2, 3, 4)
    assert p.weight_in(p5_uniform) == Fraction(3, 5)
    q = heaviest_path(k13_uniform, allowed={0, 2, 3})
    assert q.vertices == (2, 0, 3)
    assert q.weight_in(k13_uniform) == Fraction(3, 4)
    assert heaviest_path(p5_uniform, allowed={3}).vertices == (3,)
    with pytest.raises(ValueError):
        heaviest_path(p5_uniform, allowed=set())


def test_heaviest_path_matches_bruteforce_enumeration():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 9)
        inst = random_tree_instance(n, rng)
        assert heaviest_path(inst).weight_in(inst) == max_path_weight(inst)
        for v0 in range(n):
            got = heaviest_path_from(inst, v0)
            assert got.weight_in(inst) == max_path_weight_from(inst, v0)
            assert got.start == v0


def test_far_endpoint_starts_a_heaviest_path():
    # The far endpoint of a heaviest path from any v0 starts a globally
    # heaviest path; checked by exhaustive enumeration on small trees.
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 9)
        inst = random_tree_instance(n, rng)
        global_best = max_path_weight(inst)
        for v0 in range(n):
            vk = heaviest_path_from(inst, v0).end
            assert max_path_weight_from(inst, vk) == global_best


@given(st.integers(2, 8), st.integers(0, 10_000))
def test_heaviest_path_from_dominates_every_enumerated_path(n, seed):
    rng = random.Random(seed)
    inst = random_tree_instance(n, rng)
    v0 = rng.randrange(n)
    best = heaviest_path_from(inst, v0).weight_in(inst)
    for p in enumerate_paths_from(inst, v0):
        assert inst.weight_of_set(p) <= best


def test_scaled_weights():
    inst = path_instance(3, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
    ints, scale = inst.scaled_weights()
    assert scale == 6
    assert ints == (3, 2, 1)


def test_digest_stability(p5_uniform):
    other = parse_instance(P5_TEXT)
    assert p5_uniform.digest() == other.digest()
    assert p5_uniform.digest() != star_instance(3).digest()
