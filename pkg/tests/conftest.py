import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from tronlab.graphs import Graph, Instance

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def path_instance(n: int, weights=None) -> Instance:
    g = Graph(n, [(i, i + 1) for i in range(n - 1)])
    if weights is None:
        weights = [Fraction(1, n)] * n
    return Instance(g, weights)


def star_instance(leaves: int, weights=None) -> Instance:
    n = leaves + 1
    g = Graph(n, [(0, i) for i in range(1, n)])
    if weights is None:
        weights = [Fraction(1, n)] * n
    return Instance(g, weights)


def cycle_instance(n: int, weights=None) -> Instance:
    g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if weights is None:
        weights = [Fraction(1, n)] * n
    return Instance(g, weights)


def random_tree_instance(n: int, rng: random.Random, mode: str = "random") -> Instance:
    """Random labeled tree with exact random weights; deterministic in rng."""
    edges = random_tree_edges(n, rng)
    g = Graph(n, edges)
    if mode == "uniform":
        weights = [Fraction(1, n)] * n
    else:
        raw = [rng.randint(0, 12) for _ in range(n)]
        if sum(raw) == 0:
            raw[rng.randrange(n)] = 1
        total = sum(raw)
        weights = [Fraction(a, total) for a in raw]
    return Instance(g, weights)


def random_tree_edges(n: int, rng: random.Random):
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def double_spider_instance(leg: int = 2) -> Instance:
    """Two adjacent centers, two legs of ``leg`` vertices each per center.

    Balanced leg weights make alpha drop below z - x on both sides, which
    exercises the split-vertex construction.
    """
    edges = [(0, 1)]
    weights = [Fraction(0), Fraction(0)]
    nxt = 2
    legs_total = 4 * leg
    for center in (0, 1):
        for _ in range(2):
            prev = center
            for _ in range(leg):
                edges.append((prev, nxt))
                weights.append(Fraction(1, legs_total))
                prev = nxt
                nxt += 1
    return Instance(Graph(nxt, edges), weights)


@pytest.fixture
def p3_uniform():
    return path_instance(3)


@pytest.fixture
def p5_uniform():
    return path_instance(5)


@pytest.fixture
def k13_uniform():
    return star_instance(3)


@pytest.fixture
def skew_edge():
    g = Graph(2, [(0, 1)])
    return Instance(g, [Fraction(1), Fraction(0)])
