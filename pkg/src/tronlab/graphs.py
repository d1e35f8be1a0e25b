"""Vertex-weighted graphs with exact rational weights.

Everything the rest of the toolkit builds on: undirected graphs, instances
(a graph plus weights summing to one), vertex paths, heaviest-path queries,
and the ``.tron v1`` file format. All weight arithmetic is exact; there is
no floating point anywhere in this module.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Graph",
    "Instance",
    "VertexPath",
    "TronParseError",
    "parse_instance",
    "serialize_instance",
    "load_instance",
    "save_instance",
    "heaviest_path_from",
    "heaviest_path",
]


class TronParseError(ValueError):
    """Malformed ``.tron`` input. Carries the offending line number if known."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    Immutable after construction; adjacency lists are sorted so that every
    iteration order in the toolkit is deterministic.
    """

    __slots__ = ("n", "edges", "adj", "_dist_rows", "_connected")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        canon = []
        seen = set()
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            canon.append(e)
            neighbors[u].append(v)
            neighbors[v].append(u)
        canon.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(ns)) for ns in neighbors
        )
        self._dist_rows: dict[int, list[int]] = {}
        self._connected: Optional[bool] = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    @property
    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = len(self.reachable_from(0)) == self.n
        return self._connected

    @property
    def is_tree(self) -> bool:
        return self.is_connected and self.m == self.n - 1

    @property
    def is_cycle(self) -> bool:
        return (
            self.is_connected
            and self.m == self.n
            and all(self.degree(v) == 2 for v in range(self.n))
        )

    def reachable_from(self, start: int, blocked: frozenset | set = frozenset()) -> set[int]:
        """Component of ``start`` in the graph minus ``blocked`` vertices."""
        self.check_vertex(start)
        if start in blocked:
            raise ValueError(f"start vertex {start} is blocked")
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen and v not in blocked:
                    seen.add(v)
                    queue.append(v)
        return seen

    def dist_row(self, u: int) -> list[int]:
        """BFS distances from ``u`` to every vertex (-1 if unreachable)."""
        row = self._dist_rows.get(u)
        if row is None:
            self.check_vertex(u)
            row = [-1] * self.n
            row[u] = 0
            queue = deque([u])
            while queue:
                x = queue.popleft()
                d = row[x] + 1
                for y in self.adj[x]:
                    if row[y] < 0:
                        row[y] = d
                        queue.append(y)
            self._dist_rows[u] = row
        return row

    def dist(self, u: int, v: int) -> int:
        """Unweighted distance (edge count) between ``u`` and ``v``."""
        self.check_vertex(v)
        d = self.dist_row(u)[v]
        if d < 0:
            raise ValueError(f"vertices {u} and {v} are not connected")
        return d

    def dist_matrix(self) -> list[list[int]]:
        return [self.dist_row(u) for u in range(self.n)]

    def bfs_parents(self, root: int, allowed: Optional[set[int]] = None) -> dict[int, int]:
        """Parent map of a BFS tree from ``root`` restricted to ``allowed``."""
        if allowed is not None and root not in allowed:
            raise ValueError(f"root {root} not in allowed set")
        self.check_vertex(root)
        parents = {root: root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v in parents:
                    continue
                if allowed is not None and v not in allowed:
                    continue
                parents[v] = u
                queue.append(v)
        return parents

    def path_between(self, u: int, v: int) -> "VertexPath":
        """The unique u-v path of a tree."""
        if not self.is_tree:
            raise ValueError("path_between requires a tree")
        self.check_vertex(u)
        self.check_vertex(v)
        parents = self.bfs_parents(u)
        seq = [v]
        while seq[-1] != u:
            seq.append(parents[seq[-1]])
        seq.reverse()
        return VertexPath(tuple(seq))

    def on_path(self, u: int, x: int, v: int) -> bool:
        """True iff ``x`` lies on the unique u-v tree path (endpoints included)."""
        return self.dist(u, x) + self.dist(x, v) == self.dist(u, v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexPath:
    """An ordered, repetition-free sequence of vertices.

    Adjacency of consecutive vertices is a property of a particular graph;
    use :meth:`require_valid_in` when the context graph is at hand.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path repeats a vertex")

    def require_valid_in(self, g: Graph) -> "VertexPath":
        for a, b in zip(self.vertices, self.vertices[1:]):
            if b not in g.adj[a]:
                raise ValueError(f"vertices {a} and {b} are not adjacent")
        return self

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def weight_in(self, inst: "Instance") -> Fraction:
        return inst.weight_of_set(self.vertices)

    def reversed(self) -> "VertexPath":
        return VertexPath(tuple(reversed(self.vertices)))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


class Instance:
    """A connected graph with non-negative rational vertex weights summing to 1."""

    __slots__ = ("graph", "weights", "_scaled", "_digest")

    def __init__(
        self,
        graph: Graph,
        weights: Sequence[Fraction | int],
        normalize: bool = False,
    ):
        ws = tuple(Fraction(w) for w in weights)
        if len(ws) != graph.n:
            raise ValueError(f"expected {graph.n} weights, got {len(ws)}")
        for i, w in enumerate(ws):
            if w < 0:
                raise ValueError(f"negative weight {w} at vertex {i}")
        total = sum(ws, Fraction(0))
        if normalize:
            if total == 0:
                raise ValueError("cannot normalize: weights sum to 0")
            ws = tuple(w / total for w in ws)
        elif total != 1:
            raise ValueError(f"weights sum to {total} != 1")
        if not graph.is_connected:
            raise ValueError("instance graph must be connected")
        self.graph = graph
        self.weights: tuple[Fraction, ...] = ws
        self._scaled: Optional[tuple[tuple[int, ...], int]] = None
        self._digest: Optional[str] = None

    @property
    def n(self) -> int:
        return self.graph.n

    def weight_of(self, v: int) -> Fraction:
        return self.weights[v]

    def weight_of_set(self, vs: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vs), Fraction(0))

    def scaled_weights(self) -> tuple[tuple[int, ...], int]:
        """Integer weights plus the common denominator they were scaled by."""
        if self._scaled is None:
            scale = lcm(*(w.denominator for w in self.weights))
            ints = tuple(int(w * scale) for w in self.weights)
            self._scaled = (ints, scale)
        return self._scaled

    def digest(self) -> str:
        if self._digest is None:
            text = serialize_instance(self)
            self._digest = hashlib.sha256(text.encode()).hexdigest()
        return self._digest

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Instance)
            and self.graph == other.graph
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.weights))

    def __repr__(self) -> str:
        kind = "tree" if self.graph.is_tree else ("cycle" if self.graph.is_cycle else "graph")
        return f"Instance({kind}, n={self.n})"


# --------------------------------------------------------------------------
# .tron v1 format


def _parse_weight(token: str, line: int) -> Fraction:
    try:
        if "/" in token:
            num_s, den_s = token.split("/", 1)
            num, den = int(num_s), int(den_s)
            if den <= 0:
                raise TronParseError(f"denominator must be positive in '{token}'", line)
            return Fraction(num, den)
        return Fraction(int(token))
    except TronParseError:
        raise
    except ValueError:
        raise TronParseError(f"bad rational '{token}'", line) from None


def parse_instance(text: str | bytes, normalize: bool = False) -> Instance:
    """Parse a ``.tron v1`` document into a validated :class:`Instance`.

    Raises :class:`TronParseError` with a line number for malformed syntax,
    a weight sum different from 1 (unless ``normalize``), negative weights,
    or a disconnected graph.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    significant: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            significant.append((lineno, body.split()))
    if not significant:
        raise TronParseError("empty input")
    line, fields = significant[0]
    if fields != ["tron", "v1"]:
        raise TronParseError("expected header 'tron v1'", line)
    if len(significant) < 2:
        raise TronParseError("missing 'n <N>' line", line)
    line, fields = significant[1]
    if len(fields) != 2 or fields[0] != "n":
        raise TronParseError("expected 'n <N>'", line)
    try:
        n = int(fields[1])
    except ValueError:
        raise TronParseError(f"bad vertex count '{fields[1]}'", line) from None
    if n < 1:
        raise TronParseError("vertex count must be positive", line)

    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    for line, fields in significant[2:]:
        kind = fields[0]
        if kind == "w":
            if len(fields) != 3:
                raise TronParseError("expected 'w <index> <weight>'", line)
            try:
                idx = int(fields[1])
            except ValueError:
                raise TronParseError(f"bad vertex index '{fields[1]}'", line) from None
            if not 0 <= idx < n:
                raise TronParseError(f"vertex index {idx} out of range", line)
            if idx in weights:
                raise TronParseError(f"duplicate weight for vertex {idx}", line)
            w = _parse_weight(fields[2], line)
            if w < 0:
                raise TronParseError(f"negative weight {w} at vertex {idx}", line)
            weights[idx] = w
        elif kind == "e":
            if len(fields) != 3:
                raise TronParseError("expected 'e <u> <v>'", line)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise TronParseError("bad edge endpoints", line) from None
            if not (0 <= u < n and 0 <= v < n):
                raise TronParseError(f"edge ({u}, {v}) out of range", line)
            if u == v:
                raise TronParseError(f"self-loop at vertex {u}", line)
            edges.append((u, v))
        else:
            raise TronParseError(f"unknown directive '{kind}'", line)

    missing = [i for i in range(n) if i not in weights]
    if missing:
        raise TronParseError(f"missing weights for vertices {missing}")
    try:
        graph = Graph(n, edges)
    except ValueError as exc:
        raise TronParseError(str(exc)) from None
    if not graph.is_connected:
        raise TronParseError("graph is not connected")
    ws = [weights[i] for i in range(n)]
    total = sum(ws, Fraction(0))
    if not normalize and total != 1:
        raise TronParseError(f"weights sum to {total} != 1")
    return Instance(graph, ws, normalize=normalize)


def serialize_instance(inst: Instance) -> str:
    """Canonical ``.tron v1`` text: lowest-term weights, edges sorted by (min, max)."""
    lines = ["tron v1", f"n {inst.n}"]
    for i, w in enumerate(inst.weights):
        lines.append(f"w {i} {w.numerator}/{w.denominator}")
    for u, v in inst.graph.edges:
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def load_instance(path, normalize: bool = False) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read(), normalize=normalize)


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))


# --------------------------------------------------------------------------
# Heaviest paths


def _require_forest_component(g: Graph, comp: set[int]) -> None:
    inside = sum(1 for u, v in g.edges if u in comp and v in comp)
    if inside != len(comp) - 1:
        raise ValueError("vertex set does not induce a tree component")


def heaviest_path_from(
    inst: Instance, v0: int, forbidden: Iterable[int] = ()
) -> VertexPath:
    """Maximum-weight path starting at ``v0`` avoiding ``forbidden`` vertices.

    The graph restricted to the allowed vertices must be a forest. Ties are
    broken toward the lexicographically smallest vertex sequence.
    """
    blocked = frozenset(forbidden)
    if v0 in blocked:
        raise ValueError(f"start vertex {v0} is forbidden")
    g = inst.graph
    comp = g.reachable_from(v0, blocked)
    _require_forest_component(g, comp)
    parents = g.bfs_parents(v0, comp)
    # In a tree, the paths starting at v0 are exactly the v0 -> t geodesics.
    weight_to = {v0: inst.weights[v0]}
    order = [v0]
    queue = deque([v0])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in comp and parents.get(v) == u and v not in weight_to:
                weight_to[v] = weight_to[u] + inst.weights[v]
                order.append(v)
                queue.append(v)
    best_w = max(weight_to.values())
    best_seq: Optional[tuple[int, ...]] = None
    for t in sorted(comp):
        if weight_to[t] != best_w:
            continue
        seq = [t]
        while seq[-1] != v0:
            seq.append(parents[seq[-1]])
        seq.reverse()
        tup = tuple(seq)
        if best_seq is None or tup < best_seq:
            best_seq = tup
    assert best_seq is not None
    return VertexPath(best_seq)


def heaviest_path(inst: Instance, allowed: Optional[Iterable[int]] = None) -> VertexPath:
    """Maximum-weight path inside ``allowed`` (whole graph if omitted).

    The allowed set must induce a connected subtree. Deterministic under
    ties: the lexicographically smallest vertex sequence, reading each path
    from its smaller endpoint.
    """
    g = inst.graph
    vs = set(range(g.n)) if allowed is None else set(allowed)
    if not vs:
        raise ValueError("allowed set is empty")
    for v in vs:
        g.check_vertex(v)
    root = min(vs)
    comp = g.reachable_from(root, frozenset(range(g.n)) - vs)
    if comp != vs:
        raise ValueError("allowed set is not connected")
    _require_forest_component(g, vs)

    best_w: Optional[Fraction] = None
    best_seq: Optional[tuple[int, ...]] = None
    for u in sorted(vs):
        parents = g.bfs_parents(u, vs)
        weight_to = {u: inst.weights[u]}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in vs and parents.get(y) == x and y not in weight_to:
                    weight_to[y] = weight_to[x] + inst.weights[y]
                    queue.append(y)
        for t in sorted(vs):
            if t < u:
                continue  # each unordered pair once, read from smaller endpoint
            w = weight_to[t]
            if best_w is not None and w < best_w:
                continue
            seq = [t]
            while seq[-1] != u:
                seq.append(parents[seq[-1]])
            seq.reverse()
            tup = tuple(seq)
            if best_w is None or w > best_w or (w == best_w and tup < best_seq):
                best_w, best_seq = w, tup
    assert best_seq is not None
    return VertexPath(best_seq)
