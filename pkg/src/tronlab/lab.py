"""Instance generation, theorem fuzzing, extremal search, conjecture scans.

The generators are fully deterministic under their seed. The fuzz driver
solves, decomposes, and certifies each instance and aborts on any violated
certificate; a violation would be either an implementation bug or a
counterexample to the one-fifth bound, and both deserve a loud stop with
the instance serialized. Conjecture scans, by contrast, treat exceedances
as findings to report, not failures.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .certificates import CertificateReport, certify
from .decomposition import decompose
from .graphs import Graph, Instance, serialize_instance
from .solver import GENERAL, GENERAL_MAX_VERTICES, game_value

__all__ = [
    "GeneratorConfig",
    "FuzzSummary",
    "TheoremViolation",
    "SearchConfig",
    "SearchResult",
    "ScanSummary",
    "generate",
    "fuzz_theorem",
    "theorem_corpus",
    "run_theorem_corpus",
    "extremal_search",
    "conjecture_scan",
]

FIFTH = Fraction(1, 5)
TENTH = Fraction(1, 10)

FAMILIES = ("random", "path", "star", "spider", "caterpillar", "cycle", "twin_spider")


class TheoremViolation(RuntimeError):
    """A certified bound failed; carries the serialized instance."""

    def __init__(self, message: str, instance_text: str):
        super().__init__(message)
        self.instance_text = instance_text


@dataclass(frozen=True)
class GeneratorConfig:
    """Deterministic instance stream: same config, same instances."""

    family: str
    n: int
    weight_mode: str | tuple = "uniform"  # "uniform" | ("grid", D, k) | "random"
    seed: int = 0

    def describe(self) -> str:
        mode = (
            self.weight_mode
            if isinstance(self.weight_mode, str)
            else f"grid(1/{self.weight_mode[1]},k={self.weight_mode[2]})"
        )
        return f"{self.family}(n={self.n},{mode},seed={self.seed})"


def _prufer_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def _family_edges(family: str, n: int, rng: random.Random) -> list[tuple[int, int]]:
    if family == "random":
        return _prufer_edges(n, rng)
    if family == "path":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "star":
        return [(0, i) for i in range(1, n)]
    if family == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return [(i, (i + 1) % n) for i in range(n)]
    if family == "spider":
        # one center, legs of random lengths summing to n - 1
        if n <= 3:
            return [(i, i + 1) for i in range(n - 1)]
        legs = rng.randint(3, max(3, min(n - 1, 5)))
        cuts = sorted(rng.sample(range(1, n - 1), legs - 1)) if legs > 1 else []
        lengths = [b - a for a, b in zip([0] + cuts, cuts + [n - 1])]
        lengths = [l for l in lengths if l > 0]
        edges = []
        nxt = 1
        for length in lengths:
            prev = 0
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return edges
    if family == "caterpillar":
        if n <= 2:
            return [(i, i + 1) for i in range(n - 1)]
        spine = rng.randint(2, max(2, n - 1))
        edges = [(i, i + 1) for i in range(spine - 1)]
        for leaf in range(spine, n):
            edges.append((rng.randrange(spine), leaf))
        return edges
    if family == "twin_spider":
        # two adjacent centers, two legs each, lengths as equal as possible
        if n < 6:
            return [(i, i + 1) for i in range(n - 1)]
        edges = [(0, 1)]
        nxt = 2
        remaining = n - 2
        base, extra = divmod(remaining, 4)
        lengths = [base + (1 if i < extra else 0) for i in range(4)]
        for i, length in enumerate(lengths):
            prev = 0 if i < 2 else 1
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return edges
    raise ValueError(f"unknown family {family!r}")


def _weights(mode, n: int, rng: random.Random) -> list[Fraction]:
    if mode == "uniform":
        return [Fraction(1, n)] * n
    if mode == "random":
        raw = [rng.randint(0, 16) for _ in range(n)]
        if sum(raw) == 0:
            raw[rng.randrange(n)] = 1
        total = sum(raw)
        return [Fraction(a, total) for a in raw]
    if isinstance(mode, tuple) and mode and mode[0] == "grid":
        _, denom, support = mode
        support = min(support, n, denom)
        if support < 1:
            raise ValueError("grid support must be positive")
        chosen = sorted(rng.sample(range(n), support))
        if support == 1:
            parts = [denom]
        else:
            cuts = sorted(rng.sample(range(1, denom), support - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
        weights = [Fraction(0)] * n
        for v, part in zip(chosen, parts):
            weights[v] = Fraction(part, denom)
        return weights
    raise ValueError(f"unknown weight mode {mode!r}")


def generate(config: GeneratorConfig, count: int) -> Iterator[Instance]:
    """Deterministic stream of ``count`` instances for a config."""
    rng = random.Random(config.seed)
    if config.family != "cycle" and config.n < 1:
        raise ValueError("n must be positive")
    for _ in range(count):
        edges = _family_edges(config.family, config.n, rng)
        weights = _weights(config.weight_mode, config.n, rng)
        yield Instance(Graph(config.n, edges), weights)


# --------------------------------------------------------------------------
# Theorem fuzzing


@dataclass
class FuzzSummary:
    instances: int = 0
    max_delta: Optional[Fraction] = None
    max_delta_instance: Optional[str] = None
    firings: dict = field(default_factory=dict)
    violations: int = 0
    degenerate_split: int = 0

    def merge(self, other: "FuzzSummary") -> "FuzzSummary":
        merged = FuzzSummary(
            instances=self.instances + other.instances,
            max_delta=self.max_delta,
            max_delta_instance=self.max_delta_instance,
            firings=dict(self.firings),
            violations=self.violations + other.violations,
            degenerate_split=self.degenerate_split + other.degenerate_split,
        )
        if other.max_delta is not None and (
            merged.max_delta is None or other.max_delta > merged.max_delta
        ):
            merged.max_delta = other.max_delta
            merged.max_delta_instance = other.max_delta_instance
        for k, v in other.firings.items():
            merged.firings[k] = merged.firings.get(k, 0) + v
        return merged


def _certify_one(inst: Instance) -> CertificateReport:
    report = game_value(inst)
    dec = decompose(inst, report=report)
    return certify(inst, report=report, dec=dec)


def fuzz_theorem(config: GeneratorConfig, count: int) -> FuzzSummary:
    """Solve + decompose + certify ``count`` instances; abort on violation."""
    if config.family == "cycle":
        raise ValueError("theorem fuzzing is about trees")
    summary = FuzzSummary()
    uniform = config.weight_mode == "uniform"
    for inst in generate(config, count):
        cert = _certify_one(inst)
        summary.instances += 1
        if summary.max_delta is None or cert.delta > summary.max_delta:
            summary.max_delta = cert.delta
            summary.max_delta_instance = serialize_instance(inst)
        for b in cert.bounds:
            if b.applicable:
                summary.firings[b.name] = summary.firings.get(b.name, 0) + 1
        summary.degenerate_split += bool(cert.degenerate_split)
        bad = cert.violations + cert.failed_combinations
        if bad:
            summary.violations += len(bad)
            names = ", ".join(getattr(b, "name") for b in bad)
            raise TheoremViolation(
                f"certificate violation ({names}) on {inst.digest()}",
                serialize_instance(inst),
            )
        if cert.delta > FIFTH:
            raise TheoremViolation(
                f"delta {cert.delta} exceeds 1/5 on a tree", serialize_instance(inst)
            )
        if uniform and cert.delta < Fraction(-1, inst.n):
            raise TheoremViolation(
                f"uniform delta {cert.delta} below -1/n", serialize_instance(inst)
            )
    return summary


def theorem_corpus(total: int = 1000) -> list[tuple[GeneratorConfig, int]]:
    """The documented fuzz corpus: mixed families, sizes <= 12, fixed seeds.

    The twin-spider entries guarantee the split-point certificate fires;
    plain random trees make it (and the dash bound) fire as well, which
    the acceptance gate verifies.
    """
    entries: list[tuple[GeneratorConfig, int]] = []
    seed = 1000
    structured = [
        GeneratorConfig("twin_spider", 6, "uniform", 1),
        GeneratorConfig("twin_spider", 10, "uniform", 2),
        GeneratorConfig("twin_spider", 12, "uniform", 3),
        GeneratorConfig("twin_spider", 12, ("grid", 8, 4), 4),
    ]
    for cfg in structured:
        entries.append((cfg, 1))
    remaining = total - len(entries)
    families = ("random", "spider", "caterpillar", "path", "star")
    modes = ("uniform", "random", ("grid", 10, 5), ("grid", 6, 3))
    combos = []
    for n in range(2, 13):
        for family in families:
            for mode in modes:
                if isinstance(mode, tuple) and mode[2] > n:
                    continue
                combos.append((family, n, mode))
    per = max(1, remaining // len(combos))
    for family, n, mode in combos:
        if remaining <= 0:
            break
        take = min(per, remaining)
        entries.append((GeneratorConfig(family, n, mode, seed), take))
        seed += 1
        remaining -= take
    while remaining > 0:
        take = min(50, remaining)
        entries.append((GeneratorConfig("random", 12, "random", seed), take))
        seed += 1
        remaining -= take
    return entries


def run_theorem_corpus(total: int = 1000) -> FuzzSummary:
    summary = FuzzSummary()
    for config, count in theorem_corpus(total):
        summary = summary.merge(fuzz_theorem(config, count))
    return summary


# --------------------------------------------------------------------------
# Extremal search


@dataclass(frozen=True)
class SearchConfig:
    budget: int = 2000
    exhaustive_n_max: int = 6
    denominators: tuple[int, ...] = (1, 2, 3, 4, 5)
    support_max: int = 3
    uniform_only: bool = False
    paths_only: bool = False
    hill_n: int = 9
    hill_denominator: int = 10
    seed: int = 0


@dataclass(frozen=True)
class SearchResult:
    best_instance: str  # serialized .tron text
    best_delta: Fraction
    evaluations: int
    trace: tuple[tuple[int, str], ...]  # (evaluation index, delta as p/q)
    truncated: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "best_delta": str(self.best_delta),
                "best_instance": self.best_instance,
                "evaluations": self.evaluations,
                "trace": [[i, d] for i, d in self.trace],
                "truncated": self.truncated,
            },
            sort_keys=True,
        )


def _tree_shapes(n: int) -> Iterator[list[tuple[int, int]]]:
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    import networkx as nx

    for g in nx.nonisomorphic_trees(n):
        yield [tuple(sorted(e)) for e in sorted(g.edges())]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _exhaustive_stream(cfg: SearchConfig) -> Iterator[Instance]:
    for n in range(2, cfg.exhaustive_n_max + 1):
        shapes = (
            [[(i, i + 1) for i in range(n - 1)]] if cfg.paths_only else _tree_shapes(n)
        )
        for edges in shapes:
            g = Graph(n, edges)
            if cfg.uniform_only:
                yield Instance(g, [Fraction(1, n)] * n)
                continue
            for denom in cfg.denominators:
                for support_size in range(1, min(cfg.support_max, n, denom) + 1):
                    for support in itertools.combinations(range(n), support_size):
                        for parts in _compositions(denom, support_size):
                            weights = [Fraction(0)] * n
                            for v, p in zip(support, parts):
                                weights[v] = Fraction(p, denom)
                            yield Instance(g, weights)


def _hill_mutate(
    inst: Instance, rng: random.Random, quantum: Fraction
) -> Optional[Instance]:
    g = inst.graph
    n = g.n
    kind = rng.randrange(3)
    if kind == 0:
        # move one quantum of weight between two vertices
        donors = [v for v in range(n) if inst.weights[v] >= quantum]
        if not donors:
            return None
        u = rng.choice(donors)
        v = rng.randrange(n)
        if u == v:
            return None
        weights = list(inst.weights)
        weights[u] -= quantum
        weights[v] += quantum
        return Instance(g, weights)
    if kind == 1:
        # re-attach a leaf elsewhere
        leaves = [v for v in range(n) if g.degree(v) == 1]
        if not leaves or n < 3:
            return None
        leaf = rng.choice(leaves)
        old = g.adj[leaf][0]
        target = rng.randrange(n)
        if target in (leaf, old):
            return None
        edges = [e for e in g.edges if e != tuple(sorted((leaf, old)))]
        edges.append(tuple(sorted((leaf, target))))
        try:
            ng = Graph(n, edges)
        except ValueError:
            return None
        if not ng.is_tree:
            return None
        return Instance(ng, inst.weights)
    u, v = rng.randrange(n), rng.randrange(n)
    if u == v:
        return None
    weights = list(inst.weights)
    weights[u], weights[v] = weights[v], weights[u]
    return Instance(g, weights)


def _hill_seed(cfg: SearchConfig) -> Instance:
    """Deterministic climb start: a path on the weight grid."""
    n, d = cfg.hill_n, cfg.hill_denominator
    edges = [(i, i + 1) for i in range(n - 1)]
    quanta = [d // n] * n
    quanta[0] += d - sum(quanta)
    return Instance(Graph(n, edges), [Fraction(q, d) for q in quanta])


def extremal_search(cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Hunt for high-value tree instances.

    Three stages inside one evaluation budget: the deterministic seed
    instance, an exhaustive sweep over small trees on coarse weight grids
    (at most half the budget), then hill climbing over weight-quantum
    moves, leaf re-attachments and weight swaps. Every improvement is
    re-solved by the second backend before being trusted; a tree value
    above 1/5 aborts loudly.
    """
    rng = random.Random(cfg.seed)
    evaluations = 0
    best_inst: Optional[Instance] = None
    best_delta: Optional[Fraction] = None
    trace: list[tuple[int, str]] = []
    truncated = False

    def consider(inst: Instance) -> Fraction:
        nonlocal best_inst, best_delta, evaluations
        evaluations += 1
        rep = game_value(inst)
        if inst.graph.is_tree and rep.delta > FIFTH:
            raise TheoremViolation(
                f"search found tree delta {rep.delta} > 1/5",
                serialize_instance(inst),
            )
        if best_delta is None or rep.delta > best_delta:
            if inst.n <= GENERAL_MAX_VERTICES:
                check = game_value(inst, backend=GENERAL)
                if check.delta != rep.delta:
                    raise TheoremViolation(
                        "backend disagreement during search",
                        serialize_instance(inst),
                    )
            best_inst, best_delta = inst, rep.delta
            trace.append((evaluations - 1, str(rep.delta)))
        return rep.delta

    seed_inst = _hill_seed(cfg)
    consider(seed_inst)

    exhaustive_cap = cfg.budget // 2
    for inst in _exhaustive_stream(cfg):
        if evaluations >= exhaustive_cap + 1:
            truncated = True
            break
        consider(inst)

    # hill climbing with sideways moves (plateaus are everywhere in this
    # landscape); episodes restart from the best instance found so far
    quantum = Fraction(1, cfg.hill_denominator)
    while evaluations < cfg.budget:
        current = _upsize(best_inst, cfg)
        if current is not best_inst:
            current_delta = consider(current)
        else:
            current_delta = best_delta
        stall = 0
        dead_mutations = 0
        while evaluations < cfg.budget and stall < 600:
            mutated = _hill_mutate(current, rng, quantum)
            if mutated is None:
                dead_mutations += 1
                if dead_mutations > 1000:
                    break
                continue
            dead_mutations = 0
            delta = consider(mutated)
            if delta > current_delta or (
                delta == current_delta and rng.random() < 0.35
            ):
                current, current_delta = mutated, delta
                if delta > best_delta:
                    stall = 0
            else:
                stall += 1
    if evaluations >= cfg.budget:
        truncated = True

    return SearchResult(
        best_instance=serialize_instance(best_inst),
        best_delta=best_delta,
        evaluations=evaluations,
        trace=tuple(trace),
        truncated=truncated,
    )


def _upsize(inst: Instance, cfg: SearchConfig) -> Instance:
    """Pad with zero-weight leaves (deterministically) up to hill_n."""
    n = inst.n
    if n >= cfg.hill_n:
        return inst
    edges = list(inst.graph.edges)
    weights = list(inst.weights)
    for v in range(n, cfg.hill_n):
        edges.append((v - n if v - n < n else n - 1, v))
        weights.append(Fraction(0))
    return Instance(Graph(cfg.hill_n, edges), weights)


# --------------------------------------------------------------------------
# Conjecture scans


@dataclass(frozen=True)
class ScanSummary:
    target: str
    threshold: Fraction
    evaluated: int
    max_delta: Fraction
    max_delta_instance: str
    findings: tuple[str, ...]  # serialized instances above the threshold

    def to_json(self) -> str:
        return json.dumps(
            {
                "target": self.target,
                "threshold": str(self.threshold),
                "evaluated": self.evaluated,
                "max_delta": str(self.max_delta),
                "max_delta_instance": self.max_delta_instance,
                "findings": list(self.findings),
            },
            sort_keys=True,
        )


def conjecture_scan(
    target: str,
    n_max: int = 10,
    samples: int = 500,
    seed: int = 0,
) -> ScanSummary:
    """Scan uniform trees (exhaustive shapes) or weighted cycles for values
    above the conjectured ceilings (1/10 and 1/5). Exceedances are
    reported as findings, never raised: they would be research results.
    """
    if target == "unweighted_trees":
        threshold = TENTH
        instances: Iterable[Instance] = (
            Instance(Graph(n, edges), [Fraction(1, n)] * n)
            for n in range(2, n_max + 1)
            for edges in _tree_shapes(n)
        )
    elif target == "cycles":
        threshold = FIFTH

        def cycles() -> Iterator[Instance]:
            rng = random.Random(seed)
            for n in range(3, n_max + 1):
                yield next(generate(GeneratorConfig("cycle", n, "uniform", 0), 1))
            produced = 0
            while produced < samples:
                n = rng.randint(3, n_max)
                mode = rng.choice(["random", ("grid", 8, 4), ("grid", 10, 5)])
                if isinstance(mode, tuple) and mode[2] > n:
                    continue
                cfg = GeneratorConfig("cycle", n, mode, rng.randrange(1 << 30))
                yield next(generate(cfg, 1))
                produced += 1

        instances = cycles()
    else:
        raise ValueError(f"unknown scan target {target!r}")

    evaluated = 0
    max_delta: Optional[Fraction] = None
    argmax = ""
    findings: list[str] = []
    for inst in instances:
        rep = game_value(inst)
        evaluated += 1
        if max_delta is None or rep.delta > max_delta:
            max_delta = rep.delta
            argmax = serialize_instance(inst)
        if rep.delta > threshold:
            findings.append(serialize_instance(inst))
    return ScanSummary(
        target=target,
        threshold=threshold,
        evaluated=evaluated,
        max_delta=max_delta,
        max_delta_instance=argmax,
        findings=tuple(findings),
    )
