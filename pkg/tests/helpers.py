"""Shared test utilities: independent oracles and random instance generators.

The detector oracle here deliberately stays naive: it enumerates every
injective vertex embedding and every injective color assignment, so it
shares no code path with the library's matching-based detector.
"""

from __future__ import annotations

import random
from itertools import permutations

from rturan import Collection, Graph, parse_pattern


def explicit_rainbow_oracle(col: Collection, pattern: Graph) -> bool:
    """Brute force over embeddings x color injections."""
    if pattern.n > col.n:
        return False
    pedges = pattern.edges()
    for vmap in permutations(range(col.n), pattern.n):
        if not pedges:
            return True
        ok_pairs = all(
            any(col.graph(c).has_edge(vmap[a], vmap[b]) for c in range(1, col.t + 1))
            for a, b in pedges
        )
        if not ok_pairs:
            continue
        for cmap in permutations(range(1, col.t + 1), len(pedges)):
            if all(col.graph(c).has_edge(vmap[a], vmap[b]) for (a, b), c in zip(pedges, cmap)):
                return True
    return False


def random_collection(rng: random.Random, n: int, t: int, p: float = 0.35) -> Collection:
    lists = []
    for _ in range(t):
        lists.append(
            [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        )
    return Collection.from_edge_lists(n, lists)


def random_graph_rows(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def boosted_degree_collection(rng: random.Random, n: int, q: int) -> Collection:
    """Random collection where color i has at least i vertices of degree 2q-1."""
    t = rng.randint(q, q + 2)
    thr = 2 * q - 1
    lists = []
    for i in range(1, t + 1):
        edges = {
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.25
        }
        if i <= q:
            for h in rng.sample(range(n), i):
                others = [x for x in range(n) if x != h]
                rng.shuffle(others)
                for o in others[:thr]:
                    edges.add((min(h, o), max(h, o)))
        lists.append(sorted(edges))
    return Collection.from_edge_lists(n, lists)


SMALL_PATTERNS = ["K2", "P3", "P4", "S3", "M2", "K3"]
ORACLE_PATTERNS = ["K2", "P3", "P4", "P5", "S3", "S4", "M2", "M3", "K3", "K2,2", "E2", "E3"]


def pattern_pool(names) -> list[Graph]:
    return [parse_pattern(s) for s in names]
