"""Deterministic instance families for experiments and tests.

Every family is a pure function of its parameters and seed, so the same
invocation always produces the same instance, byte for byte, once
serialized.  Randomized families draw from their own random.Random so
runs cannot interfere with each other.
"""

from __future__ import annotations

import math
import random

from .core import (
    Graph,
    Hypergraph,
    build_graph,
    build_hypergraph,
    graph_to_hypergraph,
    line_graph,
)


def random_hypergraph(n: int, m: int, r: int, seed: int = 0) -> Hypergraph:
    """m distinct hyperedges, each a uniform r-subset of n vertices."""
    if r < 1 or n < r:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if m < 0 or m > math.comb(n, r):
        raise ValueError(f"cannot place {m} distinct {r}-subsets of {n} vertices")
    rng = random.Random(seed)
    edges: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    while len(edges) < m:
        e = frozenset(rng.sample(range(n), r))
        if e not in seen:
            seen.add(e)
            edges.append(e)
    return build_hypergraph(n, edges)


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Each of the n-choose-2 edges present independently with probability p."""
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must be in [0,1], got {p}")
    rng = random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return build_graph(n, edges)


def d_regular(n: int, d: int, seed: int = 0) -> Graph:
    """Random d-regular simple graph via the pairing model with restarts."""
    if d < 0 or d >= max(n, 1):
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    if d == 0:
        return build_graph(n, [])
    rng = random.Random(seed)
    for _ in range(10_000):
        points = [v for v in range(n) for _ in range(d)]
        rng.shuffle(points)
        pairs = {
            (min(a, b), max(a, b))
            for a, b in zip(points[0::2], points[1::2])
        }
        if len(pairs) == n * d // 2 and all(a != b for a, b in pairs):
            return build_graph(n, sorted(pairs))
    raise ValueError(f"no simple {d}-regular graph found for n={n} after 10000 tries")


def star(n: int) -> Graph:
    """Node 0 joined to each of the other n-1 nodes."""
    if n < 1:
        raise ValueError(f"star needs n >= 1, got {n}")
    return build_graph(n, [(0, v) for v in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(v, (v + 1) % n) for v in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return build_graph(n, [(v, v + 1) for v in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def line_graph_of(instance: Graph | Hypergraph) -> Graph:
    """Line graph: a node per edge, joined when the edges intersect."""
    if isinstance(instance, Graph):
        instance = graph_to_hypergraph(instance)
    return line_graph(instance)
