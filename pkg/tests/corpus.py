"""Shared test corpora; every generator is seeded so runs are reproducible."""

from __future__ import annotations

import functools
import random

import networkx as nx

from hardhom.graph import Graph, random_graph_max_degree
from hardhom.solver import ListHomInstance


@functools.lru_cache(maxsize=None)
def atlas_graphs(max_n: int = 6, max_deg: int = 4) -> tuple[Graph, ...]:
    """Connected graphs up to isomorphism with at most ``max_n`` vertices."""
    out = []
    for nxg in nx.graph_atlas_g()[1:]:
        if nxg.number_of_nodes() > max_n or not nx.is_connected(nxg):
            continue
        if max(dict(nxg.degree).values(), default=0) <= max_deg:
            out.append(Graph(nxg.number_of_nodes(), list(nxg.edges)))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def random_graphs(count: int = 200, max_n: int = 8, max_deg: int = 4) -> tuple[Graph, ...]:
    return tuple(random_graph_max_degree(random.Random(s).randint(2, max_n), max_deg, s) for s in range(count))


def three_col_corpus() -> tuple[Graph, ...]:
    return atlas_graphs() + random_graphs()


@functools.lru_cache(maxsize=None)
def high_degree_graphs(count: int = 60) -> tuple[Graph, ...]:
    """Graphs on 7..9 vertices with some vertex of degree 6 or 7."""
    out = []
    s = 0
    while len(out) < count:
        g = random_graph_max_degree(7 + s % 3, 7, 1000 + s, density=0.4)
        s += 1
        if g.max_degree() >= 6:
            out.append(g)
    return tuple(out)


def random_listhom(rng: random.Random, max_n: int, max_h: int, min_n: int = 1) -> ListHomInstance:
    """Random pattern, random target and random lists (some full, some restricted, rarely empty)."""
    n = rng.randint(min_n, max_n)
    hn = rng.randint(1, max_h)
    g = random_graph_max_degree(n, n, rng.randrange(10**9), density=rng.uniform(0.2, 0.7))
    h = random_graph_max_degree(hn, hn, rng.randrange(10**9), density=rng.uniform(0.3, 1.0))
    lists: list[set[int] | None] = []
    for _ in range(n):
        roll = rng.random()
        if roll < 0.4:
            lists.append(None)
        elif roll < 0.97:
            lists.append({u for u in range(hn) if rng.random() < 0.6} or {rng.randrange(hn)})
        else:
            lists.append(set())
    return ListHomInstance.with_lists(g, h, lists)
