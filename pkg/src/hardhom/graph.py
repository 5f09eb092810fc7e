"""Simple undirected graphs and the small toolbox the reductions are built on.

Vertices are the integers ``0..n-1``; their natural order is the fixed total
order used everywhere (coloring vectors, lexicographic edge order, witness
order).  Colors are ``1..k``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, partitions or colorings."""


class Graph:
    """Immutable simple graph with sorted adjacency and bitmask rows."""

    __slots__ = ("n", "edges", "adj", "masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.masks: tuple[int, ...] = tuple(sum(1 << w for w in a) for a in self.adj)
        self._hash = hash((n, self.edges))

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> Graph:
        edges = {(min(u, v), max(u, v)) for u, nbrs in enumerate(adj) for v in nbrs}
        return cls(len(adj), edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def closed_neighborhood(self, vertices: Iterable[int]) -> list[int]:
        out = set(vertices)
        for v in list(out):
            out.update(self.adj[v])
        return sorted(out)

    def induced_edges(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        keep = set(vertices)
        return [(u, v) for u, v in self.edges if u in keep and v in keep]

    def padded(self, n: int) -> Graph:
        """The same graph with isolated vertices appended up to ``n``."""
        if n < self.n:
            raise GraphError("cannot pad to fewer vertices")
        return Graph(n, self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs_order(self, 0)) == self.n


def complete_graph(k: int) -> Graph:
    return Graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to every vertex of a ``rim``-cycle on ``1..rim``."""
    rim_edges = [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph(rim + 1, [(0, i) for i in range(1, rim + 1)] + rim_edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


# --------------------------------------------------------------------------
# colorings


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        bad = [c for c in self.colors if not 1 <= c <= self.k]
        if bad:
            raise GraphError(f"colors {bad[:3]} outside palette 1..{self.k}")

    def used(self) -> int:
        return len(set(self.colors))

    def is_proper(self, g: Graph) -> bool:
        return len(self.colors) == g.n and all(self.colors[u] != self.colors[v] for u, v in g.edges)


def greedy_coloring(g: Graph, order: Iterable[int] | None = None) -> VertexColoring:
    """Smallest-free-color greedy in index order; at most ``max_degree + 1`` colors."""
    colors = [0] * g.n
    for v in range(g.n) if order is None else order:
        taken = {colors[w] for w in g.adj[v]}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return VertexColoring(tuple(colors), max(colors, default=0))


def square(g: Graph) -> Graph:
    edges = set(g.edges)
    for v in range(g.n):
        nbrs = g.adj[v]
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                edges.add((a, b))
    return Graph(g.n, edges)


def proper_colorings(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """All proper colorings with palette ``1..k``, in lexicographic order."""
    colors = [0] * g.n
    earlier = [[w for w in g.adj[v] if w < v] for v in range(g.n)]

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == g.n:
            yield tuple(colors)
            return
        taken = {colors[w] for w in earlier[v]}
        for c in range(1, k + 1):
            if c not in taken:
                colors[v] = c
                yield from rec(v + 1)
        colors[v] = 0

    return rec(0)


def find_k_coloring(g: Graph, k: int) -> tuple[int, ...] | None:
    """Exhaustive search for a proper ``k``-coloring (lexicographically first)."""
    return next(proper_colorings(g, k), None)


def brute_chromatic(g: Graph, cap: int) -> int | None:
    if g.n == 0:
        return 0
    for k in range(1, cap + 1):
        if find_k_coloring(g, k) is not None:
            return k
    return None


def is_three_colorable(g: Graph) -> bool:
    return find_k_coloring(g, 3) is not None


def is_bipartite(g: Graph) -> tuple[int, ...] | None:
    """A proper 2-coloring (colors 1, 2) if ``g`` has no odd cycle."""
    side = [0] * g.n
    for s in range(g.n):
        if side[s]:
            continue
        side[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not side[w]:
                    side[w] = 3 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return tuple(side)


# --------------------------------------------------------------------------
# vertex cover


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges)


def min_vertex_cover(g: Graph) -> frozenset[int]:
    """Exact minimum vertex cover by degree-1 / max-degree branching."""
    best: list[frozenset[int]] = [frozenset(range(g.n))]

    def rec(adj: dict[int, set[int]], chosen: frozenset[int]) -> None:
        if len(chosen) >= len(best[0]):
            return
        live = {v: a for v, a in adj.items() if a}
        if not live:
            best[0] = chosen
            return
        # every matching edge needs its own cover vertex
        if len(chosen) + _greedy_matching(live) >= len(best[0]):
            return
        leaf = next((v for v, a in live.items() if len(a) == 1), None)
        if leaf is not None:
            (u,) = live[leaf]
            rec(_remove(live, {u}), chosen | {u})
            return
        v = max(live, key=lambda x: (len(live[x]), -x))
        rec(_remove(live, {v}), chosen | {v})
        nbrs = set(live[v])
        rec(_remove(live, nbrs), chosen | nbrs)

    rec({v: set(g.adj[v]) for v in range(g.n)}, frozenset())
    return best[0] if g.m else frozenset()


def _remove(adj: dict[int, set[int]], gone: set[int]) -> dict[int, set[int]]:
    return {v: a - gone for v, a in adj.items() if v not in gone}


def _greedy_matching(adj: dict[int, set[int]]) -> int:
    used: set[int] = set()
    size = 0
    for v in sorted(adj):
        if v in used:
            continue
        for w in sorted(adj[v]):
            if w not in used:
                used.update((v, w))
                size += 1
                break
    return size


# --------------------------------------------------------------------------
# partitions and groupings


@dataclass(frozen=True)
class Partition:
    buckets: tuple[tuple[int, ...], ...]
    r: int

    @classmethod
    def consecutive(cls, n: int, r: int) -> Partition:
        return cls(tuple(tuple(range(i, min(i + r, n))) for i in range(0, n, r)), r)

    def check(self, n: int) -> None:
        flat = [v for b in self.buckets for v in b]
        if sorted(flat) != list(range(n)):
            raise GraphError("buckets do not partition the vertex set")
        if any(not b for b in self.buckets):
            raise GraphError("empty bucket")
        if any(len(b) > self.r for b in self.buckets):
            raise GraphError(f"bucket larger than capacity r={self.r}")

    def owner(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.buckets) for v in b}


@dataclass(frozen=True)
class LabeledGrouping:
    base: Graph
    partition: Partition
    bucket_graph: Graph
    labels: tuple[int, ...]
    L: int
    owner: dict[int, int] = field(compare=False, repr=False)


def bucket_graph(g: Graph, p: Partition) -> Graph:
    owner = p.owner()
    edges = {
        (min(owner[u], owner[v]), max(owner[u], owner[v]))
        for u, v in g.edges
        if owner[u] != owner[v]
    }
    return Graph(len(p.buckets), edges)


def build_grouping(g: Graph, p: Partition) -> LabeledGrouping:
    """Edge-preserving grouping labelled by a greedy coloring of its square."""
    p.check(g.n)
    bg = bucket_graph(g, p)
    labels = greedy_coloring(square(bg))
    d = bg.max_degree()
    if labels.k > d * d + 1:
        raise AssertionError("greedy square coloring exceeded the degree bound")
    return LabeledGrouping(g, p, bg, labels.colors, labels.k, p.owner())


# --------------------------------------------------------------------------
# spanning-tree partition


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def spanning_tree_partition(g: Graph, r: int) -> Partition:
    """Split a connected graph with max degree <= 5 into tree-connected buckets.

    Every bucket but the last has between ``ceil(r/4)`` and ``r`` vertices.
    The tree is a BFS tree rooted at one of its own leaves, so every vertex has
    at most four children and the children whose leftover parts are below the
    lower bound always fit together with their parent.
    """
    if r < 4:
        raise GraphError("r must be at least 4")
    if not g.is_connected():
        raise GraphError("graph is not connected")
    if g.max_degree() > 5:
        raise GraphError("maximum degree exceeds 5")
    if g.n == 0:
        return Partition((), r)
    lower = -(-r // 4)

    parent = _bfs_parents(g, 0)
    # re-root at a leaf of the BFS tree so the root has a single child
    children = _children(parent, g.n)
    leaf = next(v for v in range(g.n) if not children[v])
    parent = _tree_reroot(parent, children, leaf)
    children = _children(parent, g.n)
    order = _tree_preorder(children, leaf)

    pending: dict[int, list[int]] = {}
    buckets: list[tuple[int, ...]] = []
    for v in reversed(order):
        parts = sorted((pending.pop(c) for c in children[v]), key=lambda p: (-len(p), min(p)))
        total = 1 + sum(len(p) for p in parts)
        keep = []
        for part in parts:
            if total > r and len(part) >= lower:
                buckets.append(tuple(sorted(part)))
                total -= len(part)
            else:
                keep.append(part)
        pending[v] = [v] + [w for part in keep for w in part]
    buckets.append(tuple(sorted(pending[leaf])))
    return Partition(tuple(buckets), r)


def _bfs_parents(g: Graph, root: int) -> list[int]:
    parent = [-1] * g.n
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                queue.append(w)
    return parent


def _children(parent: list[int], n: int) -> list[list[int]]:
    children: list[list[int]] = [[] for _ in range(n)]
    for v, p in enumerate(parent):
        if p >= 0:
            children[p].append(v)
    return children


def _tree_reroot(parent: list[int], children: list[list[int]], root: int) -> list[int]:
    tree_adj = [list(children[v]) + ([parent[v]] if parent[v] >= 0 else []) for v in range(len(parent))]
    new_parent = [-1] * len(parent)
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in tree_adj[v]:
            if w not in seen:
                seen.add(w)
                new_parent[w] = v
                stack.append(w)
    return new_parent


def _tree_preorder(children: list[list[int]], root: int) -> list[int]:
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children[v]))
    return order


# --------------------------------------------------------------------------
# generators


def random_graph_max_degree(n: int, dmax: int, seed: int, density: float = 0.5) -> Graph:
    """Random graph with maximum degree ``dmax``; deterministic in ``seed``."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < dmax and deg[v] < dmax and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)
