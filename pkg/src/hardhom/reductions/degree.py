"""Degree reduction preserving 3-colorability.

A vertex v of degree d > 5 is replaced by copies v_1..v_d strung together by
triangles: v_i, a_i, b_i form a triangle and v_{i+1} is joined to a_i and b_i,
so every proper 3-coloring gives all copies the same color.  The i-th
neighbour of v (in index order) attaches to v_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph

MAX_KEPT_DEGREE = 5


@dataclass(frozen=True)
class DegreeMap:
    """Where each original vertex went: its copies, and the triangle helpers."""

    copies: tuple[tuple[int, ...], ...]
    helpers: tuple[tuple[tuple[int, int], ...], ...]

    def representative(self, v: int) -> int:
        return self.copies[v][0]

    def decode(self, colors) -> tuple[int, ...]:
        return tuple(colors[c[0]] for c in self.copies)

    def encode(self, colors, n_out: int) -> tuple[int, ...]:
        out = [0] * n_out
        for v, col in enumerate(colors):
            for c in self.copies[v]:
                out[c] = col
            a_col, b_col = (x for x in (1, 2, 3) if x != col)
            for a, b in self.helpers[v]:
                out[a], out[b] = a_col, b_col
        return tuple(out)


def degree_reduce(g: Graph) -> tuple[Graph, DegreeMap]:
    copies: list[tuple[int, ...]] = []
    helpers: list[tuple[tuple[int, int], ...]] = []
    edges: list[tuple[int, int]] = []
    nxt = 0
    for v in range(g.n):
        d = g.degree(v)
        if d <= MAX_KEPT_DEGREE:
            copies.append((nxt,))
            helpers.append(())
            nxt += 1
            continue
        vs = tuple(range(nxt, nxt + d))
        pairs = tuple((nxt + d + 2 * i, nxt + d + 2 * i + 1) for i in range(d - 1))
        nxt += d + 2 * (d - 1)
        for i, (a, b) in enumerate(pairs):
            edges += [(vs[i], a), (a, b), (b, vs[i]), (vs[i + 1], a), (vs[i + 1], b)]
        copies.append(vs)
        helpers.append(pairs)

    def attach(v: int, u: int) -> int:
        cs = copies[v]
        return cs[0] if len(cs) == 1 else cs[g.adj[v].index(u)]

    edges += [(attach(u, v), attach(v, u)) for u, v in g.edges]
    return Graph(nxt, edges), DegreeMap(tuple(copies), tuple(helpers))
