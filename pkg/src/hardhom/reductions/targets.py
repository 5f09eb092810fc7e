"""Reductions that reshape the target graph: color-class splitting and gadget embedding."""

from __future__ import annotations

from typing import Sequence

from ..gadgets import build_T_clique, chain_coloring
from ..graph import Graph, VertexColoring, greedy_coloring
from ..solver import ListHomInstance
from .record import ReductionError, ReductionRecord, register


def reduce_bound_chi(inst: ListHomInstance, coloring: VertexColoring) -> ReductionRecord:
    """Split each target vertex u into (u, 1..k) so the target becomes k-colorable.

    Vertex w of g may only use copies (u, coloring[w]); (u, i) and (v, j) are
    adjacent iff uv is an edge and i != j.  Copy (u, i) has index u*k + i - 1.
    """
    g, h = inst.g, inst.h
    if len(coloring.colors) != g.n or not coloring.is_proper(g):
        raise ReductionError("coloring is not a proper coloring of g")
    k = coloring.k
    edges = [
        (u * k + i, v * k + j)
        for u, v in h.edges
        for i in range(k)
        for j in range(k)
        if i != j
    ]
    out_h = Graph(h.n * k, edges)
    lists = tuple(frozenset(u * k + coloring.colors[w] - 1 for u in inst.allowed(w)) for w in range(g.n))
    cert = VertexColoring(tuple(i % k + 1 for i in range(h.n * k)), k)
    data = {"k": k, "colors": list(coloring.colors)}
    return ReductionRecord(ListHomInstance(g, out_h, lists), "l4", inst, data, {"coloring": cert})


register(
    "l4",
    lambda rec, w: tuple(u * rec.decode_data["k"] + c - 1 for u, c in zip(w, rec.decode_data["colors"])),
    lambda data, w: tuple(x // data["k"] for x in w),
)


def restrict_to_lists(inst: ListHomInstance) -> ReductionRecord:
    """Drop target vertices that occur in no list; the witnesses are unchanged up to renaming."""
    keep = sorted(set().union(*(set(inst.allowed(v)) for v in range(inst.g.n)))) if inst.g.n else []
    pos = {u: i for i, u in enumerate(keep)}
    h = Graph(len(keep), [(pos[a], pos[b]) for a, b in inst.h.edges if a in pos and b in pos])
    lists = tuple(frozenset(pos[u] for u in inst.allowed(v)) for v in range(inst.g.n))
    return ReductionRecord(ListHomInstance(inst.g, h, lists), "restrict", inst, {"keep": keep})


def _encode_restrict(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    pos = {u: i for i, u in enumerate(rec.decode_data["keep"])}
    return tuple(pos[u] for u in w)


register("restrict", _encode_restrict, lambda data, w: tuple(data["keep"][x] for x in w))


# --------------------------------------------------------------------------
# lists into plain HOM


MIN_TARGET = 6


def _layout(n: int, h: int, t: int) -> dict[str, int]:
    chain = (t + 8) + h * (t + 7)
    return {"chain": chain, "g_chain": n, "g_a": n + chain, "h_chain": h, "h_a": h + chain}


def reduce_listhom_to_hom(
    inst: ListHomInstance,
    t: int | None = None,
    h_coloring: VertexColoring | None = None,
) -> ReductionRecord:
    """Encode the lists with a rigid chain T_{h,t+3} and a matching A_h.

    Both sides get the chain and the matching, with z_i joined to a_i and b_i.
    Each g-vertex is joined to every a_j and to b_j when j is not in its
    list; target vertex i is joined to all of the matching except b_i.

    Targets with fewer than ``MIN_TARGET`` vertices are padded with isolated
    vertices that occur in no list (lists are made explicit first).  With
    fewer, z_1 and z_h are close enough in the chain that g and the matching
    can fold into it; once d(z_1, z_h) >= 5 no chain vertex is within distance
    two of every z_i, which pins the matching.
    """
    g, h0 = inst.g, inst.h
    pad = max(0, MIN_TARGET - h0.n)
    h = h0.padded(h0.n + pad)
    lists = [frozenset(inst.allowed(v)) for v in range(g.n)]
    if h_coloring is None:
        h_coloring = greedy_coloring(h)
        t = h_coloring.used() if t is None else t
    else:
        if len(h_coloring.colors) != h0.n or not h_coloring.is_proper(h0):
            raise ReductionError("h_coloring is not a proper coloring of h")
        h_coloring = VertexColoring(h_coloring.colors + (1,) * pad, h_coloring.k)
        t = h_coloring.k if t is None else t
    if h_coloring.used() > t:
        raise ReductionError(f"t={t} is below the {h_coloring.used()} colors of the given coloring")
    t = max(t, 1)
    hn, n = h.n, g.n
    chain = build_T_clique(hn, t)
    lay = _layout(n, hn, t)
    zs = [chain.vertex(f"z{i}") for i in range(1, hn + 1)]

    def side(base_n: int, base_edges, extra):
        off_t, off_a = base_n, base_n + lay["chain"]
        edges = list(base_edges)
        edges += [(off_t + a, off_t + b) for a, b in chain.graph.edges]
        for i in range(hn):
            a, b = off_a + 2 * i, off_a + 2 * i + 1
            edges += [(a, b), (off_t + zs[i], a), (off_t + zs[i], b)]
        edges += extra(off_a)
        return Graph(off_a + 2 * hn, edges)

    def g_extra(off_a):
        out = []
        for v in range(n):
            for j in range(hn):
                out.append((v, off_a + 2 * j))
                if j not in lists[v]:
                    out.append((v, off_a + 2 * j + 1))
        return out

    def h_extra(off_a):
        return [(i, off_a + 2 * j) for i in range(hn) for j in range(hn)] + [
            (i, off_a + 2 * j + 1) for i in range(hn) for j in range(hn) if j != i
        ]

    out_g = side(n, g.edges, g_extra)
    out_h = side(hn, h.edges, h_extra)
    chain_cols = chain_coloring(chain, t).colors
    cert = VertexColoring(
        tuple(h_coloring.colors) + chain_cols + (t + 9, t + 10) * hn,
        t + 10,
    )
    data = {"n": n, "h": hn, "source_h": h0.n, "t": t}
    bound = (hn + 1) * (t + 11)
    if out_h.n > bound or out_g.n > n + bound:
        raise AssertionError("gadget embedding exceeded its size bound")
    return ReductionRecord(ListHomInstance.hom(out_g, out_h), "l5", inst, data, {"coloring": cert, "t": t})


def _encode_hom(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    d = rec.decode_data
    n, hn = d["n"], d["h"]
    shift = hn - n
    return tuple(w) + tuple(v + shift for v in range(n, rec.out.g.n))


register("l5", _encode_hom, lambda data, w: tuple(w[: data["n"]]))
