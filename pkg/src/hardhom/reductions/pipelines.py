"""End-to-end chains from 3-coloring to plain HOM.

Each pipeline returns a record whose ``stages`` are the individual
reductions in order; the top-level record maps 3-colorings of the input
to homomorphisms of the final instance and back.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from ..graph import Graph, Partition, VertexColoring, greedy_coloring, is_vertex_cover
from .configurations import reduce_3col_to_listhom, reduce_3col_to_listhom_vc
from .record import ReductionError, ReductionRecord, decode_data_only, encode_witness, register
from .sizes import hom_side_bound
from .targets import reduce_bound_chi, reduce_listhom_to_hom, restrict_to_lists


def _chain(kind: str, g: Graph, stages: list[ReductionRecord], certificates: dict, mode: str = "plain") -> ReductionRecord:
    data = {"stages": [{"kind": s.kind, "data": s.decode_data} for s in stages]}
    return ReductionRecord(stages[-1].out, kind, g, data, certificates, tuple(stages), mode)


def _decode_chain(data: dict, w: Sequence[int]) -> tuple[int, ...]:
    for stage in reversed(data["stages"]):
        w = decode_data_only(stage["kind"], stage["data"], w)
    return tuple(w)


def _encode_chain(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    for stage in rec.stages:
        w = encode_witness(stage, w)
    return tuple(w)


for _kind in ("main", "chi", "vc", "local"):
    register(_kind, _encode_chain, _decode_chain)


def _check_input(g: Graph, r: int) -> None:
    if g.max_degree() > 4:
        raise ReductionError(f"max degree {g.max_degree()} exceeds 4")
    if r < 2:
        raise ReductionError("r must be at least 2")


def _size_check(l5: ReductionRecord) -> None:
    d = l5.decode_data
    if l5.out.h.n > hom_side_bound(d["h"], d["t"]):
        raise AssertionError("final target exceeds (h+1)(t+11)")


def pipeline_main(g: Graph, r: int) -> ReductionRecord:
    _check_input(g, r)
    l2 = reduce_3col_to_listhom(g, r, prune_edges=True)
    l5 = reduce_listhom_to_hom(l2.out)
    _size_check(l5)
    return _chain("main", g, [l2, l5], {"coloring": l5.certificates["coloring"]})


def pipeline_local(g: Graph, r: int) -> ReductionRecord:
    """The main chain under locally injective semantics.

    The gadget step gives all bucket vertices common neighbours, so a locally
    injective witness must be injective on them; distinct bucket labels make
    the encoded witness so.
    """
    _check_input(g, r)
    l2 = reduce_3col_to_listhom(g, r, prune_edges=True, distinct_labels=True)
    l5 = reduce_listhom_to_hom(l2.out)
    _size_check(l5)
    stages = [dataclasses.replace(s, mode="local") for s in (l2, l5)]
    return _chain("local", g, stages, {"coloring": l5.certificates["coloring"]}, "local")


def color_class_partition(g: Graph, r: int, k: int = 5) -> tuple[Graph, Partition, VertexColoring, int]:
    """Greedy-color g, pad every color class to a multiple of r with isolated vertices, group classes into r-sets."""
    col = greedy_coloring(g)
    if col.used() > k:
        raise ReductionError(f"greedy coloring used {col.used()} > {k} colors")
    classes = [[v for v in range(g.n) if col.colors[v] == c] for c in range(1, k + 1)]
    colors = list(col.colors)
    nxt = g.n
    for c, members in enumerate(classes, start=1):
        while len(members) % r:
            members.append(nxt)
            colors.append(c)
            nxt += 1
    buckets = [tuple(members[i : i + r]) for members in classes for i in range(0, len(members), r)]
    return g.padded(nxt), Partition(tuple(buckets), r), VertexColoring(tuple(colors), k), nxt - g.n


def pipeline_chi(g: Graph, r: int) -> ReductionRecord:
    """Monochromatic buckets keep the bucket graph 5-colorable; the final target needs at most 15 colors."""
    _check_input(g, r)
    _, part, colors, added = color_class_partition(g, r)
    l2 = reduce_3col_to_listhom(g, r, partition=part, prune_edges=True)
    bucket_colors = VertexColoring(tuple(colors.colors[b[0]] for b in part.buckets), 5)
    l4 = reduce_bound_chi(l2.out, bucket_colors)
    narrow = restrict_to_lists(l4.out)
    keep = narrow.decode_data["keep"]
    cert4 = l4.certificates["coloring"]
    h_col = VertexColoring(tuple(cert4.colors[u] for u in keep), 5)
    l5 = reduce_listhom_to_hom(narrow.out, t=5, h_coloring=h_col)
    _size_check(l5)
    final = l5.certificates["coloring"]
    if final.k > 15 or not final.is_proper(l5.out.h):
        raise AssertionError("final coloring certificate failed")
    stages = [l2, l4, narrow, l5]
    return _chain("chi", g, stages, {"coloring": final, "padding": added})


def pipeline_vc(g: Graph, r: int) -> ReductionRecord:
    """Subdivided buckets then gadget embedding; reports a vertex cover of the final pattern graph."""
    _check_input(g, r)
    l3 = reduce_3col_to_listhom_vc(g, r)
    l5 = reduce_listhom_to_hom(l3.out)
    _size_check(l5)
    n1 = l3.out.g.n
    cover = frozenset(l3.certificates["cover"]) | frozenset(range(n1, l5.out.g.n))
    if not is_vertex_cover(l5.out.g, cover):
        raise AssertionError("reported cover misses an edge")
    d = l5.decode_data
    bound = len(l3.certificates["cover"]) + hom_side_bound(d["h"], d["t"])
    return _chain("vc", g, [l3, l5], {"cover": cover, "cover_bound": bound, "coloring": l5.certificates["coloring"]})
