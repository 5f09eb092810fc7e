"""3-coloring to LIST-HOM through bucket configurations.

Two constructions over a partition of the vertices into buckets:

* :func:`reduce_3col_to_listhom` maps every bucket to a *configuration*
  recording its label, the colors of its own vertices and the colors of the
  far endpoints of its outgoing edges.  The target has few buckets.
* :func:`reduce_3col_to_listhom_vc` subdivides every bucket edge with an
  auxiliary vertex, which makes the bucket side a vertex cover.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import defaultdict
from typing import Sequence

from ..graph import Graph, LabeledGrouping, Partition, build_grouping, greedy_coloring, bucket_graph, proper_colorings
from ..solver import ListHomInstance
from .record import ReductionError, ReductionRecord, register

Slot = tuple[int, int, int, int]  # (p, label, q, color), positions 1-based
Configuration = tuple[int, tuple[int, ...], tuple[Slot | None, ...]]


def _prepare(g: Graph, r: int, dmax: int, partition: Partition | None) -> tuple[Graph, Partition]:
    if r < 2:
        raise ReductionError("r must be at least 2")
    if g.max_degree() > dmax:
        raise ReductionError(f"max degree {g.max_degree()} exceeds dmax={dmax}")
    if partition is not None:
        if partition.r > r:
            raise ReductionError("partition capacity exceeds r")
        covered = sum(len(b) for b in partition.buckets)
        if covered < g.n:
            raise ReductionError("partition does not cover every vertex")
        # vertices beyond g.n are isolated padding
        padded = g.padded(covered)
        partition.check(padded.n)
        return padded, partition
    if r > g.n:
        raise ReductionError(f"r={r} exceeds n={g.n}")
    padded = g.padded(-(-g.n // r) * r)
    return padded, Partition.consecutive(padded.n, r)


def outgoing_edges(grouping: LabeledGrouping, b: int) -> list[tuple[int, int]]:
    """Edges (u, v) with u in bucket b and v outside it, in lexicographic order."""
    g, owner = grouping.base, grouping.owner
    return sorted((u, v) for u in grouping.partition.buckets[b] for v in g.adj[u] if owner[v] != b)


def configuration_of(grouping: LabeledGrouping, b: int, colors: dict[int, int] | Sequence[int], width: int) -> Configuration:
    """The configuration a coloring of N[B] induces on bucket ``b``, slots null-padded to ``width``."""
    buckets, owner, labels = grouping.partition.buckets, grouping.owner, grouping.labels
    bucket = buckets[b]
    slots: list[Slot | None] = []
    for u, v in outgoing_edges(grouping, b):
        other = buckets[owner[v]]
        slots.append((bucket.index(u) + 1, labels[owner[v]], other.index(v) + 1, colors[v]))
    if len(slots) > width:
        raise ReductionError(f"bucket {b} has {len(slots)} outgoing edges, more than {width} slots")
    slots += [None] * (width - len(slots))
    return labels[b], tuple(colors[u] for u in bucket), tuple(slots)


def bucket_list(grouping: LabeledGrouping, b: int, width: int) -> list[Configuration]:
    """Configurations induced by every proper 3-coloring of the subgraph on N[B]."""
    g = grouping.base
    closed = g.closed_neighborhood(grouping.partition.buckets[b])
    pos = {v: i for i, v in enumerate(closed)}
    local = Graph(len(closed), [(pos[u], pos[v]) for u, v in g.induced_edges(closed)])
    out = set()
    for col in proper_colorings(local, 3):
        out.add(configuration_of(grouping, b, {v: col[pos[v]] for v in closed}, width))
    return sorted(out, key=_config_key)


def _config_key(c: Configuration) -> tuple:
    label, colors, slots = c
    return label, colors, tuple((0,) if s is None else (1,) + s for s in slots)


def configurations_adjacent(c1: Configuration, c2: Configuration) -> bool:
    """The consistency rule: colors one configuration records for the other's label must match."""
    if c1 == c2:
        return False
    for (la, _, slots), (lb, colors, _) in ((c1, c2), (c2, c1)):
        for s in slots:
            if s is not None and s[1] == lb:
                q, c = s[2], s[3]
                if q > len(colors) or colors[q - 1] != c:
                    return False
    return True


def _interface_key(grouping: LabeledGrouping, config: Configuration, b: int, other: int) -> tuple:
    # colors this configuration assigns to both endpoints of every b--other edge
    la, colors, slots = config
    lo = grouping.labels[other]
    return tuple(sorted((s[0], s[2], colors[s[0] - 1], s[3]) for s in slots if s is not None and s[1] == lo))


def _flip(key: tuple) -> tuple:
    return tuple(sorted((q, p, cq, cp) for p, q, cp, cq in key))


def reduce_3col_to_listhom(
    g: Graph,
    r: int,
    dmax: int = 4,
    partition: Partition | None = None,
    prune_edges: bool = False,
    distinct_labels: bool = False,
) -> ReductionRecord:
    """Buckets of size r become vertices; configurations become the target.

    The target keeps only configurations that occur in some list.  With
    ``prune_edges`` it also keeps only edges between lists of adjacent
    buckets, which leaves the set of list homomorphisms unchanged.
    """
    if dmax not in (4, 5):
        raise ReductionError("dmax must be 4 or 5")
    base, part = _prepare(g, r, dmax, partition)
    grouping = build_grouping(base, part)
    width = dmax * r
    L = dmax * dmax * r * r + 1
    if distinct_labels:
        nb = len(part.buckets)
        if nb > L:
            raise ReductionError(f"{nb} buckets cannot get distinct labels from a palette of {L}")
        grouping = dataclasses.replace(grouping, labels=tuple(range(1, nb + 1)), L=nb)
    if grouping.L > L:
        raise AssertionError("label palette exceeded")
    per_bucket = [bucket_list(grouping, b, width) for b in range(len(part.buckets))]
    configs = sorted({c for lst in per_bucket for c in lst}, key=_config_key)
    index = {c: i for i, c in enumerate(configs)}

    edges: set[tuple[int, int]] = set()
    if prune_edges:
        for b1, b2 in grouping.bucket_graph.edges:
            keyed = defaultdict(list)
            for c in per_bucket[b2]:
                keyed[_interface_key(grouping, c, b2, b1)].append(index[c])
            for c in per_bucket[b1]:
                i = index[c]
                for j in keyed.get(_flip(_interface_key(grouping, c, b1, b2)), ()):
                    edges.add((min(i, j), max(i, j)))
    else:
        for i, j in itertools.combinations(range(len(configs)), 2):
            if configurations_adjacent(configs[i], configs[j]):
                edges.add((i, j))
    h = Graph(len(configs), edges)
    lists = tuple(frozenset(index[c] for c in lst) for lst in per_bucket)
    out = ListHomInstance(grouping.bucket_graph, h, lists)
    data = {
        "n": g.n,
        "r": r,
        "dmax": dmax,
        "buckets": [list(b) for b in part.buckets],
        "labels": list(grouping.labels),
        "configs": [[c[0], list(c[1]), [None if s is None else list(s) for s in c[2]]] for c in configs],
    }
    return ReductionRecord(out, "l2", g, data, {"grouping": grouping})


def _decode_buckets(data: dict, w: Sequence[int]) -> tuple[int, ...]:
    colors = [1] * sum(len(b) for b in data["buckets"])
    for b, bucket in enumerate(data["buckets"]):
        cfg = data["configs"][w[b]]
        for v, c in zip(bucket, cfg[1]):
            colors[v] = c
    return tuple(colors[: data["n"]])


def _encode_buckets(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    grouping: LabeledGrouping = rec.certificates["grouping"]
    colors = list(w) + [1] * (grouping.base.n - len(w))
    width = rec.decode_data["dmax"] * rec.decode_data["r"]
    index = {(c[0], tuple(c[1]), tuple(None if s is None else tuple(s) for s in c[2])): i for i, c in enumerate(rec.decode_data["configs"])}
    return tuple(index[configuration_of(grouping, b, colors, width)] for b in range(len(grouping.partition.buckets)))


register("l2", _encode_buckets, _decode_buckets)


# --------------------------------------------------------------------------
# subdivided variant with a small vertex cover


def reduce_3col_to_listhom_vc(g: Graph, r: int, partition: Partition | None = None) -> ReductionRecord:
    """Buckets plus one auxiliary vertex per bucket edge, into a two-sided configuration graph.

    Left targets are (label, coloring of a bucket); right targets are pairs of
    left targets with different labels, adjacent to both components.
    """
    base, part = _prepare(g, r, 4, partition)
    bg = bucket_graph(base, part)
    labels = greedy_coloring(bg).colors
    L = 5 * r
    if max(labels, default=1) > L:
        raise AssertionError("label palette exceeded")
    buckets = part.buckets
    nb = len(buckets)

    def own_colorings(b: int) -> list[tuple[int, ...]]:
        bucket = buckets[b]
        pos = {v: i for i, v in enumerate(bucket)}
        local = Graph(len(bucket), [(pos[u], pos[v]) for u, v in base.induced_edges(bucket)])
        return list(proper_colorings(local, 3))

    own = [own_colorings(b) for b in range(nb)]
    left = sorted({(labels[b], c) for b in range(nb) for c in own[b]})
    right_lists = []
    owner = part.owner()
    for b1, b2 in bg.edges:
        cross = [(buckets[b1].index(u), buckets[b2].index(v)) for u, v in base.edges if owner[u] == b1 and owner[v] == b2]
        cross += [(buckets[b1].index(v), buckets[b2].index(u)) for u, v in base.edges if owner[u] == b2 and owner[v] == b1]
        ok = []
        for c1 in own[b1]:
            for c2 in own[b2]:
                if all(c1[i] != c2[j] for i, j in cross):
                    ok.append((labels[b1], c1, labels[b2], c2))
                    ok.append((labels[b2], c2, labels[b1], c1))
        right_lists.append(ok)
    right = sorted({q for lst in right_lists for q in lst})
    lindex = {c: i for i, c in enumerate(left)}
    rindex = {q: len(left) + i for i, q in enumerate(right)}
    hedges = [(lindex[(q[0], q[1])], rindex[q]) for q in right] + [(lindex[(q[2], q[3])], rindex[q]) for q in right]
    h = Graph(len(left) + len(right), hedges)
    gedges = []
    for e, (b1, b2) in enumerate(bg.edges):
        gedges += [(b1, nb + e), (b2, nb + e)]
    gprime = Graph(nb + bg.m, gedges)
    lists = [frozenset(lindex[(labels[b], c)] for c in own[b]) for b in range(nb)]
    lists += [frozenset(rindex[q] for q in lst) for lst in right_lists]
    out = ListHomInstance(gprime, h, tuple(lists))
    data = {
        "n": g.n,
        "r": r,
        "buckets": [list(b) for b in buckets],
        "labels": list(labels),
        "configs": [[l, list(c), None] for l, c in left],
        "bucket_edges": [list(e) for e in bg.edges],
        "right": [[q[0], list(q[1]), q[2], list(q[3])] for q in right],
    }
    return ReductionRecord(out, "l3", g, data, {"cover": frozenset(range(nb))})


def _encode_vc(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    data = rec.decode_data
    colors = list(w) + [1] * (sum(len(b) for b in data["buckets"]) - len(w))
    labels = data["labels"]
    own = [tuple(colors[v] for v in b) for b in data["buckets"]]
    lindex = {(l, tuple(c)): i for i, (l, c, _) in enumerate(data["configs"])}
    nleft = len(lindex)
    rindex = {(a, tuple(c1), b, tuple(c2)): nleft + i for i, (a, c1, b, c2) in enumerate(data["right"])}
    phi = [lindex[(labels[b], own[b])] for b in range(len(own))]
    for b1, b2 in data["bucket_edges"]:
        phi.append(rindex[(labels[b1], own[b1], labels[b2], own[b2])])
    return tuple(phi)


register("l3", _encode_vc, _decode_buckets)
