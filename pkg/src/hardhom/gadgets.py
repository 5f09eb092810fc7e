"""Rigid gadget graphs used to force list constraints inside a plain HOM instance.

Every gadget records its distinguished vertices in ``marks``: a role name
mapped to a tuple of vertex indices (singletons for roles like ``z``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, VertexColoring


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    marks: dict[str, tuple[int, ...]] = field(default_factory=dict)
    kind: str = ""
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for role, vs in self.marks.items():
            if any(not 0 <= v < self.graph.n for v in vs):
                raise ValueError(f"mark {role} out of range")

    def vertex(self, role: str) -> int:
        (v,) = self.marks[role]
        return v


def build_D() -> GadgetGraph:
    """A 5-cycle x1..x5 plus an apex z joined to all of it."""
    edges = [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]
    marks = {"z": (0,)} | {f"x{i}": (i,) for i in range(1, 6)}
    return GadgetGraph(Graph(6, edges), marks, "D")


def build_T(k: int) -> GadgetGraph:
    """k+1 copies of D in a row; the apex of each copy is the x1 of the previous one.

    Marks ``z1..zk`` are the shared vertices, ``apex`` is the first apex and
    ``C1..C{k+1}`` list the cycle of each copy in order x1..x5.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = []
    marks: dict[str, tuple[int, ...]] = {"apex": (0,)}
    apex, nxt = 0, 1
    for j in range(1, k + 2):
        cyc = tuple(range(nxt, nxt + 5))
        nxt += 5
        edges += [(apex, x) for x in cyc]
        edges += [(cyc[i], cyc[(i + 1) % 5]) for i in range(5)]
        marks[f"C{j}"] = cyc
        if j <= k:
            marks[f"z{j}"] = (cyc[0],)
        apex = cyc[0]
    return GadgetGraph(Graph(nxt, edges), marks, "T", (k,))


def build_T_clique(k: int, t: int) -> GadgetGraph:
    """Like :func:`build_T` with every apex widened into a clique of size t+3.

    Block j is a clique ``Q{j}`` fully joined to a 5-cycle ``C{j}``.  The
    x1-vertex of ``C{j}`` is ``z{j}`` and doubles as a member of ``Q{j+1}``.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be at least 1")
    edges = []
    marks: dict[str, tuple[int, ...]] = {}
    nxt = 0
    carried: tuple[int, ...] = ()
    for j in range(1, k + 2):
        fresh = t + 3 - len(carried)
        clique = carried + tuple(range(nxt, nxt + fresh))
        nxt += fresh
        cyc = tuple(range(nxt, nxt + 5))
        nxt += 5
        edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
        edges += [(q, x) for q in clique for x in cyc]
        edges += [(cyc[i], cyc[(i + 1) % 5]) for i in range(5)]
        marks[f"Q{j}"] = clique
        marks[f"C{j}"] = cyc
        if j <= k:
            marks[f"z{j}"] = (cyc[0],)
        carried = (cyc[0],)
    return GadgetGraph(Graph(nxt, edges), marks, "Tclique", (k, t))


def build_A(h: int) -> GadgetGraph:
    """A perfect matching a_i - b_i on 2h vertices (a_i = 2i-2, b_i = 2i-1)."""
    if h < 1:
        raise ValueError("h must be at least 1")
    marks = {"a": tuple(range(0, 2 * h, 2)), "b": tuple(range(1, 2 * h, 2))}
    return GadgetGraph(Graph(2 * h, [(2 * i, 2 * i + 1) for i in range(h)]), marks, "A", (h,))


def blocks(tg: GadgetGraph) -> list[tuple[int, ...]]:
    """Vertex sets of the blocks of a widened chain, in order."""
    k = tg.params[0]
    return [tg.marks[f"Q{j}"] + tg.marks[f"C{j}"] for j in range(1, k + 2)]


def chain_coloring(tg: GadgetGraph, t: int) -> VertexColoring:
    """Left-to-right coloring of a widened chain inside a palette of t+8 colors."""
    if tg.kind != "Tclique" or tg.params[1] != t:
        raise ValueError("expected a chain built by build_T_clique(k, t)")
    k = tg.params[0]
    palette = t + 8
    colors = [0] * tg.graph.n
    for j in range(1, k + 2):
        clique = tg.marks[f"Q{j}"]
        taken = {colors[q] for q in clique if colors[q]}
        free = (c for c in range(1, palette + 1) if c not in taken)
        for q in clique:
            if not colors[q]:
                colors[q] = next(free)
        rest = [c for c in range(1, palette + 1) if c not in {colors[q] for q in clique}]
        a, b, c = rest[:3]
        for x, col in zip(tg.marks[f"C{j}"], (a, b, a, b, c)):
            colors[x] = col
    out = VertexColoring(tuple(colors), palette)
    assert out.is_proper(tg.graph)
    return out
