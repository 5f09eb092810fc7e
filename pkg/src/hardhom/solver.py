"""Exact solvers for HOM, LIST-HOM and locally injective (list) homomorphisms.

All solvers take a :class:`ListHomInstance`; plain HOM is the special case in
which every list is full.  A witness is a tuple ``phi`` with ``phi[v]`` the
image of vertex ``v`` of ``g`` in ``h``.

Modes: ``"plain"`` asks for a list homomorphism, ``"local"`` additionally asks
that two distinct vertices with a common neighbour get distinct images.
"""

from __future__ import annotations

import itertools
import math
import os
import sys
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .graph import Graph, is_bipartite, is_vertex_cover

MODES = ("plain", "local")
DEFAULT_BUDGET = 10**8

Homomorphism = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """The brute-force enumeration would exceed its candidate budget."""


@dataclass(frozen=True)
class ListHomInstance:
    g: Graph
    h: Graph
    lists: tuple[frozenset[int] | None, ...]

    def __post_init__(self) -> None:
        if len(self.lists) != self.g.n:
            raise ValueError(f"{len(self.lists)} lists for {self.g.n} vertices")
        for v, lst in enumerate(self.lists):
            if lst is not None and any(not 0 <= u < self.h.n for u in lst):
                raise ValueError(f"list of vertex {v} leaves V(h)")

    @classmethod
    def hom(cls, g: Graph, h: Graph) -> ListHomInstance:
        return cls(g, h, (None,) * g.n)

    @classmethod
    def with_lists(cls, g: Graph, h: Graph, lists: Sequence[Iterable[int] | None]) -> ListHomInstance:
        return cls(g, h, tuple(None if lst is None else frozenset(lst) for lst in lists))

    def allowed(self, v: int) -> frozenset[int] | range:
        lst = self.lists[v]
        return range(self.h.n) if lst is None else lst

    def list_mask(self, v: int) -> int:
        lst = self.lists[v]
        if lst is None:
            return (1 << self.h.n) - 1
        return sum(1 << u for u in lst)

    def is_full(self) -> bool:
        return all(lst is None or len(lst) == self.h.n for lst in self.lists)

    def as_hom(self) -> ListHomInstance:
        return ListHomInstance.hom(self.g, self.h)


@dataclass
class SolveStats:
    nodes_explored: int = 0
    assignments_tried: int = 0


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def common_neighbour_pairs(g: Graph) -> list[list[int]]:
    """For each vertex, the other vertices sharing at least one neighbour with it."""
    out: list[set[int]] = [set() for _ in range(g.n)]
    for v in range(g.n):
        nbrs = g.adj[v]
        for a in nbrs:
            out[a].update(nbrs)
    for v in range(g.n):
        out[v].discard(v)
    return [sorted(s) for s in out]


def verify(inst: ListHomInstance, m: Sequence[int], mode: str = "plain") -> bool:
    _check_mode(mode)
    if len(m) != inst.g.n:
        raise ValueError(f"map has length {len(m)}, expected {inst.g.n}")
    if any(not 0 <= u < inst.h.n for u in m):
        raise ValueError("map leaves V(h)")
    for v, u in enumerate(m):
        lst = inst.lists[v]
        if lst is not None and u not in lst:
            return False
    if not all(inst.h.has_edge(m[a], m[b]) for a, b in inst.g.edges):
        return False
    if mode == "local":
        for v in range(inst.g.n):
            images = [m[w] for w in inst.g.adj[v]]
            if len(set(images)) != len(images):
                return False
    return True


# --------------------------------------------------------------------------
# brute force


def enumeration_budget() -> int:
    env = os.environ.get("HARDHOM_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def solve_brute(inst: ListHomInstance, mode: str = "plain", budget: int | None = None) -> Homomorphism | None:
    """Lexicographically first witness by index-order enumeration of all maps.

    Partial maps are discarded as soon as an edge (or, in local mode, a shared
    neighbour) between already-mapped vertices is violated, which never changes
    the order in which complete maps are met.
    """
    _check_mode(mode)
    budget = enumeration_budget() if budget is None else budget
    doms = [sorted(inst.allowed(v)) for v in range(inst.g.n)]
    if math.prod(len(d) for d in doms) > budget:
        raise BudgetExceeded(f"{math.prod(len(d) for d in doms)} candidate maps exceed budget {budget}")
    g, hm = inst.g, inst.h.masks
    earlier = [[w for w in g.adj[v] if w < v] for v in range(g.n)]
    if mode == "local":
        twins = common_neighbour_pairs(g)
        clash = [[w for w in twins[v] if w < v] for v in range(g.n)]
    else:
        clash = [[] for _ in range(g.n)]
    phi = [0] * g.n

    def rec(v: int) -> bool:
        if v == g.n:
            return True
        for u in doms[v]:
            row = hm[u]
            if all(row >> phi[w] & 1 for w in earlier[v]) and all(phi[w] != u for w in clash[v]):
                phi[v] = u
                if rec(v + 1):
                    return True
        return False

    return tuple(phi) if rec(0) else None


# --------------------------------------------------------------------------
# propagation engine


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_at_least(masks: Sequence[int], cand: int, k: int, budget: list[int]) -> bool:
    """Is there a ``k``-clique inside ``cand``?  Answers True when out of budget."""
    if k <= 0:
        return True
    while cand:
        if cand.bit_count() < k:
            return False
        budget[0] -= 1
        if budget[0] < 0:
            return True
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _clique_at_least(masks, cand & masks[v], k - 1, budget):
            return True
    return False


def clique_numbers(g: Graph, cap: int, budget: int = 200_000) -> list[int]:
    """Per-vertex size of the largest clique through it, capped at ``cap``.

    An exhausted search budget reports the cap, so the values are upper
    bounds when the budget runs out and exact otherwise.
    """
    out = []
    masks = g.masks
    for v in range(g.n):
        size = 1
        while size < cap:
            b = [budget]
            if _clique_at_least(masks, masks[v], size, b):
                size += 1
            else:
                break
        out.append(size)
    return out


def _exact_clique_lower(g: Graph, cap: int) -> list[int]:
    # lower bounds: a clique that was actually found (budget exhaustion gives 1)
    out = []
    masks = g.masks
    for v in range(g.n):
        size = 1
        while size < cap:
            b = [200_000]
            found = _clique_at_least(masks, masks[v], size, b)
            if found and b[0] >= 0:
                size += 1
            else:
                break
        out.append(size)
    return out


class _Engine:
    """Maintained arc consistency over bitmask domains."""

    def __init__(self, inst: ListHomInstance, mode: str, *, clique_filter: bool = True):
        _check_mode(mode)
        g, h = inst.g, inst.h
        self.inst = inst
        self.n = g.n
        self.adj = g.adj
        self.hmask = h.masks
        self.local = mode == "local"
        self.neq = common_neighbour_pairs(g) if self.local else None
        self.degree = [max(1, len(a)) for a in g.adj]
        self.weight = [1] * g.n
        self.omega = [1] * g.n
        self._support: dict[int, int] = {}
        doms = [inst.list_mask(v) for v in range(g.n)]
        if clique_filter and g.m:
            doms = self._clique_filter(doms)
        self.initial = doms

    def _clique_filter(self, doms: list[int]) -> list[int]:
        # images of a clique form a clique of the same size
        g, h = self.inst.g, self.inst.h
        need = _exact_clique_lower(g, cap=h.n + 1)
        self.omega = need
        top = max(need)
        if top < 3:
            return doms
        have = clique_numbers(h, cap=top)
        out = []
        for v, d in enumerate(doms):
            if need[v] >= 3:
                d &= sum(1 << u for u in range(h.n) if have[u] >= need[v])
            out.append(d)
        return out

    def support(self, dom: int) -> int:
        if dom & (dom - 1) == 0:
            return self.hmask[dom.bit_length() - 1]
        cached = self._support.get(dom)
        if cached is None:
            cached = 0
            hmask = self.hmask
            m = dom
            while m:
                low = m & -m
                cached |= hmask[low.bit_length() - 1]
                m ^= low
            if len(self._support) > 50_000:
                self._support.clear()
            self._support[dom] = cached
        return cached

    def propagate(self, doms: list[int], queue: list[int]) -> bool:
        adj = self.adj
        support = self.support
        neq = self.neq
        pending = set(queue)
        while queue:
            y = queue.pop()
            pending.discard(y)
            dy = doms[y]
            sup = support(dy)
            for x in adj[y]:
                dx = doms[x]
                nd = dx & sup
                if nd != dx:
                    if not nd:
                        self.weight[x] += 1
                        self.weight[y] += 1
                        return False
                    doms[x] = nd
                    if x not in pending:
                        pending.add(x)
                        queue.append(x)
            if neq is not None and dy & (dy - 1) == 0:
                for x in neq[y]:
                    dx = doms[x]
                    if dx & dy:
                        nd = dx & ~dy
                        if not nd:
                            self.weight[x] += 1
                            self.weight[y] += 1
                            return False
                        doms[x] = nd
                        if x not in pending:
                            pending.add(x)
                            queue.append(x)
        return True

    def select(self, doms: list[int], order: str, scope: Iterable[int] | None = None) -> int | None:
        """Next branching variable among the undecided ones in ``scope``.

        ``index`` takes the first; ``mrv`` the smallest domain; ``wdeg`` the
        smallest domain per failure weight; ``clique`` prefers variables on
        larger cliques (the most rigid structure) and then the smallest domain.
        """
        scope = range(self.n) if scope is None else scope
        if order == "index":
            for x in scope:
                d = doms[x]
                if d & (d - 1):
                    return x
            return None
        best = None
        best_key = None
        degree, weight, omega = self.degree, self.weight, self.omega
        for x in scope:
            d = doms[x]
            if d & (d - 1):
                if order == "wdeg":
                    key = (0, d.bit_count() / weight[x], -degree[x])
                elif order == "clique":
                    key = (-omega[x], -degree[x], d.bit_count())
                else:
                    key = (0, d.bit_count(), -degree[x])
                if best_key is None or key < best_key:
                    best, best_key = x, key
        return best


def _twin_groups(masks: Sequence[int], sig: Sequence[object]) -> list[list[int]]:
    """Groups of vertices any two of which can be swapped by an automorphism.

    Vertices with equal open (or equal closed) neighbourhoods and equal
    signatures are exchangeable by a transposition.
    """
    groups: dict[tuple, list[int]] = {}
    for v, m in enumerate(masks):
        groups.setdefault((0, m, sig[v]), []).append(v)
        groups.setdefault((1, m | 1 << v, sig[v]), []).append(v)
    member_of = list(range(len(masks)))
    for members in groups.values():
        for v in members[1:]:
            member_of[v] = members[0]
    out: dict[int, list[int]] = {}
    for v, root in enumerate(member_of):
        out.setdefault(root, []).append(v)
    cls = [[] for _ in masks]
    for members in out.values():
        for v in members:
            cls[v] = members
    return cls


def _value_twins(inst: ListHomInstance) -> list[list[int]]:
    # the signature of a value is the set of vertices whose list contains it
    sig = [0] * inst.h.n
    for v, lst in enumerate(inst.lists):
        for u in inst.allowed(v):
            sig[u] |= 1 << v
    return _twin_groups(inst.h.masks, sig)


def _variable_twins(inst: ListHomInstance) -> list[list[int]]:
    return _twin_groups(inst.g.masks, [inst.list_mask(v) for v in range(inst.g.n)])


def _search(engine: _Engine, stats: SolveStats) -> Iterator[Homomorphism]:
    """Index-order depth-first search yielding every witness in lexicographic order."""
    doms = list(engine.initial)
    if not all(doms) or not engine.propagate(doms, list(range(engine.n))):
        return
    # frame: [var, remaining values, domains at entry]
    stack: list[list] = []
    x = engine.select(doms, "index")
    if x is None:
        yield tuple(d.bit_length() - 1 for d in doms)
        return
    stack.append([x, doms[x], doms])
    while stack:
        frame = stack[-1]
        var, base = frame[0], frame[2]
        child = None
        while frame[1]:
            low = frame[1] & -frame[1]
            frame[1] ^= low
            stats.nodes_explored += 1
            trial = list(base)
            trial[var] = low
            if engine.propagate(trial, [var]):
                child = trial
                break
        if child is None:
            stack.pop()
            continue
        nxt = engine.select(child, "index")
        if nxt is None:
            yield tuple(d.bit_length() - 1 for d in child)
            continue
        stack.append([nxt, child[nxt], child])


class _Decider:
    """Recursive decision search with component splitting and twin pruning.

    When the undecided variables fall apart into components that share no
    constraint, each is solved on its own and a failing component fails
    the node outright.  With ``symmetry`` on, a failed assignment x -> u
    also removes, for the rest of the node, the twins of u at x and u (with
    its twins) at the twins of x.  Swapping twins while leaving earlier
    decisions alone maps solutions to solutions, so every removal is implied
    by the decisions on the current path.

    Arc consistency folds every constraint towards decided variables into
    the domains, so a component that fails with given domains fails
    whatever path led there; such failures are remembered.
    """

    def __init__(self, engine: _Engine, stats: SolveStats, order: str, symmetry: bool):
        self.engine = engine
        self.stats = stats
        self.order = order
        self.symmetry = symmetry
        inst = engine.inst
        self.vtw = _value_twins(inst) if symmetry else None
        self.xtw = _variable_twins(inst) if symmetry else None
        neq = engine.neq or [()] * engine.n
        self.links = [set(engine.adj[x]) | set(neq[x]) for x in range(engine.n)]
        self.used: Counter[int] = Counter()
        self.decided: set[int] = set()
        self.failed: set[tuple] = set()

    def components(self, free: list[int]) -> list[list[int]]:
        todo = set(free)
        out = []
        links = self.links
        while todo:
            start = todo.pop()
            comp = [start]
            i = 0
            while i < len(comp):
                for y in links[comp[i]]:
                    if y in todo:
                        todo.discard(y)
                        comp.append(y)
                i += 1
            out.append(comp)
        return out

    def run(self, blocks: bool = False) -> list[int] | None:
        doms = list(self.engine.initial)
        if not all(doms) or not self.engine.propagate(doms, list(range(self.engine.n))):
            return None
        if blocks:
            changed = _block_consistency(self.engine, doms)
            if changed is None or (changed and not self.engine.propagate(doms, changed)):
                return None
        return self.solve(doms, list(range(self.engine.n)))

    def pinned(self, doms: list[int], pins: dict[int, int]) -> list[int] | None:
        """A witness with the given variables fixed, found by a full search.

        Pins count as decisions on the path, so twin pruning stays sound.
        """
        doms = list(doms)
        for x, u in pins.items():
            if not doms[x] >> u & 1:
                return None
            doms[x] = 1 << u
        if not self.engine.propagate(doms, list(pins)):
            return None
        for x, u in pins.items():
            self.used[u] += 1
            self.decided.add(x)
        try:
            return self.solve(doms, list(range(self.engine.n)))
        finally:
            for x, u in pins.items():
                self.used[u] -= 1
                self.decided.discard(x)

    def solve(self, doms: list[int], scope: list[int]) -> list[int] | None:
        free = [x for x in scope if doms[x] & (doms[x] - 1)]
        if not free:
            return doms
        for comp in sorted(self.components(free), key=len):
            comp.sort()
            key = (tuple(comp), tuple(doms[x] for x in comp))
            if key in self.failed:
                return None
            doms = self.branch(doms, comp)
            if doms is None:
                if len(self.failed) > 100_000:
                    self.failed.clear()
                self.failed.add(key)
                return None
        return doms

    def branch(self, doms: list[int], comp: list[int]) -> list[int] | None:
        engine, stats = self.engine, self.stats
        x = engine.select(doms, self.order, comp)
        if x is None:
            return doms
        base = list(doms)
        remaining = base[x]
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            if not base[x] & low:
                continue
            u = low.bit_length() - 1
            stats.nodes_explored += 1
            trial = list(base)
            trial[x] = low
            if engine.propagate(trial, [x]):
                self.used[u] += 1
                self.decided.add(x)
                found = self.solve(trial, comp)
                self.used[u] -= 1
                self.decided.discard(x)
                if found is not None:
                    return found
            if self.symmetry and not self.refute(base, x, u):
                return None
            remaining &= base[x]
        return None

    def refute(self, base: list[int], x: int, u: int) -> bool:
        used = self.used
        drop = 1 << u
        if not used[u]:
            for w in self.vtw[u]:
                if not used[w]:
                    drop |= 1 << w
        base[x] &= ~drop
        dirty = []
        for y in self.xtw[x]:
            if y != x and y not in self.decided and base[y] & drop:
                base[y] &= ~drop
                if not base[y]:
                    return False
                dirty.append(y)
        return not dirty or self.engine.propagate(base, dirty)


# --------------------------------------------------------------------------
# consistency over the blocks of the densest part of g

MAX_BLOCK = 24
MAX_TUPLES = 50_000


def _bits(mask: int) -> list[int]:
    return list(_iter_bits(mask))


def _block_relation(engine: _Engine, block: list[int], cuts: list[int], doms: list[int], cache: dict) -> set[tuple[int, ...]]:
    """Image tuples of the cut vertices over all homomorphisms of the block."""
    pos = {x: i for i, x in enumerate(block)}
    edges = tuple(sorted((pos[x], pos[y]) for x in block for y in engine.adj[x] if y in pos and pos[x] < pos[y]))
    key = (edges, tuple(pos[c] for c in cuts), tuple(doms[x] for x in block))
    if key in cache:
        return cache[key]
    h = engine.inst.h
    lists = tuple(frozenset(_bits(doms[x])) for x in block)
    sub = _Engine(ListHomInstance(Graph(len(block), edges), h, lists), "plain", clique_filter=False)
    dec = _Decider(sub, SolveStats(), "clique", True)
    base = list(sub.initial)
    ci = [pos[c] for c in cuts]
    rel: set[tuple[int, ...]] = set()
    seen: list[set[int]] = [set() for _ in cuts]

    def record(found: list[int]) -> None:
        tup = tuple(found[i].bit_length() - 1 for i in ci)
        rel.add(tup)
        for k, u in enumerate(tup):
            seen[k].add(u)

    if not sub.propagate(base, list(range(len(block)))):
        cache[key] = rel
        return rel
    # first the image set of each cut vertex, then the tuples inside it
    for k, i in enumerate(ci):
        for u in _bits(base[i]):
            if u not in seen[k]:
                found = dec.pinned(base, {i: u})
                if found is not None:
                    record(found)
    if len(ci) > 1:
        checks = [0]

        def extend(k: int, pins: dict[int, int], doms_k: list[int]) -> None:
            if k == len(ci):
                tup = tuple(pins[i] for i in ci)
                if tup not in rel:
                    checks[0] += 1
                    if checks[0] > MAX_TUPLES:
                        raise OverflowError
                    found = dec.pinned(base, pins)
                    if found is not None:
                        record(found)
                return
            i = ci[k]
            for u in sorted(seen[k]):
                if doms_k[i] >> u & 1:
                    trial = list(doms_k)
                    trial[i] = 1 << u
                    if sub.propagate(trial, [i]):
                        extend(k + 1, {**pins, i: u}, trial)

        try:
            extend(0, {}, base)
        except OverflowError:
            # too many tuples to settle one by one; keep only the per-vertex images
            rel = set(itertools.product(*(sorted(s) for s in seen)))
    cache[key] = rel
    return rel


def _block_consistency(engine: _Engine, doms: list[int]) -> list[int] | None:
    """Prune cut vertices of the densest subgraph by generalised arc consistency over its blocks.

    The vertices on largest cliques are the most rigid part of g; their
    blocks are small, so the cut-vertex image tuples of each block can be
    listed exactly.  Any homomorphism of g restricts to one of every block,
    and along the block tree the tuples must agree on shared cut vertices.
    Returns the variables whose domains shrank, or None on a wipeout.
    """
    top = max(engine.omega, default=0)
    if top < 3:
        return []
    core = [x for x in range(engine.n) if engine.omega[x] == top]
    sg = nx.Graph()
    sg.add_nodes_from(core)
    members = set(core)
    sg.add_edges_from((x, y) for x in core for y in engine.adj[x] if y in members and x < y)
    cut = set(nx.articulation_points(sg))
    if not cut:
        return []
    scopes = []
    for comp in nx.biconnected_components(sg):
        cs = sorted(comp & cut)
        if cs and len(comp) <= MAX_BLOCK:
            scopes.append((sorted(comp), cs))
    # all relations from the same domains, so that identical blocks share one computation
    cache: dict = {}
    relations = [_block_relation(engine, block, cs, doms, cache) for block, cs in scopes]
    touching: dict[int, list[int]] = {}
    for b, (_, cs) in enumerate(scopes):
        for c in cs:
            touching.setdefault(c, []).append(b)
    changed: set[int] = set()
    queue = list(range(len(scopes)))
    queued = set(queue)
    while queue:
        b = queue.pop()
        queued.discard(b)
        block, cs = scopes[b]
        rel = {t for t in relations[b] if all(doms[c] >> u & 1 for c, u in zip(cs, t))}
        relations[b] = rel
        if not rel:
            return None
        for k, c in enumerate(cs):
            proj = 0
            for t in rel:
                proj |= 1 << t[k]
            nd = doms[c] & proj
            if nd != doms[c]:
                doms[c] = nd
                changed.add(c)
                for other in touching[c]:
                    if other != b and other not in queued:
                        queued.add(other)
                        queue.append(other)
    return sorted(changed)


def _run_deep(fn):
    """Run ``fn`` in a worker thread with room for deep recursion."""
    result: list = []
    errors: list = []

    def target():
        try:
            result.append(fn())
        except BaseException as exc:  # re-raised in the caller
            errors.append(exc)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 200_000))
    size = threading.stack_size(512 * 1024 * 1024)
    try:
        worker = threading.Thread(target=target)
        worker.start()
        worker.join()
    finally:
        threading.stack_size(size)
        sys.setrecursionlimit(old)
    if errors:
        raise errors[0]
    return result[0]


def solve_backtrack(
    inst: ListHomInstance,
    mode: str = "plain",
    *,
    symmetry: bool = True,
    clique_filter: bool = True,
    order: str = "clique",
    blocks: bool = True,
) -> tuple[Homomorphism | None, SolveStats]:
    """Complete backtracking search with propagation; the witness is verified.

    With ``blocks`` the search starts from block consistency on the densest
    part of g (see :func:`_block_consistency`).
    """
    stats = SolveStats()
    engine = _Engine(inst, mode, clique_filter=clique_filter)
    decider = _Decider(engine, stats, order, symmetry)
    run = lambda: decider.run(blocks)
    doms = run() if inst.g.n < 500 else _run_deep(run)
    if doms is None:
        return None, stats
    phi = tuple(d.bit_length() - 1 for d in doms)
    if not verify(inst, phi, mode):
        raise AssertionError("search produced a non-verifying map")
    return phi, stats


def enumerate_all(inst: ListHomInstance, mode: str = "plain", cap: int | None = None) -> tuple[list[Homomorphism], bool]:
    """All witnesses in lexicographic order, truncated to ``cap``; returns ``(witnesses, truncated)``."""
    engine = _Engine(inst, mode)
    out: list[Homomorphism] = []
    for phi in _search(engine, SolveStats()):
        if cap is not None and len(out) >= cap:
            return out, True
        out.append(phi)
    return out, False


# --------------------------------------------------------------------------
# vertex-cover algorithm


def solve_vc(inst: ListHomInstance, cover: Iterable[int]) -> tuple[Homomorphism | None, SolveStats]:
    """Enumerate maps of the cover; extend through the independent rest.

    A map of the cover extends iff it is a list homomorphism of the induced
    subgraph and every outside vertex has a list entry adjacent to all images
    of its neighbours.
    """
    g, h = inst.g, inst.h
    cover = sorted(set(cover))
    if not is_vertex_cover(g, cover):
        raise ValueError("not a vertex cover")
    stats = SolveStats()
    in_cover = set(cover)
    pos = {v: i for i, v in enumerate(cover)}
    earlier = [[w for w in g.adj[v] if w in in_cover and pos[w] < pos[v]] for v in cover]
    outside = [v for v in range(g.n) if v not in in_cover]
    doms = [sorted(inst.allowed(v)) for v in cover]
    out_doms = {v: sorted(inst.allowed(v)) for v in outside}
    phi = [-1] * g.n
    hm = h.masks

    def extend() -> bool:
        for v in outside:
            need = 0
            for w in g.adj[v]:
                need |= 1 << phi[w]
            for u in out_doms[v]:
                if hm[u] & need == need:
                    phi[v] = u
                    break
            else:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(cover):
            stats.assignments_tried += 1
            return extend()
        v = cover[i]
        for u in doms[i]:
            stats.nodes_explored += 1
            row = hm[u]
            if all(row >> phi[w] & 1 for w in earlier[i]):
                phi[v] = u
                if rec(i + 1):
                    return True
        phi[v] = -1
        return False

    if not rec(0):
        return None, stats
    result = tuple(phi)
    if not verify(inst, result):
        raise AssertionError("vertex-cover extension does not verify")
    return result, stats


# --------------------------------------------------------------------------
# bipartite targets


def bipartite_fast_path(inst: ListHomInstance) -> bool | None:
    """Polynomial verdict for plain HOM into a bipartite or edgeless target; None otherwise."""
    if not inst.is_full():
        raise ValueError("fast path applies to full lists only")
    g, h = inst.g, inst.h
    if g.n == 0:
        return True
    if h.n == 0:
        return False
    if h.m == 0:
        return g.m == 0
    if is_bipartite(h) is None:
        return None
    return is_bipartite(g) is not None


def bipartite_witness(inst: ListHomInstance) -> Homomorphism | None:
    """A witness matching the fast-path verdict (collapse onto one edge of ``h``)."""
    verdict = bipartite_fast_path(inst)
    if not verdict:
        return None
    if inst.h.m == 0:
        return (0,) * inst.g.n
    a, b = inst.h.edges[0]
    sides = is_bipartite(inst.g)
    assert sides is not None
    return tuple(a if s == 1 else b for s in sides)


def brute_maps(inst: ListHomInstance) -> Iterator[Homomorphism]:
    """Every candidate map respecting the lists, in lexicographic order."""
    return itertools.product(*(sorted(inst.allowed(v)) for v in range(inst.g.n)))


def image_supports(inst: ListHomInstance, mode: str = "plain") -> list[frozenset[int]]:
    """For every vertex v, the exact set of images phi(v) over all witnesses.

    Each pair (v, u) not already covered by a found witness is settled by a
    complete search with v pinned to u, so the answer covers every witness
    without listing them one by one.
    """
    seen: list[set[int]] = [set() for _ in range(inst.g.n)]
    lists = list(inst.lists)
    for v in range(inst.g.n):
        for u in sorted(inst.allowed(v)):
            if u in seen[v]:
                continue
            pinned = ListHomInstance(inst.g, inst.h, tuple(lists[:v] + [frozenset({u})] + lists[v + 1 :]))
            phi, _ = solve_backtrack(pinned, mode, blocks=False)
            if phi is not None:
                for w, x in enumerate(phi):
                    seen[w].add(x)
    return [frozenset(s) for s in seen]
