"""The twelve acceptance criteria, one test each.

Every test reports a single ``criterion N: PASS/FAIL`` line (visible with
``-s`` and repeated in the terminal summary).  Heavy corpus runs are cached
so that criteria sharing a corpus build it once.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import time

import pytest

from corpus import high_degree_graphs, random_listhom, three_col_corpus
from hardhom.gadgets import blocks, build_D, build_T, build_T_clique
from hardhom.graph import (
    find_k_coloring,
    greedy_coloring,
    is_bipartite,
    is_three_colorable,
    is_vertex_cover,
    min_vertex_cover,
)
from hardhom.reductions import (
    decode_witness,
    degree_reduce,
    encode_witness,
    pipeline_chi,
    pipeline_local,
    pipeline_main,
    pipeline_vc,
    reduce_3col_to_listhom,
    reduce_3col_to_listhom_vc,
    reduce_bound_chi,
    reduce_listhom_to_hom,
)
from hardhom.reductions.record import source_accepts
from hardhom.reductions.sizes import (
    config_graph_bound,
    config_graph_size,
    hom_side_bound,
    vc_graph_bound,
    vc_graph_size,
)
from hardhom.solver import (
    ListHomInstance,
    bipartite_fast_path,
    enumerate_all,
    image_supports,
    solve_backtrack,
    solve_brute,
    solve_vc,
    verify,
)

PIPELINES = {"main": pipeline_main, "chi": pipeline_chi, "vc": pipeline_vc, "local": pipeline_local}


@functools.lru_cache(maxsize=None)
def oracle(idx: int) -> bool:
    return is_three_colorable(three_col_corpus()[idx])


@functools.lru_cache(maxsize=None)
def config_runs(kind: str) -> tuple[dict, ...]:
    """Solve every corpus reduction for r in {2, 3}; keep verdicts and witnesses only."""
    build = reduce_3col_to_listhom if kind == "l2" else reduce_3col_to_listhom_vc
    rows = []
    for idx, g in enumerate(three_col_corpus()):
        for r in (2, 3):
            if r > g.n:
                continue
            rec = build(g, r)
            phi, _ = solve_backtrack(rec.out)
            row = {"idx": idx, "r": r, "n": g.n, "truth": oracle(idx), "sat": phi is not None}
            if phi is not None:
                row["decoded_ok"] = source_accepts(g, decode_witness(rec, phi))
                row["local_ok"] = verify(rec.out, phi, "local")
            if kind == "l3":
                cover = rec.certificates["cover"]
                row["bipartite"] = is_bipartite(rec.out.g) is not None
                row["cover_ok"] = is_vertex_cover(rec.out.g, cover) and len(cover) <= math.ceil(g.n / r)
            rows.append(row)
    return tuple(rows)


def _round_trips(rec, coloring) -> int:
    """Push a coloring through every stage both ways; returns the number of stages checked."""
    w = tuple(coloring)
    for stage in rec.stages:
        fwd = encode_witness(stage, w)
        back = decode_witness(stage, fwd)
        assert source_accepts(stage.source, back, stage.mode)
        again = encode_witness(stage, back)
        assert verify(stage.out, again, stage.mode)
        w = fwd
    top = encode_witness(rec, coloring)
    assert source_accepts(rec.source, decode_witness(rec, top), rec.mode)
    return len(rec.stages)


@functools.lru_cache(maxsize=None)
def pipeline_runs(name: str) -> dict:
    """Run a pipeline at r = 2 over the corpus.

    Satisfiable inputs are witnessed constructively by encoding the oracle's
    coloring; unsatisfiable ones are refuted by the backtracking solver.
    """
    stats = {"mismatch": [], "runs": 0, "certs": 0, "stages": 0, "sat": 0, "seconds": 0.0}
    start = time.perf_counter()
    for idx, g in enumerate(three_col_corpus()):
        if g.n < 2:
            continue
        rec = PIPELINES[name](g, 2)
        stats["runs"] += 1
        if name == "chi":
            cert = rec.certificates["coloring"]
            assert cert.k <= 15 and cert.is_proper(rec.out.h)
            assert rec.certificates["padding"] <= 5 * 2
            stats["certs"] += 1
        if name == "vc":
            cover = rec.certificates["cover"]
            assert is_vertex_cover(rec.out.g, cover) and len(cover) <= rec.certificates["cover_bound"]
            stats["certs"] += 1
        if name == "local":
            assert rec.mode == "local"
        if oracle(idx):
            coloring = find_k_coloring(g, 3)
            w = encode_witness(rec, coloring)
            sat = verify(rec.out, w, rec.mode) and source_accepts(g, decode_witness(rec, w))
            stats["sat"] += 1
            stats["stages"] += _round_trips(rec, coloring)
        else:
            phi, _ = solve_backtrack(rec.out, rec.mode)
            sat = phi is not None
        if sat != oracle(idx):
            stats["mismatch"].append(idx)
    stats["seconds"] = time.perf_counter() - start
    return stats


# --------------------------------------------------------------------------


def test_criterion_01_d_rigidity(report):
    d = build_D()
    inst = ListHomInstance.hom(d.graph, d.graph)
    z = d.vertex("z")
    start = time.perf_counter()
    found = [m for m in itertools.product(range(6), repeat=6) if verify(inst, m)]
    elapsed = time.perf_counter() - start
    fixes = all(m[z] == z and all(m[x] != z for x in range(6) if x != z) for m in found)
    ok = len(found) == 10 and fixes and elapsed < 1.0
    report(1, ok, f"{len(found)} self-homomorphisms of D among 6^6 maps, all fix z: {fixes}, {elapsed:.2f}s")


def test_criterion_02_t_rigidity(report):
    start = time.perf_counter()
    problems = []
    counts = []
    for k in (1, 2, 3):
        tg = build_T(k)
        witnesses, truncated = enumerate_all(ListHomInstance.hom(tg.graph, tg.graph))
        counts.append(len(witnesses))
        zs = [tg.vertex(f"z{i}") for i in range(1, k + 1)]
        if truncated or not witnesses or any(phi[z] != z for phi in witnesses for z in zs):
            problems.append(f"T_{k}")
    for k in (1, 2):
        for t in (1, 2):
            tg = build_T_clique(k, t)
            supports = image_supports(ListHomInstance.hom(tg.graph, tg.graph))
            zs = [tg.vertex(f"z{i}") for i in range(1, k + 1)]
            fixed = all(supports[z] == {z} for z in zs)
            kept = all(supports[v] <= set(b) for b in blocks(tg) for v in b)
            if not (fixed and kept):
                problems.append(f"T_{k},{t + 3}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    report(2, ok, f"T_k witness counts {counts}, widened chains checked by image supports, failures {problems}, {elapsed:.1f}s")


def test_criterion_03_config_reduction_equisat(report):
    start = time.perf_counter()
    rows = config_runs("l2")
    elapsed = time.perf_counter() - start
    bad = [(r["idx"], r["r"]) for r in rows if r["sat"] != r["truth"] or not r.get("decoded_ok", True)]
    ok = not bad and elapsed < 300
    report(3, ok, f"{len(rows)} reductions (r=2,3), {len(bad)} mismatches, {elapsed:.1f}s")


def test_criterion_04_subdivided_reduction(report):
    rows = config_runs("l3")
    bad = [(r["idx"], r["r"]) for r in rows if r["sat"] != r["truth"] or not r.get("decoded_ok", True)]
    structure = [(r["idx"], r["r"]) for r in rows if not (r["bipartite"] and r["cover_ok"])]
    ok = not bad and not structure
    report(4, ok, f"{len(rows)} reductions, {len(bad)} mismatches, {len(structure)} structural failures")


def test_criterion_05_bounded_chromatic_target(report):
    rng = random.Random(5)
    mismatches = improper = 0
    for _ in range(100):
        inst = random_listhom(rng, 6, 4)
        coloring = greedy_coloring(inst.g)
        rec = reduce_bound_chi(inst, coloring)
        truth = solve_brute(inst) is not None
        out = solve_brute(rec.out)
        mismatches += truth != (out is not None)
        cert = rec.certificates["coloring"]
        improper += not (cert.is_proper(rec.out.h) and cert.k <= coloring.k and rec.out.h.n == coloring.k * inst.h.n)
        if out is not None:
            assert verify(inst, decode_witness(rec, out))
    report(5, mismatches == 0 and improper == 0, f"100 instances, {mismatches} mismatches, {improper} certificate failures")


def test_criterion_06_lists_to_plain_hom(report):
    rng = random.Random(6)
    mismatches = size_bad = cert_bad = 0
    start = time.perf_counter()
    for _ in range(100):
        inst = random_listhom(rng, 4, 3)
        rec = reduce_listhom_to_hom(inst)
        truth = solve_brute(inst) is not None
        phi, _ = solve_backtrack(rec.out)
        mismatches += truth != (phi is not None)
        if phi is not None:
            assert verify(inst, decode_witness(rec, phi))
        h, t = rec.decode_data["h"], rec.decode_data["t"]
        expected = h + (t + 8) + h * (t + 7) + 2 * h
        size_bad += rec.out.h.n != expected or rec.out.h.n > hom_side_bound(h, t)
        cert = rec.certificates["coloring"]
        cert_bad += not (cert.is_proper(rec.out.h) and cert.used() <= t + 10)
    elapsed = time.perf_counter() - start
    ok = mismatches == cert_bad == size_bad == 0 and elapsed < 300
    report(6, ok, f"100 instances, {mismatches} mismatches, {size_bad} size violations, {cert_bad} bad colorings, {elapsed:.1f}s")


@pytest.mark.parametrize("name", ["main", "chi", "vc", "local"])
def test_criterion_07_pipelines(report, name):
    stats = pipeline_runs(name)
    ok = not stats["mismatch"]
    extra = f", {stats['certs']} certificates verified" if stats["certs"] else ""
    report(7, ok, f"pipeline_{name}: {stats['runs']} graphs, mismatches {stats['mismatch']}{extra}, {stats['seconds']:.0f}s")


def test_criterion_08_solver_cross_check(report):
    rng = random.Random(8)
    disagree = bound_bad = 0
    for _ in range(500):
        inst = random_listhom(rng, 8, 5)
        brute = solve_brute(inst)
        back, _ = solve_backtrack(inst)
        cover = min_vertex_cover(inst.g)
        vc, st = solve_vc(inst, cover)
        verdicts = {brute is not None, back is not None, vc is not None}
        if inst.is_full():
            fast = bipartite_fast_path(inst)
            if fast is not None:
                verdicts.add(fast)
        disagree += len(verdicts) != 1
        bound_bad += st.assignments_tried > inst.h.n ** len(cover)
    report(8, disagree == 0 and bound_bad == 0, f"500 instances, {disagree} disagreements, {bound_bad} h^|C| bound violations")


def test_criterion_09_config_witnesses_locally_injective(report):
    rows = [r for r in config_runs("l2") if r["sat"]]
    bad = [(r["idx"], r["r"]) for r in rows if not r["local_ok"]]
    report(9, bool(rows) and not bad, f"{len(rows)} satisfiable reductions, {len(bad)} witnesses not locally injective")


def test_criterion_10_degree_reduction(report):
    graphs = high_degree_graphs()
    bad = []
    for i, g in enumerate(graphs):
        out, _ = degree_reduce(g)
        big = [g.degree(v) for v in range(g.n) if g.degree(v) > 5]
        expected = g.n - len(big) + sum(d + 2 * (d - 1) for d in big)
        if out.max_degree() > 5 or out.n != expected or is_three_colorable(out) != is_three_colorable(g):
            bad.append(i)
    ok = len(graphs) >= 50 and all(g.n <= 9 for g in graphs) and not bad
    report(10, ok, f"{len(graphs)} graphs with a degree 6/7 vertex, failures {bad}")


def test_criterion_11_symbolic_sizes(report):
    rows = []
    for r in (2, 3, 4):
        L = 16 * r * r + 1
        full = L * 3**r * (r * r * L * 3) ** (4 * r)
        vc = 5 * r * 3**r + 25 * r * r * 3 ** (2 * r)
        assert config_graph_size(r) == full and vc_graph_size(r) == vc
        rows.append(full <= r ** (50 * r) and vc <= 300**r)
    # reference values for r = 2
    assert config_graph_size(2) == 65 * 9 * 780**8 and vc_graph_size(2) == 8190
    report(11, all(rows), f"r=2,3,4 both bounds hold: {rows}")


@pytest.mark.parametrize("name", ["main", "chi", "vc", "local"])
def test_criterion_12_round_trips(report, name):
    stats = pipeline_runs(name)
    ok = stats["sat"] > 0 and not stats["mismatch"]
    report(12, ok, f"pipeline_{name}: {stats['sat']} satisfiable runs, {stats['stages']} stage round trips verified")
