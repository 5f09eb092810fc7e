"""Command-line front end.

Exit status: 0 satisfiable / valid, 1 unsatisfiable / invalid, 2 bad input
or exhausted budget.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import random
import sys
import time
from typing import Callable, Sequence

from . import gadgets
from .graph import Graph, greedy_coloring, min_vertex_cover, random_graph_max_degree
from .io import (
    ParseError,
    format_certificate,
    format_graph,
    format_record,
    parse_certificate,
    parse_graph,
    parse_record,
    read_text,
    write_text,
)
from .reductions import (
    ReductionError,
    ReductionRecord,
    degree_reduce,
    pipeline_chi,
    pipeline_local,
    pipeline_main,
    pipeline_vc,
    reduce_3col_to_listhom,
    reduce_3col_to_listhom_vc,
    reduce_bound_chi,
    reduce_listhom_to_hom,
)
from .reductions import sizes
from .solver import (
    BudgetExceeded,
    ListHomInstance,
    SolveStats,
    bipartite_fast_path,
    bipartite_witness,
    solve_backtrack,
    solve_brute,
    solve_vc,
    verify,
)

SAT, UNSAT, BAD_INPUT = 0, 1, 2
STRATEGIES = ("brute", "backtrack", "vc", "auto")
GRAPH_LEMMAS = ("l2", "l3", "deg", "main", "chi", "vc", "local")
BUNDLE_LEMMAS = ("l4", "l5")


class InputError(Exception):
    pass


def _instance(inst: ListHomInstance, mode: str) -> tuple[ListHomInstance, str]:
    if mode == "hom":
        return inst.as_hom(), "plain"
    return inst, "local" if mode == "local" else "plain"


def _matching_lower_bound(g: Graph) -> int:
    used: set[int] = set()
    size = 0
    for u, v in g.edges:
        if u not in used and v not in used:
            used |= {u, v}
            size += 1
    return size


def solve_instance(
    inst: ListHomInstance,
    mode: str,
    strategy: str,
    budget: int | None = None,
    vc_threshold: int = 12,
) -> tuple[tuple[int, ...] | None, SolveStats, str]:
    """Run one strategy; returns the witness, stats and the strategy actually used."""
    if strategy == "brute":
        return solve_brute(inst, mode, budget), SolveStats(), "brute"
    if strategy == "backtrack":
        phi, stats = solve_backtrack(inst, mode)
        return phi, stats, "backtrack"
    if strategy == "vc":
        if mode != "plain":
            raise InputError("the vc strategy solves plain (list) homomorphism only")
        phi, stats = solve_vc(inst, min_vertex_cover(inst.g))
        return phi, stats, "vc"
    # auto
    if mode == "plain" and inst.is_full():
        verdict = bipartite_fast_path(inst)
        if verdict is not None:
            return bipartite_witness(inst), SolveStats(), "bipartite"
    if mode == "plain" and _matching_lower_bound(inst.g) <= vc_threshold:
        cover = min_vertex_cover(inst.g)
        if len(cover) <= vc_threshold:
            phi, stats = solve_vc(inst, cover)
            return phi, stats, "vc"
    phi, stats = solve_backtrack(inst, mode)
    return phi, stats, "backtrack"


def _emit(text: str, path: str | None) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# verbs


def cmd_solve(args: argparse.Namespace) -> int:
    inst, mode = _instance(parse_record(read_text(args.instance)).instance, args.mode)
    phi, stats, used = solve_instance(inst, mode, args.strategy, args.budget, args.vc_threshold)
    print(f"c strategy {used}")
    print(f"c nodes_explored {stats.nodes_explored} assignments_tried {stats.assignments_tried}")
    if phi is None:
        print("s UNSATISFIABLE")
        return UNSAT
    print("s SATISFIABLE")
    if args.cert:
        write_text(args.cert, format_certificate(phi))
    else:
        sys.stdout.write(format_certificate(phi))
    return SAT


def cmd_verify(args: argparse.Namespace) -> int:
    inst, mode = _instance(parse_record(read_text(args.instance)).instance, args.mode)
    phi = parse_certificate(read_text(args.cert), inst.g.n, inst.h.n)
    ok = verify(inst, phi, mode)
    print("valid" if ok else "invalid")
    return SAT if ok else UNSAT


def _check(label: str, value: int, bound: int) -> str:
    return f"{label} {value} <= {bound}: {'ok' if value <= bound else 'FAIL'}"


def _report(rec: ReductionRecord, args: argparse.Namespace) -> list[str]:
    out = [f"kind {rec.kind}", f"|V(G')| {rec.out.g.n}", f"|V(H')| {rec.out.h.n}"]
    r = args.r
    if rec.kind == "l2":
        n = rec.decode_data["n"]
        out.append(_check("|V(G')| vs ceil(n/r)", rec.out.g.n, -(-n // r)))
        out.append(_check("|V(H')| vs full configuration count", rec.out.h.n, sizes.config_graph_size_with_nulls(r)))
    elif rec.kind == "l3":
        out.append(_check("cover vs ceil(n/r)", len(rec.certificates["cover"]), -(-rec.decode_data["n"] // r)))
        out.append(_check("|V(H')| vs two-sided configuration count", rec.out.h.n, sizes.vc_graph_size(r)))
    elif rec.kind == "l4":
        out.append(_check("|V(H')| vs k|V(H)|", rec.out.h.n, rec.decode_data["k"] * rec.source.h.n))
    stages = rec.stages or (rec,)
    last = stages[-1]
    if last.kind == "l5":
        d = last.decode_data
        out.append(_check("|V(H')| vs (h+1)(t+11)", rec.out.h.n, sizes.hom_side_bound(d["h"], d["t"])))
        col = last.certificates["coloring"]
        out.append(f"coloring of H' with {col.k} colors proper: {'ok' if col.is_proper(rec.out.h) else 'FAIL'}")
    if "cover_bound" in rec.certificates:
        out.append(_check("cover of G'", len(rec.certificates["cover"]), rec.certificates["cover_bound"]))
    return out


def cmd_reduce(args: argparse.Namespace) -> int:
    text = read_text(args.instance)
    lemma = args.lemma
    if lemma in BUNDLE_LEMMAS:
        inst = parse_record(text).instance
        if lemma == "l4":
            rec = reduce_bound_chi(inst, greedy_coloring(inst.g))
        else:
            rec = reduce_listhom_to_hom(inst, t=args.t)
    else:
        g = parse_graph(text).graph
        if lemma == "deg":
            out, dmap = degree_reduce(g)
            decode = {"kind": "deg", "copies": [list(c) for c in dmap.copies]}
            _emit(format_graph(out, decode=decode), args.out)
            lines = [f"|V| {g.n} -> {out.n}", _check("max degree", out.max_degree(), 5)]
            print("\n".join(lines), file=sys.stdout if args.out else sys.stderr)
            return SAT
        build: dict[str, Callable[[Graph, int], ReductionRecord]] = {
            "l2": reduce_3col_to_listhom,
            "l3": reduce_3col_to_listhom_vc,
            "main": pipeline_main,
            "chi": pipeline_chi,
            "vc": pipeline_vc,
            "local": pipeline_local,
        }
        rec = build[lemma](g, args.r)
    _emit(format_record(rec), args.out)
    print("\n".join(_report(rec, args)), file=sys.stdout if args.out else sys.stderr)
    return SAT


def cmd_gadget(args: argparse.Namespace) -> int:
    if args.kind == "D":
        gad = gadgets.build_D()
    elif args.kind == "T":
        gad = gadgets.build_T(args.k)
    elif args.kind == "Tclique":
        gad = gadgets.build_T_clique(args.k, args.t)
    else:
        gad = gadgets.build_A(args.k)
    _emit(format_graph(gad.graph, gad.marks), args.out)
    return SAT


def bench_instances(count: int, seed: int, n_max: int, h_max: int) -> list[ListHomInstance]:
    out = []
    for s in range(seed, seed + count):
        rng = random.Random(s)
        n, hn = rng.randint(1, n_max), rng.randint(1, h_max)
        g = random_graph_max_degree(n, 4, s)
        h = random_graph_max_degree(hn, 3, s + 7919, density=0.7)
        lists = [None if rng.random() < 0.3 else [u for u in range(hn) if rng.random() < 0.6] for _ in range(n)]
        out.append(ListHomInstance.with_lists(g, h, lists))
    return out


def cmd_bench(args: argparse.Namespace) -> int:
    strategies = [s for s in args.strategy.split(",") if s]
    for s in strategies:
        if s not in STRATEGIES:
            raise InputError(f"unknown strategy {s!r}")
    mode = "local" if args.mode == "local" else "plain"
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "strategy", "verdict", "nodes_explored", "assignments_tried", "seconds"])
    disagree = False
    for i, inst in enumerate(bench_instances(args.count, args.seed, args.n_max, args.h_max)):
        if args.mode == "hom":
            inst = inst.as_hom()
        verdicts = set()
        for s in strategies:
            if s == "vc" and mode != "plain":
                continue
            start = time.perf_counter()
            try:
                phi, stats, _ = solve_instance(inst, mode, s, args.budget, args.vc_threshold)
                verdict = "sat" if phi is not None else "unsat"
                verdicts.add(verdict)
            except BudgetExceeded:
                stats, verdict = SolveStats(), "budget"
            elapsed = time.perf_counter() - start
            if s == "vc" and verdict != "budget":
                cover = len(min_vertex_cover(inst.g))
                assert stats.assignments_tried <= inst.h.n**cover, "vc enumeration exceeded h^|C|"
            writer.writerow([args.seed + i, s, verdict, stats.nodes_explored, stats.assignments_tried, f"{elapsed:.6f}"])
        disagree |= len(verdicts) > 1
    _emit(buf.getvalue(), args.out)
    return UNSAT if disagree else SAT


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hardhom", description="Graph homomorphism solvers and reductions.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--mode", choices=("hom", "listhom", "local"), default="listhom")
        sp.add_argument("--budget", type=int, default=None, help="enumeration budget for brute force")

    s = sub.add_parser("solve", help="decide a bundle and print a certificate")
    s.add_argument("instance")
    common(s)
    s.add_argument("--strategy", choices=STRATEGIES, default="auto")
    s.add_argument("--cert", help="write the certificate here instead of stdout")
    s.add_argument("--vc-threshold", type=int, default=12)
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("verify", help="check a certificate against a bundle")
    v.add_argument("instance")
    v.add_argument("--cert", required=True)
    common(v)
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("reduce", help="run a reduction and write the resulting record")
    r.add_argument("instance")
    r.add_argument("--lemma", choices=GRAPH_LEMMAS + BUNDLE_LEMMAS, required=True)
    r.add_argument("-r", type=int, default=2)
    r.add_argument("-t", type=int, default=None)
    r.add_argument("--out")
    r.set_defaults(fn=cmd_reduce)

    gd = sub.add_parser("gadget", help="write a gadget graph with its marked vertices")
    gd.add_argument("kind", choices=("D", "T", "Tclique", "A"))
    gd.add_argument("-k", type=int, default=1)
    gd.add_argument("-t", type=int, default=1)
    gd.add_argument("--out")
    gd.set_defaults(fn=cmd_gadget)

    b = sub.add_parser("bench", help="cross-check strategies on seeded random instances (CSV)")
    common(b)
    b.add_argument("--strategy", default="brute,backtrack,vc", help="comma-separated strategies")
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--n-max", type=int, default=8)
    b.add_argument("--h-max", type=int, default=5)
    b.add_argument("--vc-threshold", type=int, default=12)
    b.add_argument("--out")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else SAT
    try:
        return args.fn(args)
    except (ParseError, ReductionError, BudgetExceeded, InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
