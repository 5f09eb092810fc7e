from __future__ import annotations

import pytest

from hardhom.graph import complete_graph, cycle_graph, find_k_coloring, is_vertex_cover, path_graph, star_graph
from hardhom.reductions import (
    ReductionError,
    decode_witness,
    encode_witness,
    pipeline_chi,
    pipeline_local,
    pipeline_main,
    pipeline_vc,
)
from hardhom.solver import solve_backtrack, verify

ALL = [pipeline_main, pipeline_chi, pipeline_vc, pipeline_local]


@pytest.mark.parametrize("pipeline", ALL, ids=lambda f: f.__name__)
def test_K4_is_unsat(pipeline):
    rec = pipeline(complete_graph(4), 2)
    phi, _ = solve_backtrack(rec.out, rec.mode)
    assert phi is None


@pytest.mark.parametrize("pipeline", ALL, ids=lambda f: f.__name__)
def test_rejects_high_degree(pipeline):
    with pytest.raises(ReductionError):
        pipeline(star_graph(5), 2)


@pytest.mark.parametrize("pipeline", ALL, ids=lambda f: f.__name__)
def test_coloring_travels_through_every_stage(pipeline):
    g = cycle_graph(5)
    rec = pipeline(g, 2)
    col = find_k_coloring(g, 3)
    w = encode_witness(rec, col)
    assert verify(rec.out, w, rec.mode)
    assert decode_witness(rec, w) == col
    assert rec.stages[-1].out == rec.out


def test_main_K2_solves_and_respects_size_bound():
    rec = pipeline_main(complete_graph(2), 2)
    phi, _ = solve_backtrack(rec.out)
    assert phi is not None
    assert decode_witness(rec, phi) in {(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)}
    l2, l5 = rec.stages
    # tiny targets are padded before the gadgets are attached
    h, t = l5.decode_data["h"], l5.decode_data["t"]
    assert h == max(l2.out.h.n, 6)
    assert rec.out.h.n <= (h + 1) * (t + 11)


def test_chi_certificate_and_padding():
    rec = pipeline_chi(cycle_graph(5), 2)
    cert = rec.certificates["coloring"]
    assert cert.k <= 15 and cert.is_proper(rec.out.h)
    assert rec.certificates["padding"] <= 10


def test_vc_path_and_cover():
    rec = pipeline_vc(path_graph(4), 2)
    cover = rec.certificates["cover"]
    assert is_vertex_cover(rec.out.g, cover)
    assert len(cover) <= rec.certificates["cover_bound"]
    phi, _ = solve_backtrack(rec.out)
    assert phi is not None and decode_witness(rec, phi)


def test_local_C5_has_locally_injective_witness():
    rec = pipeline_local(cycle_graph(5), 2)
    assert rec.mode == "local"
    phi, _ = solve_backtrack(rec.out, "local")
    assert phi is not None and verify(rec.out, phi, "local")


def test_local_intermediate_witnesses_are_locally_injective():
    rec = pipeline_local(cycle_graph(5), 2)
    first = rec.stages[0]
    phi, _ = solve_backtrack(first.out, "plain")
    assert verify(first.out, phi, "local")
