from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import random_listhom, three_col_corpus
from hardhom.gadgets import build_T_clique
from hardhom.graph import complete_graph, cycle_graph
from hardhom.io import (
    ParseError,
    format_bundle,
    format_certificate,
    format_graph,
    format_record,
    parse_bundle,
    parse_certificate,
    parse_graph,
    parse_record,
)
from hardhom.reductions import (
    ReductionError,
    encode_witness,
    pipeline_main,
    reduce_3col_to_listhom,
    reduce_listhom_to_hom,
)
from hardhom.solver import ListHomInstance


def test_graph_round_trip_on_corpus():
    for g in three_col_corpus():
        assert parse_graph(format_graph(g)).graph == g


def test_graph_format_is_one_based():
    text = format_graph(complete_graph(2))
    assert text == "p graph 2 1\ne 1 2\n"


def test_gadget_marks_round_trip():
    tg = build_T_clique(2, 1)
    back = parse_graph(format_graph(tg.graph, tg.marks))
    assert back.graph == tg.graph and back.marks == tg.marks


@given(st.integers(0, 10**9))
def test_bundle_round_trip(seed):
    inst = random_listhom(random.Random(seed), 7, 5)
    assert parse_bundle(format_bundle(inst)) == inst


@given(st.lists(st.integers(0, 6), max_size=12))
def test_certificate_round_trip(phi):
    phi = tuple(phi)
    assert parse_certificate(format_certificate(phi)) == phi
    assert parse_certificate(format_certificate(phi), len(phi), 7) == phi


def test_comments_and_blank_lines_are_ignored():
    text = "c hello\n\np graph 3 2\nc between\ne 1 2\n\ne 2 3\n"
    assert parse_graph(text).graph.m == 2


@pytest.mark.parametrize(
    "text,line",
    [
        ("p graph 3 2\ne 1 2\n", 3),  # edge count mismatch, reported after the last line
        ("p graph 3 1\ne 1 4\n", 2),
        ("p graph 3 1\ne 2 2\n", 2),
        ("p graph 3 2\ne 1 2\ne 2 1\n", 3),
        ("e 1 2\n", 1),
        ("p graph x 1\n", 1),
        ("p graph 2 0\nq 1\n", 2),
        ("c only a comment\n", 2),
    ],
)
def test_graph_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


@pytest.mark.parametrize(
    "text",
    [
        "p listhom 2 1 2 1\ng e 1 2\n",
        "p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nl 1 2 1\n",
        "p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nl 1 1 3\n",
        "p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nl 1 1 1\nl 1 1 2\n",
        "p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nl 1 2 1 1\n",
        "g e 1 2\n",
        "p listhom 2 1 2 1\ng e 1 2\nh e 1 2\nc decode kind {oops\n",
    ],
)
def test_bundle_parse_errors(text):
    with pytest.raises(ParseError):
        parse_bundle(text)


@pytest.mark.parametrize("text", ["m 1 1\nm 1 2\n", "m 1 1\n", "m 1\n", "m 1 9\nm 2 1\n", "x 1 1\n"])
def test_certificate_parse_errors(text):
    with pytest.raises(ParseError):
        parse_certificate(text, 2, 3)


def test_record_round_trip_and_decode():
    g = cycle_graph(5)
    rec = reduce_3col_to_listhom(g, 2)
    loaded = parse_record(format_record(rec))
    assert loaded.instance == rec.out
    assert loaded.mode == "plain" and loaded.source() == g
    w = encode_witness(rec, (1, 2, 1, 2, 3))
    assert loaded.decode(w) == (1, 2, 1, 2, 3)


def test_record_of_pipeline_and_bundle_source():
    rec = pipeline_main(complete_graph(2), 2)
    loaded = parse_record(format_record(rec))
    assert loaded.instance == rec.out
    w = encode_witness(rec, (1, 2))
    assert loaded.decode(w) == (1, 2)

    inst = ListHomInstance.with_lists(complete_graph(2), complete_graph(2), [{1}, None])
    rec5 = reduce_listhom_to_hom(inst)
    loaded5 = parse_record(format_record(rec5))
    assert loaded5.source() == inst
    assert loaded5.decode(encode_witness(rec5, (1, 0))) == (1, 0)


def test_record_decode_rejects_bad_witness():
    loaded = parse_record(format_record(reduce_3col_to_listhom(cycle_graph(5), 2)))
    with pytest.raises(ReductionError):
        loaded.decode((0,) * loaded.instance.g.n)
    plain = parse_record(format_bundle(loaded.instance))
    with pytest.raises(ReductionError):
        plain.decode((0,) * loaded.instance.g.n)
