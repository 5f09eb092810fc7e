"""Reduction records and the encode/decode dispatch shared by every construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, Union

from ..graph import Graph
from ..solver import ListHomInstance, verify

Source = Union[Graph, ListHomInstance]


class ReductionError(ValueError):
    """A reduction precondition does not hold."""


@dataclass(frozen=True)
class ReductionRecord:
    """Output instance plus everything needed to move witnesses across the reduction.

    ``decode_data`` is plain JSON-able data; decoding needs nothing else.
    ``stages`` holds the intermediate records of a pipeline, in order.
    """

    out: ListHomInstance
    kind: str
    source: Source
    decode_data: dict[str, Any]
    certificates: dict[str, Any] = field(default_factory=dict)
    stages: tuple[ReductionRecord, ...] = ()
    mode: str = "plain"


# kind -> decoder(data, witness) -> input witness
_DECODERS: dict[str, Callable[[dict, Sequence[int]], tuple[int, ...]]] = {}
# kind -> encoder(record, input witness) -> output witness
_ENCODERS: dict[str, Callable[[ReductionRecord, Sequence[int]], tuple[int, ...]]] = {}


def register(kind: str, encoder, decoder) -> None:
    _ENCODERS[kind] = encoder
    _DECODERS[kind] = decoder


def source_accepts(source: Source, w: Sequence[int], mode: str = "plain") -> bool:
    """Does ``w`` solve the input problem (3-coloring for graphs, list-hom otherwise)?"""
    if isinstance(source, Graph):
        return (
            len(w) == source.n
            and all(c in (1, 2, 3) for c in w)
            and all(w[a] != w[b] for a, b in source.edges)
        )
    if len(w) != source.g.n or any(not 0 <= u < source.h.n for u in w):
        return False
    return verify(source, w, mode)


def decode_data_only(kind: str, data: dict, w: Sequence[int]) -> tuple[int, ...]:
    if kind not in _DECODERS:
        raise ReductionError(f"no decoder for kind {kind!r}")
    return _DECODERS[kind](data, w)


def decode_witness(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    """Map a witness of ``rec.out`` back to a witness of ``rec.source``."""
    if len(w) != rec.out.g.n or any(not 0 <= u < rec.out.h.n for u in w) or not verify(rec.out, w, rec.mode):
        raise ReductionError("witness does not verify on the reduced instance")
    back = decode_data_only(rec.kind, rec.decode_data, w)
    if not source_accepts(rec.source, back, rec.mode):
        raise AssertionError(f"{rec.kind}: decoded witness does not verify on the source")
    return back


def encode_witness(rec: ReductionRecord, w: Sequence[int]) -> tuple[int, ...]:
    """Carry a witness of ``rec.source`` forward to a witness of ``rec.out``."""
    if not source_accepts(rec.source, w, rec.mode):
        raise ReductionError("witness does not verify on the source problem")
    fwd = _ENCODERS[rec.kind](rec, tuple(w))
    if not verify(rec.out, fwd, rec.mode):
        raise AssertionError(f"{rec.kind}: encoded witness does not verify")
    return fwd
