"""Text formats: graphs, LIST-HOM bundles, mapping certificates and reduction records.

Every format uses 1-based vertex numbers on disk and 0-based numbers in
memory.  Lines starting with ``c`` are comments, except the structured
``c mark`` and ``c decode`` lines which carry gadget roles and decode data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .graph import Graph, VertexColoring
from .reductions.record import ReductionError, ReductionRecord, decode_data_only, source_accepts
from .solver import ListHomInstance, verify


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if parts:
            yield no, parts


def _ints(no: int, tokens: Sequence[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(no, f"expected integers, got {' '.join(tokens)!r}") from None


def _vertex(no: int, v: int, n: int, what: str = "vertex") -> int:
    if not 1 <= v <= n:
        raise ParseError(no, f"{what} {v} out of range 1..{n}")
    return v - 1


class _EdgeSet:
    def __init__(self, n: int, label: str):
        self.n, self.label = n, label
        self.edges: list[tuple[int, int]] = []
        self._seen: set[tuple[int, int]] = set()

    def add(self, no: int, u: int, v: int) -> None:
        a, b = _vertex(no, u, self.n), _vertex(no, v, self.n)
        if a == b:
            raise ParseError(no, f"loop at vertex {u}")
        key = (min(a, b), max(a, b))
        if key in self._seen:
            raise ParseError(no, f"duplicate edge {u} {v}")
        self._seen.add(key)
        self.edges.append((a, b))

    def finish(self, no: int, m: int) -> Graph:
        if len(self.edges) != m:
            raise ParseError(no, f"{self.label}: header promises {m} edges, found {len(self.edges)}")
        return Graph(self.n, self.edges)


def _header(no: int, parts: list[str], kind: str, count: int) -> list[int]:
    if len(parts) != 2 + count or parts[1] != kind:
        raise ParseError(no, f"expected 'p {kind}' followed by {count} numbers")
    vals = _ints(no, parts[2:])
    if any(x < 0 for x in vals):
        raise ParseError(no, "negative size in header")
    return vals


# --------------------------------------------------------------------------
# graphs


@dataclass
class GraphFile:
    graph: Graph
    marks: dict[str, tuple[int, ...]] = field(default_factory=dict)
    decode: dict[str, Any] = field(default_factory=dict)


def parse_graph(text: str) -> GraphFile:
    es: _EdgeSet | None = None
    m = 0
    marks: dict[str, list[int]] = {}
    decode: dict[str, Any] = {}
    pending_marks: list[tuple[int, str, int]] = []
    last = 0
    for no, parts in _lines(text):
        last = no
        tag = parts[0]
        if tag == "c":
            if len(parts) >= 2 and parts[1] == "mark":
                if len(parts) != 4:
                    raise ParseError(no, "expected 'c mark <role> <v>'")
                pending_marks.append((no, parts[2], _ints(no, parts[3:])[0]))
            elif len(parts) >= 2 and parts[1] == "decode":
                _decode_line(no, parts, decode)
            continue
        if tag == "p":
            if es is not None:
                raise ParseError(no, "second problem line")
            n, m = _header(no, parts, "graph", 2)
            es = _EdgeSet(n, "graph")
        elif tag == "e":
            if es is None:
                raise ParseError(no, "edge before the problem line")
            if len(parts) != 3:
                raise ParseError(no, "expected 'e <u> <v>'")
            es.add(no, *_ints(no, parts[1:]))
        else:
            raise ParseError(no, f"unknown line type {tag!r}")
    if es is None:
        raise ParseError(last + 1, "missing 'p graph' line")
    g = es.finish(last + 1, m)
    for no, role, v in pending_marks:
        marks.setdefault(role, []).append(_vertex(no, v, g.n))
    return GraphFile(g, {k: tuple(v) for k, v in marks.items()}, decode)


def format_graph(g: Graph, marks: dict[str, Sequence[int]] | None = None, decode: dict[str, Any] | None = None) -> str:
    out = [f"p graph {g.n} {g.m}"]
    for role, vs in (marks or {}).items():
        out += [f"c mark {role} {v + 1}" for v in vs]
    out += _decode_lines(decode or {})
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# bundles


def parse_bundle(text: str) -> ListHomInstance:
    return parse_record(text).instance


def format_bundle(inst: ListHomInstance, extra: Sequence[str] = ()) -> str:
    g, h = inst.g, inst.h
    out = [f"p listhom {g.n} {g.m} {h.n} {h.m}", *extra]
    out += [f"g e {u + 1} {v + 1}" for u, v in g.edges]
    out += [f"h e {u + 1} {v + 1}" for u, v in h.edges]
    for v, lst in enumerate(inst.lists):
        if lst is not None:
            vals = sorted(lst)
            out.append(" ".join(["l", str(v + 1), str(len(vals)), *(str(u + 1) for u in vals)]))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# certificates


def parse_certificate(text: str, n: int | None = None, h: int | None = None) -> tuple[int, ...]:
    """``m <v> <u>`` lines, one per vertex; ``n`` and ``h`` bound the ranges when given."""
    images: dict[int, int] = {}
    last = 0
    for no, parts in _lines(text):
        last = no
        if parts[0] == "c":
            continue
        if parts[0] != "m" or len(parts) != 3:
            raise ParseError(no, "expected 'm <v> <u>'")
        v, u = _ints(no, parts[1:])
        if v < 1 or (n is not None and v > n):
            raise ParseError(no, f"vertex {v} out of range")
        if u < 1 or (h is not None and u > h):
            raise ParseError(no, f"image {u} out of range")
        if v - 1 in images:
            raise ParseError(no, f"vertex {v} mapped twice")
        images[v - 1] = u - 1
    size = n if n is not None else len(images)
    missing = [v + 1 for v in range(size) if v not in images]
    if missing or len(images) != size:
        raise ParseError(last + 1, f"no image for vertices {missing[:5]}")
    return tuple(images[v] for v in range(size))


def format_certificate(phi: Sequence[int]) -> str:
    return "".join(f"m {v + 1} {u + 1}\n" for v, u in enumerate(phi))


# --------------------------------------------------------------------------
# reduction records


def _decode_line(no: int, parts: list[str], into: dict[str, Any]) -> None:
    if len(parts) < 4:
        raise ParseError(no, "expected 'c decode <key> <json>'")
    try:
        into[parts[2]] = json.loads(" ".join(parts[3:]))
    except json.JSONDecodeError as exc:
        raise ParseError(no, f"bad decode data: {exc.msg}") from None


def _decode_lines(meta: dict[str, Any]) -> list[str]:
    return [f"c decode {k} {json.dumps(v, separators=(',', ':'))}" for k, v in meta.items()]


@dataclass
class RecordFile:
    """A bundle as read from disk, with whatever decode data it carried."""

    instance: ListHomInstance
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def mode(self) -> str:
        return self.meta.get("mode", "plain")

    def source(self) -> Graph | ListHomInstance | None:
        src = self.meta.get("source")
        if src is None:
            return None
        if "graph" in src:
            n, edges = src["graph"]
            return Graph(n, [tuple(e) for e in edges])
        b = src["bundle"]
        g = Graph(b["g"][0], [tuple(e) for e in b["g"][1]])
        h = Graph(b["h"][0], [tuple(e) for e in b["h"][1]])
        return ListHomInstance.with_lists(g, h, b["lists"])

    def decode(self, w: Sequence[int]) -> tuple[int, ...]:
        """Map a witness of the instance back to the source problem, checking both ends."""
        if "kind" not in self.meta:
            raise ReductionError("file carries no decode data")
        if not verify(self.instance, w, self.mode):
            raise ReductionError("witness does not verify on the reduced instance")
        back = decode_data_only(self.meta["kind"], self.meta["data"], w)
        src = self.source()
        if src is not None and not source_accepts(src, back, self.mode):
            raise AssertionError("decoded witness does not verify on the source")
        return back


def _source_meta(src: Graph | ListHomInstance) -> dict[str, Any]:
    if isinstance(src, Graph):
        return {"graph": [src.n, [list(e) for e in src.edges]]}
    return {
        "bundle": {
            "g": [src.g.n, [list(e) for e in src.g.edges]],
            "h": [src.h.n, [list(e) for e in src.h.edges]],
            "lists": [None if l is None else sorted(l) for l in src.lists],
        }
    }


def _json_safe(x: Any) -> Any:
    if isinstance(x, VertexColoring):
        return list(x.colors)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, (list, tuple)):
        return [_json_safe(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _json_safe(v) for k, v in x.items()}
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return None


def record_meta(rec: ReductionRecord) -> dict[str, Any]:
    certs = {k: _json_safe(v) for k, v in rec.certificates.items()}
    return {
        "kind": rec.kind,
        "mode": rec.mode,
        "data": rec.decode_data,
        "source": _source_meta(rec.source),
        "cert": {k: v for k, v in certs.items() if v is not None},
    }


def format_record(rec: ReductionRecord) -> str:
    return format_bundle(rec.out, _decode_lines(record_meta(rec)))


def parse_record(text: str) -> RecordFile:
    sizes: list[int] | None = None
    ges = hes = None
    lists: dict[int, frozenset[int]] = {}
    meta: dict[str, Any] = {}
    last = 0
    for no, parts in _lines(text):
        last = no
        tag = parts[0]
        if tag == "c":
            if len(parts) >= 2 and parts[1] == "decode":
                _decode_line(no, parts, meta)
            continue
        if tag == "p":
            if sizes is not None:
                raise ParseError(no, "second problem line")
            sizes = _header(no, parts, "listhom", 4)
            ges, hes = _EdgeSet(sizes[0], "g"), _EdgeSet(sizes[2], "h")
            continue
        if sizes is None:
            raise ParseError(no, "data before the problem line")
        if tag in ("g", "h"):
            if len(parts) != 4 or parts[1] != "e":
                raise ParseError(no, f"expected '{tag} e <u> <v>'")
            (ges if tag == "g" else hes).add(no, *_ints(no, parts[2:]))
        elif tag == "l":
            vals = _ints(no, parts[1:])
            if len(vals) < 2 or len(vals) != 2 + vals[1]:
                raise ParseError(no, "expected 'l <v> <k> <u1> ... <uk>'")
            v = _vertex(no, vals[0], sizes[0])
            if v in lists:
                raise ParseError(no, f"second list for vertex {vals[0]}")
            us = [_vertex(no, u, sizes[2], "list entry") for u in vals[2:]]
            if len(set(us)) != len(us):
                raise ParseError(no, "repeated list entry")
            lists[v] = frozenset(us)
        else:
            raise ParseError(no, f"unknown line type {tag!r}")
    if sizes is None:
        raise ParseError(last + 1, "missing 'p listhom' line")
    g = ges.finish(last + 1, sizes[1])
    h = hes.finish(last + 1, sizes[3])
    inst = ListHomInstance.with_lists(g, h, [lists.get(v) for v in range(g.n)])
    return RecordFile(inst, meta)


def read_text(path: str | Path) -> str:
    return Path(path).read_text()


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
