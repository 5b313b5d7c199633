"""Text (``.h3``) and JSON serialization of 3-graphs and 2-graphs.

Text layout: first line ``n``, second line ``m``, then ``m`` lines holding the
strictly increasing vertices of one edge, space separated.  JSON layout:
``{"n": n, "edges": [[a, b, c], ...]}``.  Writers always emit colex order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Graph2, ThreeGraph


class GraphFormatError(ValueError):
    pass


def _parse_text(text: str, cls):
    k = cls.arity
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise GraphFormatError("header must hold the vertex count and the edge count")
    try:
        n, m = int(lines[0]), int(lines[1])
    except ValueError as exc:
        raise GraphFormatError(f"malformed header: {exc}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count")
    body = lines[2:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}")
    rows = []
    for lineno, ln in enumerate(body, start=3):
        try:
            row = [int(t) for t in ln.split()]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex") from None
        if len(row) != k:
            raise GraphFormatError(f"line {lineno}: expected {k} vertices")
        if any(row[j] >= row[j + 1] for j in range(k - 1)):
            raise GraphFormatError(f"line {lineno}: vertices must be strictly increasing")
        if row[0] < 0 or row[-1] >= n:
            raise GraphFormatError(f"line {lineno}: vertex out of range 0..{n - 1}")
        rows.append(row)
    try:
        return cls(n, rows)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def _serialize_text(G) -> str:
    out = [str(G.n), str(G.m)]
    out.extend(" ".join(map(str, row)) for row in G.edges.tolist())
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> ThreeGraph:
    return _parse_text(text, ThreeGraph)


def serialize_graph(H: ThreeGraph) -> str:
    return _serialize_text(H)


def parse_graph2(text: str) -> Graph2:
    return _parse_text(text, Graph2)


def serialize_graph2(G: Graph2) -> str:
    return _serialize_text(G)


def to_json(G) -> dict:
    return {"n": G.n, "edges": G.edges.tolist()}


def from_json(obj, cls=ThreeGraph):
    if not isinstance(obj, dict) or set(obj) - {"n", "edges"} or "n" not in obj:
        raise GraphFormatError('expected an object with keys "n" and "edges"')
    n, edges = obj["n"], obj.get("edges", [])
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError('"n" must be a non-negative integer')
    if not isinstance(edges, list):
        raise GraphFormatError('"edges" must be a list')
    for e in edges:
        if (not isinstance(e, list) or len(e) != cls.arity
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
            raise GraphFormatError(f"malformed edge {e!r}")
        if any(e[j] >= e[j + 1] for j in range(cls.arity - 1)):
            raise GraphFormatError(f"edge {e!r} is not strictly increasing")
    try:
        return cls(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def read_graph(path, cls=ThreeGraph):
    """Load a graph, choosing JSON for ``*.json`` and the text layout otherwise."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
        return from_json(obj, cls)
    return _parse_text(text, cls)


def write_graph(path, G) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(to_json(G)) + "\n", encoding="utf-8")
    else:
        path.write_text(_serialize_text(G), encoding="utf-8")
