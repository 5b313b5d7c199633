"""Extremal constructions with a designated vertex that no pattern copy covers,
and the table of claimed covering thresholds ``c1(n, F)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .core import ThreeGraph
from .patterns import PatternId


@dataclass(frozen=True)
class Construction:
    family: str
    n: int
    graph: ThreeGraph
    vertex: int
    """Designated vertex: uncovered by the family's pattern (for ``turan3``, unused)."""


@lru_cache(maxsize=64)
def _pairs(m: int) -> np.ndarray:
    i, j = np.triu_indices(m, 1)
    out = np.stack([i, j], axis=1).astype(np.int64)
    out.flags.writeable = False
    return out


def _triples(vertices) -> np.ndarray:
    """All 3-subsets of ``vertices`` (ascending input) as increasing rows."""
    v = np.asarray(vertices, dtype=np.int64)
    chunks = []
    for k in range(2, len(v)):
        p = _pairs(k)
        chunks.append(np.column_stack([v[p[:, 0]], v[p[:, 1]], np.full(len(p), v[k])]))
    return np.concatenate(chunks) if chunks else np.zeros((0, 3), dtype=np.int64)


def _product(*parts) -> np.ndarray:
    grids = np.meshgrid(*[np.asarray(p, dtype=np.int64) for p in parts], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _join(*blocks) -> np.ndarray:
    blocks = [b for b in blocks if len(b)]
    return np.concatenate(blocks) if blocks else np.zeros((0, 3), dtype=np.int64)


def _transversals(blocks: list[list[int]]) -> np.ndarray:
    """Triples meeting three distinct blocks."""
    k = len(blocks)
    if k < 3:
        return np.zeros((0, 3), dtype=np.int64)
    width = max(len(b) for b in blocks)
    table = np.full((k, width), -1, dtype=np.int64)
    for i, b in enumerate(blocks):
        table[i, :len(b)] = b
    bt = _triples(range(k))
    out = []
    for x in range(width):
        for y in range(width):
            for z in range(width):
                rows = np.stack([table[bt[:, 0], x], table[bt[:, 1], y], table[bt[:, 2], z]], axis=1)
                out.append(rows[(rows >= 0).all(axis=1)])
    return np.concatenate(out)


def _require(n: int, least: int, name: str) -> None:
    if n < least:
        raise ValueError(f"{name} needs n >= {least}, got {n}")


def f5_part_size(n: int) -> int:
    """``floor(sqrt(2) n / 4) - 1`` in exact integer arithmetic."""
    return isqrt(2 * n * n) // 4 - 1


def construct_f5_lower(n: int) -> Construction:
    """Vertex ``0`` joined to ``X x Y``, plus ``Z x X x Y``, ``X`` with half of
    the ``Z``-pairs, ``Y`` with the other half, and all triples inside ``Z``.

    ``|X| = |Y| = floor(sqrt(2) n / 4) - 1``; the ``Z``-pairs are dealt
    alternately to ``X`` and ``Y`` in lexicographic order, ``X`` first.
    """
    _require(n, 5, "F5 construction")
    a = max(f5_part_size(n), 0)
    X = np.arange(1, 1 + a)
    Y = np.arange(1 + a, 1 + 2 * a)
    Z = np.arange(1 + 2 * a, n)
    zp = Z[_pairs(len(Z))] if len(Z) >= 2 else np.zeros((0, 2), dtype=np.int64)
    ex, ey = zp[0::2], zp[1::2]

    def with_pairs(part, pairs):
        if not len(part) or not len(pairs):
            return np.zeros((0, 3), dtype=np.int64)
        idx = _product(np.arange(len(part)), np.arange(len(pairs)))
        return np.column_stack([part[idx[:, 0]], pairs[idx[:, 1]]])

    edges = _join(
        _product([0], X, Y) if a else (),
        _product(X, Y, Z) if a else (),
        with_pairs(X, ex),
        with_pairs(Y, ey),
        _triples(Z),
    )
    return Construction("f5", n, ThreeGraph(n, edges), 0)


def construct_trivial_intersecting(n: int) -> Construction:
    """All triples through the apex ``0``."""
    _require(n, 4, "trivial intersecting family")
    p = _pairs(n - 1) + 1
    edges = np.column_stack([np.zeros(len(p), dtype=np.int64), p])
    return Construction("trivial", n, ThreeGraph(n, edges), 0)


def construct_tp3_lower(n: int) -> Construction:
    _require(n, 6, "TP3 construction")
    if n % 3 != 1:
        # two hubs joined to every other vertex, complete inside the rest
        rest = np.arange(n - 2)
        hubs = np.column_stack([rest, np.full(n - 2, n - 2), np.full(n - 2, n - 1)])
        return Construction("tp3", n, ThreeGraph(n, _join(hubs, _triples(rest))), n - 1)
    k = (n - 1) // 3
    blocks = [[3 * i + 1, 3 * i + 2, 3 * i + 3] for i in range(k)]
    star = np.array([[0, b[0], b[1]] for b in blocks] + [[0, b[0], b[2]] for b in blocks]
                    + [[0, b[1], b[2]] for b in blocks], dtype=np.int64)
    return Construction("tp3", n, ThreeGraph(n, _join(star, _transversals(blocks))), 0)


def construct_k113_lower(n: int) -> Construction:
    """Wheel: a hub on the rim cycle ``0..n-2`` plus rim triples spanning no cycle pair."""
    _require(n, 9, "K113 construction")
    hub, r = n - 1, n - 1
    cycle = [(i, i + 1) for i in range(r - 1)] + [(0, r - 1)]
    spokes = np.array([(a, b, hub) for a, b in cycle], dtype=np.int64)
    t = _triples(range(r))

    def adjacent(x, y):
        return (y - x == 1) | ((x == 0) & (y == r - 1))

    keep = ~(adjacent(t[:, 0], t[:, 1]) | adjacent(t[:, 1], t[:, 2]) | adjacent(t[:, 0], t[:, 2]))
    return Construction("k113", n, ThreeGraph(n, _join(spokes, t[keep])), hub)


def construct_s3_lower(n: int) -> Construction:
    """Designated vertex ``n-2`` joined to ``{n-4, n-3} x {0..n-5}``; vertex
    ``n-1`` joined to every pair of ``0..n-3``."""
    _require(n, 11, "S3 construction")
    low = np.arange(n - 4)
    first = _product(low, [n - 4, n - 3], [n - 2])
    second = np.column_stack([_pairs(n - 2), np.full(len(_pairs(n - 2)), n - 1)])
    return Construction("s3", n, ThreeGraph(n, _join(first, second)), n - 2)


def construct_gs3_blocks(n: int) -> Construction:
    """Apex ``0`` with consecutive pairs ``{2i-1, 2i}`` as blocks (the last one
    may be a singleton); apex joined to each full block, plus all triples
    meeting three distinct blocks.

    Minimum degree is ``floor((n-1)/2)``, but the apex *is* covered by ``GS3``:
    ``{1,3,5}, {1,3,6}, {0,1,2}`` is a copy.  Kept for comparison; the ``gs3``
    family uses :func:`construct_gs3_lower`.
    """
    _require(n, 13, "GS3 block construction")
    blocks = [[v for v in (2 * i - 1, 2 * i) if v <= n - 1] for i in range(1, n // 2 + 1)]
    full = [b for b in blocks if len(b) == 2]
    apex = np.array([[0, b[0], b[1]] for b in full], dtype=np.int64)
    return Construction("gs3-blocks", n, ThreeGraph(n, _join(apex, _transversals(blocks))), 0)


def steiner_triple_system(v: int) -> np.ndarray:
    """Blocks of an STS(v) on ``0..v-1`` (Bose for v = 3 mod 6, Skolem for v = 1 mod 6)."""
    if v % 6 == 3:
        m = v // 3
        half = (m + 1) // 2

        def op(x, y):
            return (x + y) * half % m
        offset = 0
    elif v % 6 == 1 and v > 1:
        m = (v - 1) // 3
        h = m // 2

        def op(x, y):
            s = (x + y) % m
            return s // 2 if s % 2 == 0 else h + s // 2
        offset = 1
    else:
        raise ValueError(f"no Steiner triple system on {v} points")

    def pt(x, i):
        return offset + x + m * (i % 3)

    blocks = []
    if offset:
        for x in range(m // 2):
            blocks.append((pt(x, 0), pt(x, 1), pt(x, 2)))
            for i in range(3):
                blocks.append((0, pt(m // 2 + x, i), pt(x, i + 1)))
    else:
        for x in range(m):
            blocks.append((pt(x, 0), pt(x, 1), pt(x, 2)))
    for i in range(3):
        for y in range(m):
            for x in range(y):
                blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return np.sort(np.array(blocks, dtype=np.int64), axis=1)


def _round_robin(p: int) -> dict[tuple[int, int], int]:
    """Proper edge colouring of ``K_p`` with ``p-1`` (p even) or ``p`` (p odd) colours."""
    q = p if p % 2 == 0 else p + 1
    colour = {}
    for r in range(q - 1):
        rounds = [(r, q - 1)] + [((r + k) % (q - 1), (r - k) % (q - 1)) for k in range(1, q // 2)]
        for a, b in rounds:
            if a < p and b < p:
                colour[(min(a, b), max(a, b))] = r
    return colour


def construct_gs3_lower(n: int) -> Construction:
    """A 3-graph with minimum degree ``floor((n-1)/2)`` whose vertex ``0`` lies in no ``GS3``.

    A copy of ``GS3`` needs two edges sharing a pair.  Three layouts avoid
    that around vertex ``0``, with ``p = floor((n-1)/2)``:

    * ``n = 3, 7 (mod 12)``: a Steiner triple system on all ``n`` vertices;
      it is linear, hence ``GS3``-free, and ``(n-1)/2``-regular.
    * ``n = 11 (mod 12)``: vertex ``0`` joined to ``{1} x X`` with ``|X| = p``;
      a Steiner triple system on the other ``n-2`` vertices (so links of
      ``X``-vertices are perfect matchings) plus extra triples inside the rest.
    * otherwise: the same star around ``0``, with ``{x_i, x_j, w_c}`` for
      each pair of ``X`` coloured ``c`` in a proper edge colouring of ``K_p``
      and all triples of the colour vertices ``W``.
    """
    _require(n, 13, "GS3 construction")
    p = (n - 1) // 2
    if n % 12 in (3, 7):
        return Construction("gs3", n, ThreeGraph(n, steiner_triple_system(n)), 0)
    star = np.array([(0, 1, x) for x in range(2, p + 2)], dtype=np.int64)
    if n % 12 == 11:
        inner = steiner_triple_system(n - 2) + 2
        present = {tuple(e) for e in inner.tolist()}
        W = list(range(p + 2, n))
        extra = []
        for w in W:
            if any(w in e for e in extra):
                continue
            for a in W:
                for b in W:
                    t = tuple(sorted((w, a, b)))
                    if a < b and w not in (a, b) and t not in present:
                        extra.append(t)
                        present.add(t)
                        break
                else:
                    continue
                break
        edges = _join(star, inner, np.array(extra, dtype=np.int64).reshape(-1, 3))
        return Construction("gs3", n, ThreeGraph(n, edges), 0)
    W0 = p + 2
    coloured = np.array([(2 + i, 2 + j, W0 + c) for (i, j), c in _round_robin(p).items()],
                        dtype=np.int64)
    edges = _join(star, coloured, _triples(range(W0, n)))
    return Construction("gs3", n, ThreeGraph(n, edges), 0)


def turan_part_sizes(n: int) -> tuple[int, int, int]:
    return n // 3, (n + 1) // 3, (n + 2) // 3


def construct_turan_3partite(n: int) -> Construction:
    _require(n, 3, "complete 3-partite construction")
    p, q, r = turan_part_sizes(n)
    edges = _product(range(p), range(p, p + q), range(p + q, n))
    return Construction("turan3", n, ThreeGraph(n, edges), 0)


FAMILIES = {
    "f5": (construct_f5_lower, PatternId.F5),
    "lp3": (construct_trivial_intersecting, PatternId.LP3),
    "gp3": (construct_trivial_intersecting, PatternId.GP3),
    "tp3": (construct_tp3_lower, PatternId.TP3),
    "k113": (construct_k113_lower, PatternId.K113),
    "s3": (construct_s3_lower, PatternId.S3),
    "gs3": (construct_gs3_lower, PatternId.GS3),
    "turan3": (construct_turan_3partite, PatternId.F5),
}

MIN_N = {"f5": 5, "lp3": 4, "gp3": 4, "tp3": 6, "k113": 9, "s3": 11, "gs3": 13, "turan3": 3}


def construct(family: str, n: int) -> Construction:
    try:
        gen, _ = FAMILIES[family.lower()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    c = gen(n)
    return Construction(family.lower(), c.n, c.graph, c.vertex)


def family_for(pid: PatternId) -> str | None:
    pid = PatternId.parse(pid)
    for name, (_, p) in FAMILIES.items():
        if p is pid and name != "turan3":
            return name
    return None


# ---------------------------------------------------------------- claimed values

@dataclass(frozen=True)
class ClaimedBound:
    """Claimed value of ``c1(n, F)``.

    ``kind`` is ``"exact"`` (``value``), ``"open"`` (``lower < c1 < upper``,
    both integers) or ``"not-asserted"``.
    """

    pattern: PatternId
    n: int
    kind: str
    value: int | None = None
    lower: int | None = None
    upper: int | None = None
    valid_from: int | None = None

    def admits(self, c: int) -> bool:
        if self.kind == "exact":
            return c == self.value
        if self.kind == "open":
            return self.lower < c < self.upper
        return True

    def to_json(self) -> dict:
        return {"pattern": self.pattern.value, "n": self.n, "kind": self.kind, "value": self.value,
                "lower": self.lower, "upper": self.upper, "valid_from": self.valid_from}


_EXACT = {
    PatternId.LP3: (13, lambda n: n - 2),
    PatternId.TP3: (6, lambda n: n - 1 if n % 3 == 1 else n - 2),
    PatternId.GP3: (14, lambda n: n - 2),
    PatternId.K113: (9, lambda n: n - 1),
    PatternId.S3: (11, lambda n: n - 1),
    PatternId.GS3: (13, lambda n: (n - 1) // 2),
}

F5_VALID_FROM = 5


def f5_lower_bound(n: int) -> int:
    """``floor(n^2/8 - sqrt(2) n)``; ``8 sqrt(2) n`` is irrational for ``n >= 1``."""
    return (n * n - isqrt(128 * n * n) - 1) // 8


def f5_upper_bound(n: int) -> int:
    """``ceil(n^2/8 + 5n/4)``."""
    q = Fraction(n * n, 8) + Fraction(5 * n, 4)
    return -((-q.numerator) // q.denominator)


def exceeds_f5_lower(n: int, d: int) -> bool:
    """Exact test of ``d > n^2/8 - sqrt(2) n``."""
    gap = n * n - 8 * d
    return gap < 0 or gap * gap < 128 * n * n


def claimed_c1(pid: PatternId | str, n: int) -> ClaimedBound:
    pid = PatternId.parse(pid)
    if pid in _EXACT:
        start, f = _EXACT[pid]
        if n < start:
            return ClaimedBound(pid, n, "not-asserted", valid_from=start)
        return ClaimedBound(pid, n, "exact", value=f(n), valid_from=start)
    if pid is PatternId.F5:
        if n < F5_VALID_FROM:
            return ClaimedBound(pid, n, "not-asserted", valid_from=F5_VALID_FROM)
        return ClaimedBound(pid, n, "open", lower=f5_lower_bound(n), upper=f5_upper_bound(n),
                            valid_from=F5_VALID_FROM)
    return ClaimedBound(pid, n, "not-asserted")
