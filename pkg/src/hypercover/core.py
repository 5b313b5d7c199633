"""Canonical 3-graphs and 2-graphs on the vertex set ``0..n-1``.

Edges are kept as a read-only ``(m, k)`` integer array whose rows are strictly
increasing and whose row order is colex order.  The colex rank of a triple
``a < b < c`` is ``C(c,3) + C(b,2) + a`` and of a pair ``a < b`` is
``C(b,2) + a``; the same ranks index the bits of :attr:`ThreeGraph.mask`.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import cached_property
from math import comb

import numpy as np

MAX_VERTICES = 2048


def triple_rank(a: int, b: int, c: int) -> int:
    return comb(c, 3) + comb(b, 2) + a


def pair_rank(a: int, b: int) -> int:
    return comb(b, 2) + a


def _canonical_rows(n: int, edges, k: int) -> np.ndarray:
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    if isinstance(edges, (set, frozenset)):
        edges = sorted(tuple(e) for e in edges)
    elif not isinstance(edges, np.ndarray):
        edges = [tuple(e) for e in edges]
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, k), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != k:
        raise ValueError(f"edges must be {k}-element vertex sets")
    arr = np.sort(arr, axis=1)
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"edge vertex out of range 0..{n - 1}")
    if np.any(arr[:, 1:] == arr[:, :-1]):
        raise ValueError("edge with a repeated vertex")
    ranks = _ranks(arr)
    order = np.argsort(ranks, kind="stable")
    ranks = ranks[order]
    if np.any(ranks[1:] == ranks[:-1]):
        raise ValueError("duplicate edge")
    return arr[order]


def _ranks(arr: np.ndarray) -> np.ndarray:
    if arr.shape[1] == 3:
        a, b, c = arr[:, 0], arr[:, 1], arr[:, 2]
        return c * (c - 1) * (c - 2) // 6 + b * (b - 1) // 2 + a
    a, b = arr[:, 0], arr[:, 1]
    return b * (b - 1) // 2 + a


def _mask_from_ranks(ranks: np.ndarray, size: int) -> int:
    if ranks.size == 0:
        return 0
    bits = np.zeros(size, dtype=np.uint8)
    bits[ranks] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


class _UniformGraph:
    arity = 0

    def __init__(self, n: int, edges: Iterable = (), *, _canonical: bool = False):
        self.n = int(n)
        rows = np.asarray(edges, dtype=np.int64) if _canonical else _canonical_rows(self.n, edges, self.arity)
        if rows.size == 0:
            rows = np.zeros((0, self.arity), dtype=np.int64)
        rows.flags.writeable = False
        self.edges = rows

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def ranks(self) -> np.ndarray:
        return _ranks(self.edges) if len(self.edges) else np.zeros(0, dtype=np.int64)

    @cached_property
    def mask(self) -> int:
        """Edge set as an int whose bit ``r`` is set iff the colex-rank-``r`` edge is present."""
        return _mask_from_ranks(self.ranks, comb(self.n, self.arity))

    @cached_property
    def _rank_set(self) -> frozenset[int]:
        return frozenset(self.ranks.tolist())

    def edge_list(self) -> list[tuple[int, ...]]:
        return [tuple(row) for row in self.edges.tolist()]

    def __contains__(self, e) -> bool:
        e = sorted(e)
        if len(e) != self.arity or e[0] < 0 or e[-1] >= self.n:
            return False
        return _ranks(np.array([e], dtype=np.int64))[0] in self._rank_set

    def __iter__(self):
        return iter(self.edge_list())

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.n, self.mask))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m})"

    @cached_property
    def degrees(self) -> np.ndarray:
        """Vertex degrees as an ``n``-vector."""
        deg = np.bincount(self.edges.ravel(), minlength=self.n) if self.m else np.zeros(self.n, dtype=np.int64)
        deg.flags.writeable = False
        return deg

    def _check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        return int(v)


class ThreeGraph(_UniformGraph):
    """A 3-uniform hypergraph; immutable once built."""

    arity = 3

    @classmethod
    def from_mask(cls, n: int, mask: int) -> ThreeGraph:
        rows = []
        for c in range(2, n):
            for b in range(1, c):
                for a in range(b):
                    if mask >> triple_rank(a, b, c) & 1:
                        rows.append((a, b, c))
        return cls(n, rows, _canonical=True)

    @classmethod
    def complete(cls, n: int) -> ThreeGraph:
        return cls(n, list(colex_triples(n)), _canonical=True)

    @cached_property
    def pair_degrees(self) -> np.ndarray:
        """``n x n`` symmetric matrix of pair degrees (zero diagonal)."""
        d = np.zeros((self.n, self.n), dtype=np.int64)
        if self.m:
            e = self.edges
            for i, j in ((0, 1), (0, 2), (1, 2)):
                np.add.at(d, (e[:, i], e[:, j]), 1)
            d += d.T
        d.flags.writeable = False
        return d


class Graph2(_UniformGraph):
    """A simple 2-graph; immutable once built."""

    arity = 2

    @cached_property
    def adjacency(self) -> list[frozenset[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges.tolist():
            adj[a].add(b)
            adj[b].add(a)
        return [frozenset(s) for s in adj]

    @cached_property
    def adjacency_bits(self) -> list[int]:
        bits = [0] * self.n
        for a, b in self.edges.tolist():
            bits[a] |= 1 << b
            bits[b] |= 1 << a
        return bits

    @classmethod
    def complete(cls, n: int) -> Graph2:
        return cls(n, [(a, b) for b in range(n) for a in range(b)], _canonical=True)


def colex_triples(n: int):
    for c in range(2, n):
        for b in range(1, c):
            for a in range(b):
                yield (a, b, c)


def _vertex_set(H: _UniformGraph, S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(v) for v in S)))
    for v in S:
        H._check_vertex(v)
    return S


def degree(H: ThreeGraph, S: Iterable[int]) -> int:
    """Number of edges of ``H`` containing the 1- or 2-set ``S``."""
    S = _vertex_set(H, S)
    if len(S) == 1:
        return int(H.degrees[S[0]])
    if len(S) == 2:
        return int(H.pair_degrees[S[0], S[1]])
    raise ValueError("degree is defined for sets of size 1 or 2")


def min_i_degree(H: ThreeGraph, i: int) -> int:
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if H.n < i:
        raise ValueError(f"minimum {i}-degree needs at least {i} vertices")
    if i == 1:
        return int(H.degrees.min())
    d = H.pair_degrees
    iu = np.triu_indices(H.n, 1)
    return int(d[iu].min())


def argmin_degree(H: ThreeGraph) -> int:
    return int(np.argmin(H.degrees))


def _relabel(n: int, removed: Iterable[int]) -> tuple[np.ndarray, dict[int, int]]:
    keep = np.ones(n, dtype=bool)
    keep[list(removed)] = False
    new_index = np.full(n, -1, dtype=np.int64)
    new_index[keep] = np.arange(int(keep.sum()))
    mapping = {int(v): int(new_index[v]) for v in np.flatnonzero(keep)}
    return new_index, mapping


def link_graph(H: ThreeGraph, x: int) -> tuple[Graph2, dict[int, int]]:
    """Link 2-graph of ``x`` on the other ``n-1`` vertices.

    Returns the graph together with the order-preserving relabeling
    ``old vertex -> new vertex``.
    """
    x = H._check_vertex(x)
    new_index, mapping = _relabel(H.n, [x])
    e = H.edges
    rows = e[(e == x).any(axis=1)]
    pairs = rows[rows != x].reshape(-1, 2)
    return Graph2(H.n - 1, new_index[pairs]), mapping


def remove_vertices(H: _UniformGraph, U: Iterable[int]):
    """Induced subgraph on the complement of ``U``, relabeled order-preservingly.

    Returns ``(graph, mapping)`` with ``mapping`` sending kept old vertices to
    their new labels.
    """
    U = _vertex_set(H, U)
    new_index, mapping = _relabel(H.n, U)
    e = H.edges
    kept = e[(new_index[e] >= 0).all(axis=1)] if len(e) else e
    # order-preserving relabel keeps colex order of the surviving rows
    return type(H)(H.n - len(U), new_index[kept], _canonical=True), mapping


def permute(H: _UniformGraph, perm) -> _UniformGraph:
    """Image of ``H`` under the vertex map ``v -> perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(H.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return type(H)(H.n, perm[H.edges] if H.m else ())
