"""Non-induced embeddings of small 3-graphs, rooted copies and coverings.

The search maps pattern vertices one at a time.  Candidates for the next
pattern vertex come from bitset intersections: if it shares a pattern edge with
two placed vertices the candidates are the common third vertices of their
images, otherwise the co-edge neighbourhoods of placed images.  Host vertices
that are *twins* (the transposition swapping them is an automorphism of the
host) lead to isomorphic subtrees, so only one twin per class is tried at
each level whenever existence, not multiplicity, is asked.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .core import ThreeGraph
from .patterns import Pattern, PatternId, pattern

EXHAUSTIVE_CAP = 12
DENSE_INDEX_CAP = 320

Embedding = tuple[int, ...]


def _as_pattern_graph(F) -> tuple[ThreeGraph, PatternId | None]:
    if isinstance(F, ThreeGraph):
        return F, None
    if isinstance(F, Pattern):
        return F.graph, F.id
    p = pattern(F)
    return p.graph, p.id


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class HostIndex:
    """Bitset adjacency of a host 3-graph.

    ``pair[a][b]`` has bit ``c`` set iff ``{a, b, c}`` is an edge and
    ``nbr[a]`` has bit ``b`` set iff ``a`` and ``b`` share an edge.
    """

    def __init__(self, H: ThreeGraph):
        self.n = n = H.n
        self.deg = H.degrees.tolist()
        self.pair: list[list[int]] = [[0] * n for _ in range(n)]
        self.nbr = [0] * n
        if H.m and n <= DENSE_INDEX_CAP:
            self._fill_dense(H.edges)
        elif H.m:
            self._fill_by_vertex(H.edges)
        self._pair_deg = H.pair_degrees if H.m else None
        self._twin: list[int] | None = None
        self._deg_masks: dict[int, int] = {}

    def _fill_dense(self, e: np.ndarray) -> None:
        n = self.n
        cube = np.zeros((n, n, n), dtype=bool)
        for a, b, c in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            cube[e[:, a], e[:, b], e[:, c]] = True
        packed = np.packbits(cube, axis=2, bitorder="little")
        touched = cube.any(axis=2)
        for a in range(n):
            row = self.pair[a]
            for b in np.flatnonzero(touched[a]).tolist():
                row[b] = int.from_bytes(packed[a, b].tobytes(), "little")
            self.nbr[a] = int.from_bytes(np.packbits(touched[a], bitorder="little").tobytes(), "little")

    def _fill_by_vertex(self, e: np.ndarray) -> None:
        n = self.n
        ordered = np.concatenate([e[:, [0, 1, 2]], e[:, [0, 2, 1]], e[:, [1, 0, 2]],
                                  e[:, [1, 2, 0]], e[:, [2, 0, 1]], e[:, [2, 1, 0]]])
        ordered = ordered[np.argsort(ordered[:, 0], kind="stable")]
        starts = np.searchsorted(ordered[:, 0], np.arange(n + 1))
        for a in range(n):
            block = ordered[starts[a]:starts[a + 1]]
            if not len(block):
                continue
            slab = np.zeros((n, n), dtype=bool)
            slab[block[:, 1], block[:, 2]] = True
            packed = np.packbits(slab, axis=1, bitorder="little")
            row = self.pair[a]
            acc = 0
            for b in np.unique(block[:, 1]).tolist():
                row[b] = int.from_bytes(packed[b].tobytes(), "little")
                acc |= 1 << b
            self.nbr[a] = acc

    def at_least(self, d: int) -> int:
        """Mask of host vertices of degree at least ``d``."""
        mask = self._deg_masks.get(d)
        if mask is None:
            mask = 0
            for v, dv in enumerate(self.deg):
                if dv >= d:
                    mask |= 1 << v
            self._deg_masks[d] = mask
        return mask

    def are_twins(self, x: int, y: int) -> bool:
        clear = ~((1 << x) | (1 << y))
        px, py = self.pair[x], self.pair[y]
        for a in range(self.n):
            if a != x and a != y and (px[a] & clear) != (py[a] & clear):
                return False
        return True

    @property
    def twin_class(self) -> list[int]:
        """Class id per vertex; vertices with equal ids are pairwise twins."""
        if self._twin is None:
            n = self.n
            buckets: dict[tuple, list[int]] = defaultdict(list)
            if self._pair_deg is None:
                sig = [b""] * n
            else:
                sig = [row.tobytes() for row in np.sort(self._pair_deg, axis=1)]
            for v in range(n):
                buckets[(self.deg[v], sig[v])].append(v)
            cls = list(range(n))
            for members in buckets.values():
                reps: list[int] = []
                for v in members:
                    for r in reps:
                        if self.are_twins(r, v):
                            cls[v] = r
                            break
                    else:
                        reps.append(v)
            self._twin = cls
        return self._twin


def host_index(H: ThreeGraph) -> HostIndex:
    idx = H.__dict__.get("_host_index")
    if idx is None:
        idx = H.__dict__["_host_index"] = HostIndex(H)
    return idx


@dataclass(frozen=True)
class _Step:
    vertex: int
    pair_sources: tuple[tuple[int, int], ...]
    nbr_sources: tuple[int, ...]
    min_degree: int


class _Plan:
    """Placement order of pattern vertices with the candidate source per step."""

    def __init__(self, F: ThreeGraph, first: int):
        edges = [tuple(e) for e in F.edge_list()]
        deg = F.degrees.tolist()
        order = [first]
        placed = {first}
        while len(order) < F.n:
            def score(w):
                pairs = sum(1 for e in edges if w in e and sum(u in placed for u in e if u != w) == 2)
                touch = sum(1 for e in edges if w in e and any(u in placed for u in e if u != w))
                return (pairs, touch, deg[w], -w)
            w = max((w for w in range(F.n) if w not in placed), key=score)
            order.append(w)
            placed.add(w)
        pos = {w: i for i, w in enumerate(order)}
        steps = []
        for i, w in enumerate(order):
            pair_sources, nbr_sources = [], set()
            for e in edges:
                if w not in e:
                    continue
                others = [u for u in e if u != w]
                earlier = [u for u in others if pos[u] < i]
                if len(earlier) == 2:
                    pair_sources.append((earlier[0], earlier[1]))
                elif len(earlier) == 1:
                    nbr_sources.add(earlier[0])
            steps.append(_Step(w, tuple(pair_sources), tuple(sorted(nbr_sources)), deg[w]))
        # after step i: the placed roles of each pattern edge that is only partly placed
        self.open_edges = []
        for i in range(len(order)):
            done = set(order[:i + 1])
            self.open_edges.append(tuple(
                tuple(u for u in e if u in done) for e in edges if 0 < sum(u in done for u in e) < 3))
        self.steps = steps
        self.k = F.n


def _plans(F: ThreeGraph) -> list[_Plan]:
    plans = F.__dict__.get("_plans")
    if plans is None:
        plans = F.__dict__["_plans"] = [_Plan(F, r) for r in range(F.n)]
    return plans


def _search(idx: HostIndex, plan: _Plan, fixed: int | None, reduce: bool, limit: int | None):
    """Depth-first embedding search; yields embeddings as tuples.

    ``fixed`` pins the first pattern vertex of the plan to that host vertex.
    """
    steps = plan.steps
    k = plan.k
    phi = [-1] * k
    twin = idx.twin_class if reduce else None
    pair, nbr = idx.pair, idx.nbr
    all_mask = (1 << idx.n) - 1
    found = 0

    def candidates(i: int, used: int) -> int:
        st = steps[i]
        if st.pair_sources:
            y, z = st.pair_sources[0]
            cand = pair[phi[y]][phi[z]]
            for y, z in st.pair_sources[1:]:
                cand &= pair[phi[y]][phi[z]]
        else:
            cand = all_mask
        for y in st.nbr_sources:
            cand &= nbr[phi[y]]
        return cand & ~used & idx.at_least(st.min_degree)

    open_edges = plan.open_edges

    def extendable(i: int, used: int) -> bool:
        # each partly placed pattern edge still needs free host vertices to close it
        free = ~used
        for placed in open_edges[i - 1]:
            if len(placed) == 2:
                if not pair[phi[placed[0]]][phi[placed[1]]] & free:
                    return False
            else:
                a = phi[placed[0]]
                row = pair[a]
                for h in _bits(nbr[a] & free):
                    if row[h] & free:
                        break
                else:
                    return False
        return True

    def rec(i: int, used: int):
        nonlocal found
        if i == k:
            found += 1
            yield tuple(phi)
            return
        if i and not extendable(i, used):
            return
        cand = candidates(i, used)
        seen = set() if reduce else None
        w = steps[i].vertex
        for h in _bits(cand):
            if seen is not None:
                c = twin[h]
                if c in seen:
                    continue
                seen.add(c)
            phi[w] = h
            yield from rec(i + 1, used | (1 << h))
            if limit is not None and found >= limit:
                return
        phi[w] = -1

    if fixed is not None:
        st = steps[0]
        if idx.deg[fixed] < st.min_degree:
            return
        phi[st.vertex] = fixed
        yield from rec(1, 1 << fixed)
    else:
        yield from rec(0, 0)


def iter_embeddings(H: ThreeGraph, F) -> Iterator[Embedding]:
    """All embeddings of ``F`` into ``H`` (no symmetry reduction)."""
    F, _ = _as_pattern_graph(F)
    if F.n > H.n:
        return
    if F.n == 0:
        yield ()
        return
    plan = _plans(F)[int(np.argmax(F.degrees))]
    yield from _search(host_index(H), plan, None, False, None)


def find_rooted_copy(H: ThreeGraph, F, v: int, *, reduce: bool = True) -> Embedding | None:
    """An embedding of ``F`` whose image contains ``v``, or ``None`` if none exists."""
    F, _ = _as_pattern_graph(F)
    v = H._check_vertex(v)
    if F.n > H.n or F.n == 0:
        return None
    idx = host_index(H)
    for plan in _plans(F):
        for emb in _search(idx, plan, v, reduce, 1):
            return emb
    return None


def is_valid_embedding(H: ThreeGraph, F, emb) -> bool:
    F, _ = _as_pattern_graph(F)
    emb = tuple(emb)
    if len(emb) != F.n or len(set(emb)) != F.n or any(not 0 <= h < H.n for h in emb):
        return False
    return all(tuple(emb[u] for u in e) in H for e in F.edge_list())


@dataclass
class CoverageReport:
    pattern: PatternId | None
    covered: list[bool]
    uncovered: list[int]
    witnesses: dict[int, Embedding] | None = field(default=None)

    @property
    def is_covering(self) -> bool:
        return not self.uncovered

    def to_json(self) -> dict:
        out = {
            "pattern": self.pattern.value if self.pattern else None,
            "n": len(self.covered),
            "covering": self.is_covering,
            "covered": self.covered,
            "uncovered": self.uncovered,
        }
        if self.witnesses is not None:
            out["witnesses"] = {str(v): list(e) for v, e in sorted(self.witnesses.items())}
        return out


def has_covering(H: ThreeGraph, F, *, witnesses: bool = False) -> CoverageReport:
    """Covering report over every vertex of ``H``."""
    Fg, pid = _as_pattern_graph(F)
    n = H.n
    covered = [False] * n
    wit: dict[int, Embedding] = {}
    twin = host_index(H).twin_class if Fg.n <= n and n else None
    for v in range(n):
        if covered[v]:
            continue
        emb = find_rooted_copy(H, Fg, v)
        if emb is None:
            continue
        # every vertex of the image is covered by the same copy
        for h in emb:
            if not covered[h]:
                covered[h] = True
                wit[h] = emb
        if twin is not None:
            # a twin of an image vertex is covered by the swapped copy
            for u in range(n):
                if not covered[u] and twin[u] != u:
                    for pos, h in enumerate(emb):
                        if twin[h] == twin[u]:
                            swapped = list(emb)
                            swapped[pos] = u
                            covered[u] = True
                            wit[u] = tuple(swapped)
                            break
    uncovered = [v for v in range(n) if not covered[v]]
    return CoverageReport(pid, covered, uncovered, wit if witnesses else None)


def is_free(H: ThreeGraph, F) -> bool:
    Fg, _ = _as_pattern_graph(F)
    if Fg.n > H.n:
        return True
    plan = _plans(Fg)[int(np.argmax(Fg.degrees))]
    for _ in _search(host_index(H), plan, None, True, 1):
        return False
    return True


def count_labeled_copies(H: ThreeGraph, F, *, exhaustive: bool = False) -> int:
    """Number of embeddings of ``F`` into ``H``.

    ``exhaustive=True`` runs through every injection ``V(F) -> V(H)`` and is
    limited to hosts with at most ``EXHAUSTIVE_CAP`` vertices.
    """
    Fg, _ = _as_pattern_graph(F)
    if exhaustive:
        if H.n > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive count limited to {EXHAUSTIVE_CAP} host vertices")
        host = {frozenset(e) for e in H.edge_list()}
        f_edges = Fg.edge_list()
        return sum(
            1 for inj in permutations(range(H.n), Fg.n)
            if all(frozenset(inj[u] for u in e) in host for e in f_edges)
        )
    return sum(1 for _ in iter_embeddings(H, Fg))


def is_connected(G: ThreeGraph) -> bool:
    """Whether every two vertices are joined by a chain of pairwise-meeting edges."""
    if G.n <= 1:
        return True
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in G.edge_list():
        ra, rb, rc = find(a), find(b), find(c)
        parent[rb] = ra
        parent[rc] = ra
    root = find(0)
    return all(find(v) == root for v in range(G.n))
