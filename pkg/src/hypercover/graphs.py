"""Common-neighbour graphs, maximum matchings and Tutte–Berge certificates.

A Tutte–Berge certificate for a bound ``s`` is a vertex set ``B`` such that
every component of ``G - B`` has odd size and

    |B| + sum((|K| - 1) / 2) = s,      |B| + sum(|K|) = n.

Its existence forces ``nu(G) <= s``: each matching edge either meets ``B`` or
lies inside one component.  Conversely, when ``nu(G) <= s <= n`` one exists;
values below ``nu(G)`` or above ``n`` are never certified.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .core import Graph2

EXHAUSTIVE_CERTIFICATE_CAP = 20


def common_neighbor_graph(G: Graph2) -> Graph2:
    """Pairs of vertices with at least one common neighbour in ``G``."""
    adj = G.adjacency_bits
    pairs = [(a, b) for b in range(G.n) for a in range(b) if adj[a] & adj[b]]
    return Graph2(G.n, pairs, _canonical=True)


def check_common_neighbor_lemma(G: Graph2) -> bool:
    """``|E(E(G))| >= |E(G)| - n/2``, compared after doubling both sides."""
    return 2 * common_neighbor_graph(G).m >= 2 * G.m - G.n


def maximum_matching(G: Graph2) -> list[int]:
    """Mate array of a maximum matching (``-1`` for exposed vertices).

    Edmonds' algorithm: grow alternating trees by BFS from each exposed vertex,
    contracting odd cycles into their base when two outer vertices meet.
    """
    n = G.n
    adj = [sorted(s) for s in G.adjacency]
    mate = [-1] * n

    # greedy start halves the number of phases on dense inputs
    for v in range(n):
        if mate[v] < 0:
            for w in adj[v]:
                if mate[w] < 0:
                    mate[v], mate[w] = w, v
                    break

    for root in range(n):
        if mate[root] < 0 and adj[root]:
            _augment_from(root, adj, mate)
    return mate


def _augment_from(root: int, adj: list[list[int]], mate: list[int]) -> bool:
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    outer = [False] * n
    outer[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] < 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if base[v] == base[w] or mate[v] == w:
                continue
            if w == root or (mate[w] >= 0 and parent[mate[w]] >= 0):
                # w is outer: an odd cycle closes, contract it
                b = lca(v, w)
                in_blossom = [False] * n
                mark_path(v, b, w, in_blossom)
                mark_path(w, b, v, in_blossom)
                for u in range(n):
                    if in_blossom[base[u]]:
                        base[u] = b
                        if not outer[u]:
                            outer[u] = True
                            queue.append(u)
            elif parent[w] < 0:
                parent[w] = v
                if mate[w] < 0:
                    # augmenting path found; flip it back to the root
                    while w >= 0:
                        pv = parent[w]
                        nxt = mate[pv]
                        mate[w], mate[pv] = pv, w
                        w = nxt
                    return True
                outer[mate[w]] = True
                queue.append(mate[w])
    return False


def max_matching_size(G: Graph2) -> int:
    """Matching number ``nu(G)``."""
    return sum(1 for v, w in enumerate(maximum_matching(G)) if w > v)


def brute_force_matching_size(G: Graph2) -> int:
    """``nu(G)`` by exhaustive recursion over vertex subsets; small graphs only.

    The lowest remaining vertex is either left unmatched or matched to one of
    its remaining neighbours; results are memoised per remaining subset.
    """
    adj = G.adjacency_bits
    memo: dict[int, int] = {0: 0}

    def best(left: int) -> int:
        if left in memo:
            return memo[left]
        low = left & -left
        v = low.bit_length() - 1
        rest = left ^ low
        value = best(rest)
        partners = adj[v] & rest
        while partners:
            w = partners & -partners
            partners ^= w
            value = max(value, 1 + best(rest ^ w))
        memo[left] = value
        return value

    return best((1 << G.n) - 1)


@dataclass(frozen=True)
class TutteBergeCertificate:
    B: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    s: int

    def is_valid(self, G: Graph2) -> bool:
        """Check the three defining conditions against ``G``."""
        comps = [set(c) for c in self.components]
        if any(len(c) % 2 == 0 for c in comps):
            return False
        if len(self.B) + sum((len(c) - 1) // 2 for c in comps) != self.s:
            return False
        if len(self.B) + sum(len(c) for c in comps) != G.n:
            return False
        actual = _components(G, _mask(self.B))
        return sorted(map(sorted, comps)) == sorted(map(sorted, actual))

    def to_json(self) -> dict:
        return {"B": list(self.B), "components": [list(c) for c in self.components], "s": self.s}


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _components(G: Graph2, removed: int) -> list[tuple[int, ...]]:
    adj = G.adjacency_bits
    left = ((1 << G.n) - 1) & ~removed
    comps = []
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = adj[low.bit_length() - 1] & left & ~comp
            comp |= fresh
            frontier |= fresh
        left &= ~comp
        comps.append(tuple(v for v in range(G.n) if comp >> v & 1))
    return comps


def _certificate(G: Graph2, B: tuple[int, ...], s: int) -> TutteBergeCertificate | None:
    comps = _components(G, _mask(B))
    if any(len(c) % 2 == 0 for c in comps):
        return None
    if len(B) + sum((len(c) - 1) // 2 for c in comps) != s:
        return None
    return TutteBergeCertificate(tuple(B), tuple(comps), s)


def tutte_berge_certificate(G: Graph2, s: int) -> TutteBergeCertificate | None:
    """A certificate that ``nu(G) <= s``, or ``None`` when none exists.

    Up to 20 vertices, candidate sets ``B`` are tried by size and then in
    colex order, and the first one found is returned.  Larger graphs get a
    certificate built from the matching structure.
    """
    if s < 0:
        return None
    if G.n <= EXHAUSTIVE_CERTIFICATE_CAP:
        return _exhaustive_certificate(G, s)
    return _structural_certificate(G, s)


def _exhaustive_certificate(G: Graph2, s: int) -> TutteBergeCertificate | None:
    n = G.n
    # all components odd: s = (n + |B| - #components) / 2, so 2s - n <= |B| <= s
    for size in range(max(0, 2 * s - n), min(s, n) + 1):
        for B in sorted(combinations(range(n), size), key=lambda c: c[::-1]):
            cert = _certificate(G, B, s)
            if cert is not None:
                return cert
    return None


def _structural_certificate(G: Graph2, s: int) -> TutteBergeCertificate | None:
    n = G.n
    nu = max_matching_size(G)
    if not nu <= s <= n:
        return None
    # vertices missed by some maximum matching, then their outside neighbours
    missable = [v for v in range(n) if max_matching_size(_without(G, v)) == nu]
    dmask = _mask(missable)
    adj = G.adjacency_bits
    B = {v for v in range(n) if not dmask >> v & 1 and adj[v] & dmask}
    # split even components: removing one vertex adds exactly one odd component
    while True:
        even = [c for c in _components(G, _mask(B)) if len(c) % 2 == 0]
        if not even:
            break
        B.add(even[0][0])
    value = nu
    while value < s:
        comps = _components(G, _mask(B))
        single = next((c for c in comps if len(c) == 1), None)
        if single is not None:
            B.add(single[0])
        else:
            B.update(_two_leaves(G, comps[0]))
        value += 1
    cert = _certificate(G, tuple(sorted(B)), s)
    if cert is None:  # pragma: no cover - the construction above guarantees one
        raise AssertionError("certificate construction broke an invariant")
    return cert


def _without(G: Graph2, v: int) -> Graph2:
    """``G`` with every edge at ``v`` dropped (vertex kept, now isolated)."""
    return Graph2(G.n, [e for e in G.edge_list() if v not in e], _canonical=True)


def _two_leaves(G: Graph2, comp: tuple[int, ...]) -> tuple[int, int]:
    """Two leaves of a BFS spanning tree of a connected component with >= 3 vertices."""
    inside = set(comp)
    root = comp[0]
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(G.adjacency[v]):
            if w in inside and w not in parent:
                parent[w] = v
                order.append(w)
                queue.append(w)
    tree_degree = dict.fromkeys(order, 0)
    for v, p in parent.items():
        if p is not None:
            tree_degree[v] += 1
            tree_degree[p] += 1
    leaves = [v for v in order if tree_degree[v] == 1]
    return leaves[-1], leaves[-2]
