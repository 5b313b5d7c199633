"""Exact and heuristic computation of covering thresholds ``c_i(n, F)``.

``c_i(n, F)`` is the largest minimum ``i``-degree of an ``n``-vertex 3-graph in
which some vertex lies in no copy of ``F``.  Relabeling lets that vertex be
``0`` throughout.

The exact search decides the ``C(n, 3)`` triples one by one (triples avoiding
``0`` first, then those through ``0``), trying inclusion before exclusion.  A
decision vector is read as an integer whose most significant bit is the first
decision, so the search visits complete graphs in decreasing integer order.

* An edge may be included only if it does not complete a copy of ``F``
  through ``0``; these copies are precomputed as bitmasks.
* Bound: ``delta_i`` of any completion is at most
  ``min_S (included + undecided edges containing S)``; subtrees that cannot
  beat the incumbent are cut.
* Symmetry: relabelings of ``1..n-1`` preserve everything, so only graphs
  whose integer is at least that of each transposed copy can be orbit maxima.
  A branch is cut as soon as the decided prefix already loses to a transposed
  prefix.

Because the visit order is decreasing, the witness returned is the optimal
graph with the largest integer; this holds for any thread count.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .constructions import MIN_N, construct, family_for
from .core import ThreeGraph, min_i_degree
from .embedding import find_rooted_copy, iter_embeddings
from .patterns import PatternId, pattern

COMPLETENESS_CAP = {1: 7, 2: 6}
ORACLE_CAP = 6
METHODS = ("exhaustive", "naive-oracle", "probe-lower-bound")


@dataclass(frozen=True)
class SearchConfig:
    threads: int = 1
    node_budget: int = 50_000_000
    value_floor: int | None = None
    symmetry: bool = True
    split_depth: int = 8

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("thread count must be positive")
        if self.node_budget < 1:
            raise ValueError("node budget must be positive")
        if self.split_depth < 0:
            raise ValueError("split depth must be non-negative")


@dataclass
class ThresholdResult:
    pattern: PatternId
    n: int
    i: int
    value: int
    witness: ThreeGraph
    method: str
    nodes_explored: int
    degenerate: bool = False
    seconds: float = 0.0
    uncovered_vertex: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.value,
            "n": self.n,
            "i": self.i,
            "value": self.value,
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "degenerate": self.degenerate,
            "uncovered_vertex": self.uncovered_vertex,
            "seconds": round(self.seconds, 6),
            "witness": {"n": self.witness.n, "edges": self.witness.edges.tolist()},
        }


def _validate(n: int, i: int) -> None:
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if n < max(1, i):
        raise ValueError(f"need at least {max(1, i)} vertices for i = {i}")


def _degenerate(pid: PatternId, n: int, i: int, method: str) -> ThresholdResult:
    K = ThreeGraph.complete(n)
    return ThresholdResult(pid, n, i, math.comb(n - i, 3 - i), K, method, 0, degenerate=True)


# ---------------------------------------------------------------- search space

class _Space:
    """Everything the DFS needs that depends only on ``(F, n, i)``."""

    def __init__(self, pid: PatternId, n: int, i: int):
        self.n, self.i = n, i
        triples = [(a, b, c) for c in range(n) for b in range(c) for a in range(b)]
        self.order = [t for t in triples if t[0] != 0] + [t for t in triples if t[0] == 0]
        N = self.N = len(self.order)
        pos = {t: p for p, t in enumerate(self.order)}
        self.bit = [1 << (N - 1 - p) for p in range(N)]

        F = pattern(pid).graph
        copies = set()
        for emb in iter_embeddings(ThreeGraph.complete(n), F):
            if 0 in emb:
                m = 0
                for e in F.edge_list():
                    m |= self.bit[pos[tuple(sorted(emb[u] for u in e))]]
                copies.add(m)
        self.copies_at = [[c for c in copies if c & self.bit[p]] for p in range(N)]

        sets = [(v,) for v in range(n)] if i == 1 else list(combinations(range(n), 2))
        index = {S: k for k, S in enumerate(sets)}
        self.num_sets = len(sets)
        self.sets_at = [[index[S] for S in combinations(t, i)] for t in self.order]
        self.undecided0 = [math.comb(n - i, 3 - i)] * len(sets)

        self.transpositions = []
        for a, b in combinations(range(1, n), 2):
            swap = list(range(n))
            swap[a], swap[b] = b, a
            target = [pos[tuple(sorted(swap[v] for v in t))] for t in self.order]
            if target == list(range(N)):
                continue
            self.transpositions.append(_Transposition(target, N))
        # at depth j, the transpositions whose determined prefix just grew
        self.check_at = [[] for _ in range(N + 1)]
        for tr in self.transpositions:
            for j in range(1, N + 1):
                if tr.prefix[j] > tr.prefix[j - 1]:
                    self.check_at[j].append(tr)

    def graph(self, x: int) -> ThreeGraph:
        return ThreeGraph(self.n, [t for p, t in enumerate(self.order) if x & self.bit[p]])


class _Transposition:
    """A relabeling acting on decision vectors through byte lookup tables."""

    def __init__(self, target: list[int], N: int):
        self.N = N
        # decision p of the image reads decision target[p] of the source (an involution)
        self.prefix = [0] * (N + 1)
        for j in range(N + 1):
            L = 0
            while L < N and target[L] < j:
                L += 1
            self.prefix[j] = L
        self.tables = []
        for k in range(0, N, 8):
            table = [0] * 256
            for v in range(256):
                out = 0
                for t in range(8):
                    if v >> t & 1 and k + t < N:
                        q = N - 1 - (k + t)
                        out |= 1 << (N - 1 - target[q])
                table[v] = out
            self.tables.append(table)

    def apply(self, x: int) -> int:
        out = 0
        for table in self.tables:
            out |= table[x & 255]
            x >>= 8
        return out


@lru_cache(maxsize=32)
def _space(pid: PatternId, n: int, i: int) -> _Space:
    return _Space(pid, n, i)


class _BudgetExhausted(Exception):
    pass


class _Search:
    """One depth-first search over a subtree of decision vectors."""

    def __init__(self, space: _Space, symmetry: bool, budget: int, floor: int | None,
                 shared=None):
        self.sp = space
        self.symmetry = symmetry
        self.budget = budget
        self.nodes = 0
        self.best = -1 if floor is None else floor - 1
        self.best_x: int | None = None
        self.shared = shared
        self.inc = [0] * space.num_sets
        self.und = list(space.undecided0)

    # a prefix passes if no transposition already gives a larger decided prefix
    def _canonical(self, j: int, x: int) -> bool:
        N = self.sp.N
        for tr in self.sp.check_at[j]:
            shift = N - tr.prefix[j]
            if tr.apply(x) >> shift > x >> shift:
                return False
        return True

    def _bar(self) -> int:
        if self.shared is not None:
            return max(self.best, self.shared.value - 1)
        return self.best

    def descend(self, prefix: list[bool]) -> tuple[int, int, int] | None:
        """Replay a fixed prefix; returns ``(j, x, bound)`` or ``None`` if it is infeasible."""
        sp = self.sp
        x, bound = 0, min(a + b for a, b in zip(self.inc, self.und))
        for j, take in enumerate(prefix):
            if take:
                if not self._can_include(j, x):
                    return None
                x |= sp.bit[j]
                for S in sp.sets_at[j]:
                    self.inc[S] += 1
                    self.und[S] -= 1
            else:
                for S in sp.sets_at[j]:
                    self.und[S] -= 1
                    bound = min(bound, self.inc[S] + self.und[S])
            if self.symmetry and not self._canonical(j + 1, x):
                return None
        return len(prefix), x, bound

    def _can_include(self, p: int, x: int) -> bool:
        b = self.sp.bit[p]
        for c in self.sp.copies_at[p]:
            if c & ~x == b:
                return False
        return True

    def run(self, j: int, x: int, bound: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        if bound <= self._bar():
            return
        sp = self.sp
        if j == sp.N:
            value = min(self.inc)
            if value > self.best:
                self.best, self.best_x = value, x
                if self.shared is not None:
                    with self.shared.get_lock():
                        if value > self.shared.value:
                            self.shared.value = value
            return
        if self.symmetry and j and not self._canonical(j, x):
            return
        inc, und = self.inc, self.und
        sets = sp.sets_at[j]
        if self._can_include(j, x):
            for S in sets:
                inc[S] += 1
                und[S] -= 1
            self.run(j + 1, x | sp.bit[j], bound)
            for S in sets:
                inc[S] -= 1
                und[S] += 1
            if bound <= self._bar():
                return
        lowered = bound
        for S in sets:
            und[S] -= 1
            if inc[S] + und[S] < lowered:
                lowered = inc[S] + und[S]
        if lowered > self._bar():
            self.run(j + 1, x, lowered)
        for S in sets:
            und[S] += 1


def _prefixes(depth: int) -> list[list[bool]]:
    """All decision prefixes of a given length in visiting order (include first)."""
    out = [[]]
    for _ in range(depth):
        out = [p + [take] for p in out for take in (True, False)]
    return out


# ---------------------------------------------------------------- workers

_shared_best = None


def _init_worker(shared) -> None:
    global _shared_best
    _shared_best = shared


def _run_subtree(args) -> tuple[int, int | None, int, bool]:
    pid, n, i, symmetry, budget, floor, prefix = args
    search = _Search(_space(pid, n, i), symmetry, budget, floor, _shared_best)
    start = search.descend(prefix)
    exhausted = False
    if start is not None:
        j, x, bound = start
        if bound > search._bar():
            try:
                search.run(j, x, bound)
            except _BudgetExhausted:
                exhausted = True
    return search.best, search.best_x, search.nodes, exhausted


def _run_search(pid: PatternId, n: int, i: int, cfg: SearchConfig, floor: int | None):
    sp = _space(pid, n, i)
    if cfg.threads == 1:
        search = _Search(sp, cfg.symmetry, cfg.node_budget, floor)
        try:
            search.run(0, 0, min(sp.undecided0))
            exhausted = False
        except _BudgetExhausted:
            exhausted = True
        return search.best, search.best_x, search.nodes, exhausted

    depth = min(cfg.split_depth, sp.N)
    shared = multiprocessing.Value("i", -1 if floor is None else floor - 1)
    tasks = [(pid, n, i, cfg.symmetry, cfg.node_budget, floor, p) for p in _prefixes(depth)]
    with ProcessPoolExecutor(cfg.threads, initializer=_init_worker, initargs=(shared,)) as pool:
        outcomes = list(pool.map(_run_subtree, tasks))
    best, best_x, nodes, exhausted = -1 if floor is None else floor - 1, None, 0, False
    for value, x, used, ran_out in outcomes:
        nodes += used
        exhausted |= ran_out
        # subtrees are listed in visiting order, so the first maximum wins
        if x is not None and value > best:
            best, best_x = value, x
    return best, best_x, nodes, exhausted


def exact_threshold(pid: PatternId | str, n: int, i: int, cfg: SearchConfig | None = None,
                    *, beyond_cap: bool = False) -> ThresholdResult:
    """``c_i(n, F)`` by complete search, with a witness whose vertex ``0`` is uncovered.

    If the node budget runs out the best graph found so far is returned with
    method ``probe-lower-bound``.  Sizes above the completeness cap need
    ``beyond_cap=True``.
    """
    pid = PatternId.parse(pid)
    _validate(n, i)
    cfg = cfg or SearchConfig()
    began = time.perf_counter()
    if n < pattern(pid).n:
        result = _degenerate(pid, n, i, "exhaustive")
        result.seconds = time.perf_counter() - began
        return result
    if n > COMPLETENESS_CAP[i] and not beyond_cap:
        raise ValueError(f"exact search is only guaranteed up to n = {COMPLETENESS_CAP[i]} for i = {i}")

    best, best_x, nodes, exhausted = _run_search(pid, n, i, cfg, cfg.value_floor)
    if best_x is None and cfg.value_floor is not None and not exhausted:
        # nothing reaches the floor: search again without it
        best, best_x, more, exhausted = _run_search(pid, n, i, cfg, None)
        nodes += more
    sp = _space(pid, n, i)
    if best_x is None:
        # budget ran out before any leaf; the empty graph is always a valid witness
        witness, best = ThreeGraph(n), 0
    else:
        witness = sp.graph(best_x)
    method = "probe-lower-bound" if exhausted else "exhaustive"
    return ThresholdResult(pid, n, i, best, witness, method, nodes,
                           seconds=time.perf_counter() - began)


# ---------------------------------------------------------------- naive oracle

def naive_threshold_oracle(pid: PatternId | str, n: int, i: int) -> ThresholdResult:
    """``c_i(n, F)`` by scoring every edge subset of ``K_n`` at once (``n <= 6``)."""
    pid = PatternId.parse(pid)
    _validate(n, i)
    if n > ORACLE_CAP:
        raise ValueError(f"the naive oracle enumerates 2^C(n,3) graphs and is limited to n <= {ORACLE_CAP}")
    began = time.perf_counter()
    triples = list(combinations(range(n), 3))
    bit = {t: 1 << k for k, t in enumerate(triples)}
    F = pattern(pid).graph
    copies = set()
    for image in permutations(range(n), F.n):
        if 0 in image:
            copies.add(sum(bit[tuple(sorted(image[u] for u in e))] for e in F.edge_list()))

    graphs = np.arange(1 << len(triples), dtype=np.uint32)
    free = np.ones(graphs.shape, dtype=bool)
    for c in copies:
        free &= (graphs & np.uint32(c)) != np.uint32(c)

    sets = combinations(range(n), i)
    min_deg = np.full(graphs.shape, np.iinfo(np.int64).max, dtype=np.int64)
    for S in sets:
        through = sum(b for t, b in bit.items() if set(S) <= set(t))
        np.minimum(min_deg, np.bitwise_count(graphs & np.uint32(through)).astype(np.int64), out=min_deg)

    scored = np.where(free, min_deg, -1)
    value = int(scored.max())
    chosen = int(np.flatnonzero(scored == value)[0])
    witness = ThreeGraph(n, [t for t in triples if chosen & bit[t]])
    return ThresholdResult(pid, n, i, value, witness, "naive-oracle", len(graphs),
                           degenerate=n < F.n, seconds=time.perf_counter() - began)


# ---------------------------------------------------------------- randomized probe

def _move_to_zero(H: ThreeGraph, v: int) -> ThreeGraph:
    if v == 0:
        return H
    swap = np.arange(H.n)
    swap[0], swap[v] = v, 0
    return ThreeGraph(H.n, swap[H.edges] if H.m else ())


def _start_graph(pid: PatternId, n: int) -> ThreeGraph:
    family = family_for(pid)
    if family is not None and n >= MIN_N[family]:
        try:
            c = construct(family, n)
        except ValueError:
            pass
        else:
            if find_rooted_copy(c.graph, pid, c.vertex) is None:
                return _move_to_zero(c.graph, c.vertex)
    return ThreeGraph(n)


def probe_lower_bound(pid: PatternId | str, n: int, i: int, trials: int = 2000,
                      seed: int = 0) -> ThresholdResult:
    """Best ``delta_i`` found by local search that keeps vertex ``0`` uncovered.

    Starts from the pattern's construction when one exists at this ``n``.
    Each step adds a triple through a minimum-degree set; if that creates a
    copy through ``0``, one other edge of that copy is dropped.  The step is
    kept unless it lowers ``delta_i``.  The value is a lower bound only.
    """
    pid = PatternId.parse(pid)
    _validate(n, i)
    began = time.perf_counter()
    if n < pattern(pid).n:
        result = _degenerate(pid, n, i, "probe-lower-bound")
        result.seconds = time.perf_counter() - began
        return result
    rng = random.Random(seed)
    current = _start_graph(pid, n)
    edges = set(current.edge_list())
    score = min_i_degree(current, i)
    best, best_graph = score, current
    for _ in range(trials):
        deg = current.degrees if i == 1 else current.pair_degrees
        if i == 1:
            low = [(v,) for v in range(n) if deg[v] == score]
        else:
            low = [(a, b) for a, b in combinations(range(n), 2) if deg[a, b] == score]
        S = rng.choice(low)
        options = [t for t in combinations(range(n), 3) if set(S) <= set(t) and t not in edges]
        if not options:
            break
        e = rng.choice(options)
        trial = edges | {e}
        G = ThreeGraph(n, sorted(trial))
        copy = find_rooted_copy(G, pid, 0)
        guard = 0
        while copy is not None and guard < 8:
            F = pattern(pid).graph
            used = [tuple(sorted(copy[u] for u in f)) for f in F.edge_list()]
            used = [t for t in used if t != e] or used
            trial.discard(rng.choice(used))
            G = ThreeGraph(n, sorted(trial))
            copy = find_rooted_copy(G, pid, 0)
            guard += 1
        if copy is not None:
            continue
        new_score = min_i_degree(G, i)
        if new_score >= score:
            edges, current, score = trial, G, new_score
            if score > best:
                best, best_graph = score, G
    return ThresholdResult(pid, n, i, best, best_graph, "probe-lower-bound", trials,
                           seconds=time.perf_counter() - began)


def default_threads() -> int:
    raw = os.environ.get("HYPERCOVER_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError("HYPERCOVER_THREADS must be a positive integer") from None
    if value < 1:
        raise ValueError("HYPERCOVER_THREADS must be a positive integer")
    return value
