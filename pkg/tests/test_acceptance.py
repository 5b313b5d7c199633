"""Acceptance gate.

Each test measures one criterion at its stated tolerance and prints a single
``PASS``/``FAIL`` line (capture disabled, so the line shows in a plain run).
"""

import random
import time
from itertools import combinations, permutations

import pytest

from hypercover.constructions import (claimed_c1, construct, construct_f5_lower, construct_turan_3partite,
                                      exceeds_f5_lower, f5_upper_bound, family_for)
from hypercover.core import Graph2, ThreeGraph, min_i_degree
from hypercover.embedding import find_rooted_copy, has_covering, is_free, iter_embeddings
from hypercover.graphs import brute_force_matching_size, check_common_neighbor_lemma, tutte_berge_certificate
from hypercover.patterns import PatternId, all_patterns
from hypercover.threshold import SearchConfig, default_threads, exact_threshold, naive_threshold_oracle

pytestmark = pytest.mark.slow

SEED = 20240601


@pytest.fixture
def gate(capsys):
    def report(k: int, ok: bool, detail: str, began: float):
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail} ({time.perf_counter() - began:.1f}s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return report


def test_criterion_1_lower_bound_tightness(gate):
    began = time.perf_counter()
    ranges = {PatternId.LP3: (13, 200), PatternId.TP3: (6, 200), PatternId.GP3: (14, 200),
              PatternId.K113: (9, 200), PatternId.S3: (11, 200), PatternId.GS3: (13, 200)}
    checked, bad = 0, []
    for pid, (lo, hi) in ranges.items():
        for n in range(lo, hi + 1):
            c = construct(family_for(pid), n)
            d = min_i_degree(c.graph, 1)
            claimed = claimed_c1(pid, n).value
            uncovered = find_rooted_copy(c.graph, pid, c.vertex) is None
            checked += 1
            if d != claimed or not uncovered:
                bad.append(f"{pid.value} n={n} delta1={d} claimed={claimed} uncovered={uncovered}")
    gate(1, not bad, f"{checked} constructions, {len(bad)} mismatches {bad[:5]}", began)


def test_criterion_2_f5_construction(gate):
    began = time.perf_counter()
    bad = []
    for n in range(5, 301):
        c = construct_f5_lower(n)
        d = min_i_degree(c.graph, 1)
        if not exceeds_f5_lower(n, d) or find_rooted_copy(c.graph, PatternId.F5, c.vertex) is not None:
            bad.append(n)
    gate(2, not bad, f"n in [5, 300], failing n: {bad}", began)


def _dense_random_graph(rng: random.Random, n: int) -> ThreeGraph:
    """Random sparse start, then triples through a minimum-degree vertex until the bound holds."""
    target = f5_upper_bound(n)
    edges = {t for t in combinations(range(n), 3) if rng.random() < 0.2}
    deg = [0] * n
    for t in edges:
        for v in t:
            deg[v] += 1
    while min(deg) < target:
        low = min(deg)
        v = rng.choice([u for u in range(n) if deg[u] == low])
        a, b = rng.sample([u for u in range(n) if u != v], 2)
        t = tuple(sorted((v, a, b)))
        if t not in edges:
            edges.add(t)
            for u in t:
                deg[u] += 1
    return ThreeGraph(n, sorted(edges))


def test_criterion_3_f5_covering_above_upper_bound(gate):
    began = time.perf_counter()
    rng = random.Random(SEED)
    counterexamples = []
    for k in range(500):
        n = rng.randint(10, 16)
        H = _dense_random_graph(rng, n)
        assert min_i_degree(H, 1) >= f5_upper_bound(n)
        report = has_covering(H, PatternId.F5)
        if not report.is_covering:
            counterexamples.append((k, n, report.uncovered))
    gate(3, not counterexamples, f"500 graphs, {len(counterexamples)} counterexamples", began)


def test_criterion_4_common_neighbour_inequality(gate):
    began = time.perf_counter()
    rng = random.Random(SEED)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 30)
        p = rng.random()
        G = Graph2(n, [e for e in combinations(range(n), 2) if rng.random() < p])
        failures += not check_common_neighbor_lemma(G)
    elapsed = time.perf_counter() - began
    gate(4, failures == 0 and elapsed < 30, f"1000 graphs, {failures} failures", began)


def _all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph2(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


def test_criterion_5_certificate_iff_matching_bound(gate):
    began = time.perf_counter()
    rng = random.Random(SEED)
    corpus = []
    for _ in range(2000):
        n = rng.randint(0, 8)
        p = rng.random()
        corpus.append(Graph2(n, [e for e in combinations(range(n), 2) if rng.random() < p]))
    for n in range(6):
        corpus.extend(_all_graphs(n))
    disagreements = []
    for G in corpus:
        nu = brute_force_matching_size(G)
        for s in range(4):
            cert = tutte_berge_certificate(G, s)
            if cert is not None and not cert.is_valid(G):
                disagreements.append((G.n, G.edge_list(), s, "invalid"))
            elif (cert is not None) != (nu <= s):
                disagreements.append((G.n, G.edge_list(), s, nu))
    above_n = sum(1 for d in disagreements if d[2] > d[0])
    gate(5, not disagreements,
         f"{len(corpus)} graphs x s in 0..3, {len(disagreements)} disagreements "
         f"({above_n} with s > n) first: {disagreements[:3]}", began)


def test_criterion_6_exact_search_matches_oracle(gate):
    began = time.perf_counter()
    cfg = SearchConfig(threads=default_threads())
    bad = []
    for pid in PatternId:
        for n in (4, 5, 6):
            for i in (1, 2):
                exact = exact_threshold(pid, n, i, cfg).value
                naive = naive_threshold_oracle(pid, n, i).value
                if exact != naive:
                    bad.append((pid.value, n, i, exact, naive))
    tp3 = exact_threshold(PatternId.TP3, 6, 1, cfg).value
    elapsed = time.perf_counter() - began
    gate(6, not bad and tp3 == 4 and elapsed < 600,
         f"54 cases, {len(bad)} mismatches {bad}, tp3(6,1)={tp3}", began)


def test_criterion_7_turan_construction(gate):
    began = time.perf_counter()
    bad = []
    for n in range(3, 301):
        T = construct_turan_3partite(n).graph
        if T.m != (n // 3) * ((n + 1) // 3) * ((n + 2) // 3):
            bad.append((n, "edges"))
        if n <= 40 and not is_free(T, PatternId.F5):
            bad.append((n, "f5 copy"))
    gate(7, not bad, f"n in [3, 300], freeness to 40, failures {bad}", began)


def test_criterion_8_c6_small_codegree_value(gate):
    began = time.perf_counter()
    value = naive_threshold_oracle(PatternId.C6, 6, 2).value
    gate(8, value == 1, f"c2(6, C6) = {value}", began)


def _naive_embeddings(H: ThreeGraph, F: ThreeGraph) -> set[tuple[int, ...]]:
    host = {frozenset(e) for e in H.edge_list()}
    return {inj for inj in permutations(range(H.n), F.n)
            if all(frozenset(inj[u] for u in e) in host for e in F.edge_list())}


def test_criterion_9_engine_self_consistency(gate):
    began = time.perf_counter()
    rng = random.Random(SEED)
    patterns = all_patterns()
    mismatches = 0
    for _ in range(500):
        n = rng.randint(3, 7)
        p = rng.choice([0.3, 0.5, 0.7, 0.9, 1.0])
        H = ThreeGraph(n, [t for t in combinations(range(n), 3) if rng.random() < p])
        pat = rng.choice(patterns)
        naive = _naive_embeddings(H, pat.graph) if pat.graph.n <= n else set()
        engine = set(iter_embeddings(H, pat.id))
        covered = {v for emb in naive for v in emb}
        report = has_covering(H, pat.id)
        mismatches += engine != naive or set(range(n)) - set(report.uncovered) != covered

    violations, additions = 0, 0
    while additions < 1000:
        n = rng.randint(5, 9)
        pid = rng.choice(list(PatternId))
        absent = list(combinations(range(n), 3))
        rng.shuffle(absent)
        edges: list[tuple[int, int, int]] = []
        before = set(range(n)) - set(has_covering(ThreeGraph(n), pid).uncovered)
        for t in absent[: rng.randint(5, len(absent))]:
            edges.append(t)
            after = set(range(n)) - set(has_covering(ThreeGraph(n, edges), pid).uncovered)
            violations += not before <= after
            before = after
            additions += 1
            if additions == 1000:
                break
    gate(9, mismatches == 0 and violations == 0,
         f"500 pairs, {mismatches} mismatches; {additions} additions, {violations} monotonicity violations",
         began)
