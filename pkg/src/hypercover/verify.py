"""Recompute every checkable claim and collect pass/fail records.

Scopes name either a pattern (its lower-bound construction is checked for the
claimed minimum degree and an uncovered vertex) or one of the extra checks:
``turan`` (edge count, plus freeness for ``n <= 40``), ``lemma22`` (the
common-neighbour inequality on a seeded random corpus, ``n <= 30``) and
``oracle`` (exact search against brute force, ``n <= 6``).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .constructions import (MIN_N, claimed_c1, construct, construct_f5_lower,
                            construct_turan_3partite, exceeds_f5_lower, family_for, turan_part_sizes)
from .core import Graph2, min_i_degree
from .embedding import find_rooted_copy, is_free
from .graphs import check_common_neighbor_lemma
from .patterns import PatternId
from .threshold import SearchConfig, exact_threshold, naive_threshold_oracle

TIGHT_PATTERNS = (PatternId.LP3, PatternId.TP3, PatternId.GP3, PatternId.K113, PatternId.S3, PatternId.GS3)
EXTRA_SCOPES = ("f5", "turan", "lemma22", "oracle")
SCOPES = tuple(p.value for p in TIGHT_PATTERNS) + EXTRA_SCOPES
TURAN_FREENESS_LIMIT = 40
LEMMA_LIMIT = 30
LEMMA_GRAPHS_PER_N = 20
DEFAULT_SEED = 20240601

STATEMENTS = {
    "lp3": "trivial intersecting family: delta_1 = n - 2, apex LP3-uncovered",
    "tp3": "blow-up construction: delta_1 = n - 1 (n = 1 mod 3) or n - 2, vertex TP3-uncovered",
    "gp3": "trivial intersecting family: delta_1 = n - 2, apex GP3-uncovered",
    "k113": "hub construction: delta_1 = n - 1, hub K113-uncovered",
    "s3": "S3 construction: delta_1 = n - 1, designated vertex S3-uncovered",
    "gs3": "GS3 construction: delta_1 = floor((n - 1) / 2), vertex 0 GS3-uncovered",
    "f5": "F5 construction: delta_1 > n^2/8 - sqrt(2) n and u F5-uncovered",
    "turan": "balanced complete 3-partite graph: floor(n/3) floor((n+1)/3) floor((n+2)/3) edges, F5-free",
    "lemma22": "common-neighbour graph: 2|E(E(G))| >= 2|E(G)| - n",
    "oracle": "exact threshold search equals brute-force enumeration",
}


@dataclass
class CheckRecord:
    claim: str
    statement: str
    passed: bool
    measured: dict
    seconds: float

    def to_json(self) -> dict:
        return {"claim": self.claim, "statement": self.statement,
                "status": "pass" if self.passed else "fail",
                "measured": self.measured, "seconds": round(self.seconds, 6)}


@dataclass
class VerifyReport:
    scope: list[str]
    n_range: tuple[int, int] | None
    seed: int
    threads: int
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "n_range": list(self.n_range) if self.n_range else None,
            "seed": self.seed,
            "threads": self.threads,
            "passed": self.passed,
            "counts": {"total": len(self.records),
                       "failed": sum(not r.passed for r in self.records)},
            "records": [r.to_json() for r in self.records],
        }


def parse_scope(scope: str | list[str]) -> list[str]:
    items = scope.split(",") if isinstance(scope, str) else list(scope)
    items = [s.strip().lower() for s in items if s.strip()]
    if not items:
        raise ValueError("empty scope")
    if "all" in items:
        return list(SCOPES)
    out = []
    for s in items:
        if s not in SCOPES:
            try:
                s = PatternId.parse(s).value
            except ValueError:
                raise ValueError(f"unknown scope {s!r}; choose from all, {', '.join(SCOPES)}") from None
            if s not in SCOPES:
                raise ValueError(f"no checkable claim for pattern {s!r}")
        if s not in out:
            out.append(s)
    return out


def _timed(claim: str, key: str, fn) -> CheckRecord:
    began = time.perf_counter()
    passed, measured = fn()
    return CheckRecord(claim, STATEMENTS[key], passed, measured, time.perf_counter() - began)


def _tightness(pid: PatternId, n: int) -> CheckRecord:
    def run():
        c = construct(family_for(pid), n)
        claimed = claimed_c1(pid, n)
        d = min_i_degree(c.graph, 1)
        uncovered = find_rooted_copy(c.graph, pid, c.vertex) is None
        return (d == claimed.value and uncovered,
                {"delta1": d, "claimed": claimed.value, "vertex": c.vertex, "vertex_uncovered": uncovered})
    return _timed(f"{pid.value}/n={n}", pid.value, run)


def _f5(n: int) -> CheckRecord:
    def run():
        c = construct_f5_lower(n)
        d = min_i_degree(c.graph, 1)
        uncovered = find_rooted_copy(c.graph, PatternId.F5, c.vertex) is None
        exceeds = exceeds_f5_lower(n, d)
        return (exceeds and uncovered,
                {"delta1": d, "8*delta1": 8 * d, "n^2-8*sqrt(2)*n": n * n - 8 * math.sqrt(2) * n,
                 "exceeds": exceeds, "vertex": c.vertex, "vertex_uncovered": uncovered})
    return _timed(f"f5/n={n}", "f5", run)


def _turan(n: int) -> CheckRecord:
    def run():
        T = construct_turan_3partite(n).graph
        a, b, c = n // 3, (n + 1) // 3, (n + 2) // 3
        expected = a * b * c
        measured = {"edges": T.m, "expected": expected, "parts": list(turan_part_sizes(n))}
        ok = T.m == expected
        if n <= TURAN_FREENESS_LIMIT:
            free = is_free(T, PatternId.F5)
            measured["f5_free"] = free
            ok = ok and free
        return ok, measured
    return _timed(f"turan/n={n}", "turan", run)


def _lemma(n: int, seed: int) -> CheckRecord:
    def run():
        rng = random.Random(f"{seed}/{n}")
        pairs = [(a, b) for b in range(n) for a in range(b)]
        failures = 0
        for _ in range(LEMMA_GRAPHS_PER_N):
            p = rng.random()
            G = Graph2(n, [e for e in pairs if rng.random() < p], _canonical=True)
            failures += not check_common_neighbor_lemma(G)
        return failures == 0, {"graphs": LEMMA_GRAPHS_PER_N, "failures": failures}
    return _timed(f"lemma22/n={n}", "lemma22", run)


def _oracle(pid: PatternId, n: int, i: int, threads: int) -> CheckRecord:
    def run():
        exact = exact_threshold(pid, n, i, SearchConfig(threads=threads))
        naive = naive_threshold_oracle(pid, n, i)
        return exact.value == naive.value, {"exact": exact.value, "naive": naive.value,
                                            "nodes": exact.nodes_explored}
    return _timed(f"oracle/{pid.value}/n={n}/i={i}", "oracle", run)


def verify(scope: str | list[str] = "all", n_range: tuple[int, int] | None = None,
           threads: int = 1, seed: int = DEFAULT_SEED) -> VerifyReport:
    """Run the checks in ``scope`` for every ``n`` in the inclusive ``n_range``.

    Each family only contributes sizes where its claim applies.  An empty or
    missing range gives an empty report.
    """
    scopes = parse_scope(scope)
    if threads < 1:
        raise ValueError("thread count must be positive")
    report = VerifyReport(scopes, n_range, seed, threads)
    if n_range is None:
        return report
    lo, hi = n_range
    if lo < 0 or hi < 0:
        raise ValueError("n-range bounds must be non-negative")
    for s in scopes:
        for n in range(lo, hi + 1):
            if s in (p.value for p in TIGHT_PATTERNS):
                pid = PatternId.parse(s)
                if claimed_c1(pid, n).kind == "exact" and n >= MIN_N[family_for(pid)]:
                    report.records.append(_tightness(pid, n))
            elif s == "f5" and n >= 5:
                report.records.append(_f5(n))
            elif s == "turan" and n >= 3:
                report.records.append(_turan(n))
            elif s == "lemma22" and 1 <= n <= LEMMA_LIMIT:
                report.records.append(_lemma(n, seed))
            elif s == "oracle" and 4 <= n <= 6:
                for pid in PatternId:
                    for i in (1, 2):
                        report.records.append(_oracle(pid, n, i, threads))
    return report
