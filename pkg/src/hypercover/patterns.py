"""The nine connected 3-graphs with exactly three edges.

Labelings are the standard ones shifted to 0-indexed vertices, e.g. the
generalized triangle ``{123, 124, 345}`` becomes ``{012, 013, 234}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .core import ThreeGraph

AUTOMORPHISM_CAP = 10


class PatternId(enum.Enum):
    K4minus = "k4-"
    C6 = "c6"
    F5 = "f5"
    LP3 = "lp3"
    TP3 = "tp3"
    GP3 = "gp3"
    K113 = "k113"
    S3 = "s3"
    GS3 = "gs3"

    @classmethod
    def parse(cls, name: str | PatternId) -> PatternId:
        if isinstance(name, PatternId):
            return name
        key = name.strip().lower()
        for pid in cls:
            if key in (pid.value, pid.name.lower()):
                return pid
        raise ValueError(f"unknown pattern {name!r}; choose from {', '.join(p.value for p in cls)}")


_EDGES = {
    PatternId.K4minus: (4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)]),
    PatternId.C6: (6, [(0, 1, 2), (2, 3, 4), (4, 5, 0)]),
    PatternId.F5: (5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)]),
    PatternId.LP3: (7, [(0, 1, 2), (2, 3, 4), (4, 5, 6)]),
    PatternId.TP3: (5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)]),
    PatternId.GP3: (6, [(0, 1, 2), (1, 2, 3), (3, 4, 5)]),
    PatternId.K113: (5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)]),
    PatternId.S3: (7, [(0, 1, 2), (0, 3, 4), (0, 5, 6)]),
    PatternId.GS3: (6, [(0, 1, 2), (0, 1, 3), (0, 4, 5)]),
}


@dataclass(frozen=True)
class Pattern:
    id: PatternId
    graph: ThreeGraph
    automorphism_count: int

    @property
    def n(self) -> int:
        return self.graph.n


def automorphism_count(F: ThreeGraph) -> int:
    """Number of vertex permutations fixing the edge set, by exhaustive check."""
    if F.n > AUTOMORPHISM_CAP:
        raise ValueError(f"exhaustive automorphism count limited to {AUTOMORPHISM_CAP} vertices")
    edges = {frozenset(e) for e in F.edge_list()}
    count = 0
    for perm in permutations(range(F.n)):
        if all(frozenset(perm[v] for v in e) in edges for e in edges):
            count += 1
    return count


@lru_cache(maxsize=None)
def pattern(pid: PatternId | str) -> Pattern:
    pid = PatternId.parse(pid)
    n, edges = _EDGES[pid]
    graph = ThreeGraph(n, edges)
    return Pattern(pid, graph, automorphism_count(graph))


def all_patterns() -> list[Pattern]:
    return [pattern(pid) for pid in PatternId]
