"""JSON Schemas (draft 2020-12) for everything the command line prints with ``--json``."""

from __future__ import annotations

_GRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
}

_VERTEX_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}

CONSTRUCT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["family", "pattern", "n", "edges", "designated_vertex", "min_degree", "out"],
    "properties": {
        "family": {"type": "string"},
        "pattern": {"type": "string"},
        "n": {"type": "integer"},
        "edges": {"type": "integer"},
        "designated_vertex": {"type": "integer"},
        "min_degree": {"type": "integer"},
        "out": {"type": ["string", "null"]},
    },
}

CHECK = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["pattern", "n", "edges", "min_degree"],
    "properties": {
        "pattern": {"type": "string"},
        "n": {"type": "integer"},
        "edges": {"type": "integer"},
        "min_degree": {"type": ["integer", "null"]},
        "vertex": {"type": "integer"},
        "vertex_covered": {"type": "boolean"},
        "witness": {"type": ["array", "null"], "items": {"type": "integer"}},
        "free": {"type": "boolean"},
        "covering": {"type": "boolean"},
        "covered": {"type": "array", "items": {"type": "boolean"}},
        "uncovered": _VERTEX_LIST,
        "witnesses": {"type": "object", "additionalProperties": _VERTEX_LIST},
    },
}

ANALYZE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["op", "n", "edges"],
    "properties": {
        "op": {"enum": ["cng", "lemma22", "matching", "tutte-berge"]},
        "n": {"type": "integer"},
        "edges": {"type": "integer"},
        "graph": _GRAPH,
        "holds": {"type": "boolean"},
        "lhs": {"type": "integer"},
        "rhs": {"type": "integer"},
        "matching_size": {"type": "integer"},
        "matching": {"type": "array", "items": _VERTEX_LIST},
        "s": {"type": "integer"},
        "certificate": {
            "type": ["object", "null"],
            "required": ["B", "components", "s"],
            "properties": {"B": _VERTEX_LIST, "components": {"type": "array", "items": _VERTEX_LIST},
                           "s": {"type": "integer"}},
        },
    },
}

THRESHOLD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["pattern", "n", "i", "value", "method", "nodes_explored", "degenerate",
                 "uncovered_vertex", "seconds", "witness"],
    "properties": {
        "pattern": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "i": {"enum": [1, 2]},
        "value": {"type": "integer", "minimum": 0},
        "method": {"enum": ["exhaustive", "naive-oracle", "probe-lower-bound"]},
        "nodes_explored": {"type": "integer", "minimum": 0},
        "degenerate": {"type": "boolean"},
        "uncovered_vertex": {"type": "integer"},
        "seconds": {"type": "number", "minimum": 0},
        "wall_seconds": {"type": "number", "minimum": 0},
        "witness": _GRAPH,
    },
}

VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["scope", "n_range", "seed", "threads", "passed", "counts", "records"],
    "properties": {
        "scope": {"type": "array", "items": {"type": "string"}},
        "n_range": {"type": ["array", "null"], "items": {"type": "integer"}},
        "seed": {"type": "integer"},
        "threads": {"type": "integer", "minimum": 1},
        "passed": {"type": "boolean"},
        "counts": {"type": "object", "required": ["total", "failed"]},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "statement", "status", "measured", "seconds"],
                "properties": {
                    "claim": {"type": "string"},
                    "statement": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "measured": {"type": "object"},
                    "seconds": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}

ALL = {"construct": CONSTRUCT, "check": CHECK, "analyze": ANALYZE, "threshold": THRESHOLD, "verify": VERIFY}
