"""``hypercover`` command line: construct, check, analyze, threshold, verify.

Exit status: 0 success, 1 operational error (files, formats), 2 usage error,
3 when ``verify`` records a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .constructions import FAMILIES, construct
from .core import Graph2, min_i_degree
from .embedding import find_rooted_copy, has_covering, is_free
from .graphs import (check_common_neighbor_lemma, common_neighbor_graph, maximum_matching,
                     tutte_berge_certificate)
from .io import GraphFormatError, read_graph, to_json, write_graph
from .patterns import PatternId
from .threshold import (SearchConfig, default_threads, exact_threshold, naive_threshold_oracle,
                        probe_lower_bound)
from .verify import DEFAULT_SEED, SCOPES, verify

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _pattern(name: str) -> PatternId:
    try:
        return PatternId.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _n_range(text: str) -> tuple[int, int] | None:
    """``"13..60"``, ``"13-60"``, a single ``"13"``, or ``""`` for empty."""
    text = text.strip()
    if not text:
        return None
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n-range {text!r}; use LO..HI") from None
    if lo < 0 or hi < 0:
        raise argparse.ArgumentTypeError("n-range bounds must be non-negative")
    return (lo, hi) if lo <= hi else None


def _table(rows: list[tuple], header: tuple | None = None) -> str:
    rows = [tuple(str(c) for c in r) for r in rows]
    if header:
        rows.insert(0, tuple(header))
    if not rows:
        return ""
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, payload: dict, rows: list[tuple], header: tuple | None = None) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(_table(rows, header))


def _lower(value) -> str:
    return str(value).lower()


# ---------------------------------------------------------------- subcommands

def cmd_construct(args) -> int:
    try:
        c = construct(args.family, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        write_graph(args.out, c.graph)
    pid = FAMILIES[c.family][1]
    payload = {"family": c.family, "pattern": pid.value, "n": c.n, "edges": c.graph.m,
               "designated_vertex": c.vertex,
               "min_degree": min_i_degree(c.graph, 1) if c.n else 0,
               "out": str(args.out) if args.out else None}
    _emit(args, payload, [(k.replace("_", " ") + ":", v) for k, v in payload.items()])
    return EXIT_OK


def cmd_check(args) -> int:
    H = read_graph(args.graph)
    payload = {"pattern": args.pattern.value, "n": H.n, "edges": H.m,
               "min_degree": min_i_degree(H, 1) if H.n else None}
    if args.vertex is not None:
        if not 0 <= args.vertex < H.n:
            raise UsageError(f"vertex {args.vertex} out of range 0..{H.n - 1}")
        emb = find_rooted_copy(H, args.pattern, args.vertex)
        payload.update(vertex=args.vertex, vertex_covered=emb is not None,
                       witness=list(emb) if emb is not None else None)
        rows = [("pattern:", args.pattern.value), ("vertex:", args.vertex),
                ("status:", "covered" if emb is not None else "uncovered")]
        if emb is not None:
            rows.append(("witness:", " ".join(map(str, emb))))
    else:
        report = has_covering(H, args.pattern, witnesses=args.witnesses)
        payload.update(free=is_free(H, args.pattern), covering=report.is_covering,
                       covered=report.covered, uncovered=report.uncovered)
        if args.witnesses:
            payload["witnesses"] = {str(v): list(e) for v, e in sorted(report.witnesses.items())}
        rows = [("pattern:", args.pattern.value), ("free:", _lower(payload["free"])),
                ("covering:", _lower(report.is_covering)),
                ("uncovered:", " ".join(map(str, report.uncovered)) or "-")]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_analyze(args) -> int:
    G = read_graph(args.graph, Graph2)
    payload = {"op": args.op, "n": G.n, "edges": G.m}
    if args.op == "cng":
        E = common_neighbor_graph(G)
        payload["graph"] = to_json(E)
        if args.out:
            write_graph(args.out, E)
        rows = [("common-neighbour edges:", E.m)] + [("", f"{a} {b}") for a, b in E.edge_list()]
    elif args.op == "lemma22":
        lhs, rhs = 2 * common_neighbor_graph(G).m, 2 * G.m - G.n
        payload.update(holds=check_common_neighbor_lemma(G), lhs=lhs, rhs=rhs)
        rows = [("2|E(cng)|:", lhs), ("2|E| - n:", rhs), ("holds:", _lower(payload["holds"]))]
    elif args.op == "matching":
        mate = maximum_matching(G)
        pairs = [[v, w] for v, w in enumerate(mate) if w > v]
        payload.update(matching_size=len(pairs), matching=pairs)
        rows = [("matching size:", len(pairs))] + [("", f"{a} {b}") for a, b in pairs]
    else:
        if args.s is None:
            raise UsageError("tutte-berge needs --s")
        cert = tutte_berge_certificate(G, args.s)
        payload.update(s=args.s, certificate=cert.to_json() if cert else None)
        if cert is None:
            rows = [("s:", args.s), ("certificate:", "none")]
        else:
            rows = [("s:", args.s), ("B:", " ".join(map(str, cert.B)) or "-"),
                    ("components:", " | ".join(" ".join(map(str, c)) for c in cert.components) or "-")]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_threshold(args) -> int:
    began = time.perf_counter()
    threads = args.threads or default_threads()
    try:
        if args.method == "oracle":
            result = naive_threshold_oracle(args.pattern, args.n, args.i)
        elif args.method == "probe":
            result = probe_lower_bound(args.pattern, args.n, args.i, trials=args.trials, seed=args.seed)
        else:
            cfg = SearchConfig(threads=threads, node_budget=args.budget, value_floor=args.floor,
                               symmetry=not args.no_symmetry)
            result = exact_threshold(args.pattern, args.n, args.i, cfg, beyond_cap=args.beyond_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = result.to_json()
    payload["wall_seconds"] = round(time.perf_counter() - began, 6)
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    rows = [("pattern:", payload["pattern"]), ("n:", args.n), ("i:", args.i),
            ("value:", result.value), ("method:", result.method),
            ("nodes explored:", result.nodes_explored), ("degenerate:", _lower(result.degenerate)),
            ("witness edges:", result.witness.m)]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    threads = args.threads or default_threads()
    try:
        report = verify(args.scope, args.n_range, threads=threads, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        rows = [(r.claim, "pass" if r.passed else "FAIL",
                 ", ".join(f"{k}={v}" for k, v in r.measured.items()), f"{r.seconds:.3f}s")
                for r in report.records]
        if rows:
            print(_table(rows, ("claim", "status", "measured", "time")))
        failed = sum(not r.passed for r in report.records)
        print(f"{len(report.records)} checks, {failed} failed (seed {report.seed})")
    return EXIT_OK if report.passed else EXIT_FAILED


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercover",
                                     description="Covering thresholds of 3-graphs by three-edge patterns.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--json", action="store_true", help="print JSON instead of a table")
        p.set_defaults(func=func)
        return p

    p = add("construct", "build a lower-bound construction", cmd_construct)
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", type=Path, help="write the graph (.h3 text or .json)")

    p = add("check", "test a 3-graph for copies of a pattern", cmd_check)
    p.add_argument("--pattern", type=_pattern, required=True)
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--vertex", type=int, help="only ask whether this vertex lies in a copy")
    p.add_argument("--witnesses", action="store_true", help="list one covering copy per vertex")

    p = add("analyze", "2-graph lemmas: common neighbours, matchings, Tutte-Berge", cmd_analyze)
    p.add_argument("--op", required=True, choices=["cng", "lemma22", "matching", "tutte-berge"])
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--s", type=int, help="matching bound for tutte-berge")
    p.add_argument("--out", type=Path, help="write the common-neighbour graph (cng only)")

    p = add("threshold", "compute or bound c_i(n, F)", cmd_threshold)
    p.add_argument("--pattern", type=_pattern, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, choices=[1, 2], required=True)
    p.add_argument("--method", choices=["exhaustive", "oracle", "probe"], default="exhaustive")
    p.add_argument("--threads", type=_positive, help="defaults to $HYPERCOVER_THREADS or 1")
    p.add_argument("--budget", type=_positive, default=SearchConfig.node_budget)
    p.add_argument("--floor", type=int, help="only look for graphs reaching this value first")
    p.add_argument("--no-symmetry", action="store_true", help="disable symmetry pruning")
    p.add_argument("--beyond-cap", action="store_true", help="allow exact search above the completeness cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive, default=2000)
    p.add_argument("--out", type=Path)

    p = add("verify", "recompute the checkable claims", cmd_verify)
    p.add_argument("--scope", default="all", help=f"all or a comma list of {', '.join(SCOPES)}")
    p.add_argument("--n-range", type=_n_range, default=None, help="inclusive LO..HI")
    p.add_argument("--threads", type=_positive)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=Path)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hypercover {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GraphFormatError) as exc:
        print(f"hypercover {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        # e.g. a malformed HYPERCOVER_THREADS
        print(f"hypercover {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
