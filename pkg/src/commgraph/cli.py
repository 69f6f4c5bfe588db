"""Command-line interface: ``commgraph {table,diameter,bfs,verify,export}``.

Exit status is 0 on success, 1 when any verification claim fails and 2 on
usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import CommGraphError
from .graph import ALGOS, DEFAULT_M_CAP, CommutingGraph, DiameterReport, support_label
from .verify import CLAIMS, ClaimResult, run_claim, run_suite

TABLE_COLUMNS = [
    "m",
    "vertices",
    "edges",
    "connected",
    "diameter",
    "radius",
    "witness_u",
    "witness_v",
    "seconds",
]

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return None if math.isinf(f) else f
    return obj


def _fmt_num(x) -> str:
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return "inf"
    return str(int(x)) if float(x).is_integer() else str(x)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc.strerror or exc}") from exc


def _seconds(x: float, args) -> float:
    return 0.0 if args.deterministic_timing else round(x, 6)


def _check_m(m: int, args) -> int:
    if not 4 <= m <= args.max_m:
        raise UsageError(f"m must lie in [4, {args.max_m}] (raise the cap with --max-m), got {m}")
    return m


def _graph(m: int, args) -> CommutingGraph:
    return CommutingGraph(_check_m(m, args), m_cap=args.max_m)


def _report_row(r: DiameterReport, args) -> list:
    return [
        r.m,
        r.n_vertices,
        r.n_edges,
        str(r.connected).lower(),
        _fmt_num(r.diameter),
        _fmt_num(r.radius),
        r.witness[0],
        r.witness[1],
        f"{_seconds(r.elapsed, args):.6f}",
    ]


def _report_dict(r: DiameterReport, args) -> dict:
    d = r.as_dict()
    d["elapsed"] = _seconds(r.elapsed, args)
    return d


def cmd_table(args) -> int:
    lo, hi = args.m_from, args.m_to
    _check_m(lo, args)
    _check_m(hi, args)
    if lo > hi:
        raise UsageError(f"--from ({lo}) must not exceed --to ({hi})")
    reports = [_graph(m, args).diameter(args.algo, args.threads) for m in range(lo, hi + 1)]
    if args.format == "json":
        _emit(_json_text([_report_dict(r, args) for r in reports]), args.output)
    else:
        _emit(_csv_text(TABLE_COLUMNS, [_report_row(r, args) for r in reports]), args.output)
    return EXIT_OK


def cmd_diameter(args) -> int:
    r = _graph(args.m, args).diameter(args.algo, args.threads)
    if args.format == "csv":
        _emit(_csv_text(TABLE_COLUMNS, [_report_row(r, args)]), args.output)
    else:
        _emit(_json_text(_report_dict(r, args)), args.output)
    return EXIT_OK


def cmd_bfs(args) -> int:
    g = _graph(args.m, args)
    if not 1 <= args.source < 1 << g.m:
        raise UsageError(f"--source must lie in [1, {(1 << g.m) - 1}], got {args.source}")
    dm = g.bfs(args.source)
    rows = [[v, support_label(v), _fmt_num(dm[v])] for v in range(1, 1 << g.m)]
    if args.format == "json":
        payload = {
            "m": g.m,
            "source": args.source,
            "eccentricity": dm.eccentricity(),
            "distances": {str(v): dm[v] for v in range(1, 1 << g.m)},
        }
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv_text(["code", "label", "distance"], rows), args.output)
    return EXIT_OK


def _verify_ms(args) -> List[int]:
    if args.m is not None:
        return [_check_m(args.m, args)]
    lo = args.m_from if args.m_from is not None else 4
    hi = args.m_to if args.m_to is not None else lo
    _check_m(lo, args)
    _check_m(hi, args)
    if lo > hi:
        raise UsageError(f"--from ({lo}) must not exceed --to ({hi})")
    return list(range(lo, hi + 1))


def cmd_verify(args) -> int:
    if args.claim == "all" and args.m is None and args.m_from is None:
        results = run_suite(algo=args.algo, threads=args.threads)
    elif args.claim == "all":
        ms = _verify_ms(args)
        results = []
        for claim in CLAIMS:
            results += run_claim(claim, ms, args.algo, args.threads)
    else:
        results = run_claim(args.claim, _verify_ms(args), args.algo, args.threads)
    if not results:
        raise UsageError(f"no m in the requested range applies to claim {args.claim!r}")
    _emit(_verify_text(results, args), args.output)
    return EXIT_FAILED if any(not r.passed for r in results) else EXIT_OK


def _verify_text(results: Sequence[ClaimResult], args) -> str:
    if args.format == "csv":
        rows = [
            [
                r.claim_id,
                "" if r.m is None else r.m,
                str(r.passed).lower(),
                json.dumps(_jsonable(r.details), sort_keys=True, separators=(",", ":")),
                f"{_seconds(r.elapsed, args):.6f}",
            ]
            for r in results
        ]
        return _csv_text(["claim_id", "m", "passed", "message", "elapsed"], rows)
    payload = []
    for r in results:
        d = r.as_dict()
        d["elapsed"] = _seconds(r.elapsed, args)
        payload.append(d)
    return _json_text(payload)


def cmd_export(args) -> int:
    g = _graph(args.m, args)
    if args.format == "dot":
        text = g.to_dot()
    else:
        text = _csv_text(["code_u", "code_v"], list(g.adjacency_rows()))
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write here instead of stdout")
    common.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads for all-sources BFS (default: available CPUs)",
    )
    common.add_argument(
        "--max-m", type=int, default=DEFAULT_M_CAP, help=f"raise the m cap (default {DEFAULT_M_CAP})"
    )
    common.add_argument(
        "--deterministic-timing", action="store_true", help="report every timing as 0"
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="commgraph", description="Exact commuting-graph diameters of the 2-groups H_m."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="diameter table over a range of m")
    p.add_argument("--from", dest="m_from", type=int, required=True)
    p.add_argument("--to", dest="m_to", type=int, required=True)
    p.add_argument("--algo", choices=ALGOS, default="pruned")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("diameter", parents=[common], help="diameter report for one m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--algo", choices=ALGOS, default="pruned")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("bfs", parents=[common], help="distances from one vertex")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--source", type=int, default=1, help="vertex code (default 1, i.e. x1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_bfs)

    p = sub.add_parser("verify", parents=[common], help="run verification claims")
    p.add_argument("--claim", choices=("all", *CLAIMS), default="all")
    p.add_argument("-m", type=int)
    p.add_argument("--from", dest="m_from", type=int)
    p.add_argument("--to", dest="m_to", type=int)
    p.add_argument("--algo", choices=ALGOS, default="pruned")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="DOT (m <= 6) or adjacency CSV (m <= 10)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--format", choices=("dot", "csv"), default="dot")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.threads < 1:
            raise UsageError(f"--threads must be >= 1, got {args.threads}")
        return args.func(args)
    except (UsageError, CommGraphError) as exc:
        print(f"commgraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
