"""Command line: DIMACS in, solver conventions out.

Prints "s SATISFIABLE" with a "v" model line (exit 10), "s
UNSATISFIABLE" with a one-sided failure-probability comment (exit 20),
or "s UNKNOWN" when the configuration is unusable (exit 0).  Input or
flag errors exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .formula import Assignment, Formula, ParseError, evaluate, parse_dimacs
from .oracle import brute_sat
from .orchestrator import ConfigError, SolveConfig, solve, solve_resource

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 0
EXIT_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballsat",
        description="K-SAT via covering-code ball search with a simulated "
        "fixed-point quantum subroutine.",
    )
    parser.add_argument("--input", default="-", help="DIMACS CNF path ('-' for stdin)")
    parser.add_argument("--k", type=int, default=0, help="decomposition width")
    parser.add_argument("--epsilon", type=float, default=0.1, help="per-call tolerance")
    cap = parser.add_mutually_exclusive_group()
    cap.add_argument("--c", type=float, default=None, help="qubit fraction (default 0.3)")
    cap.add_argument("--r-max", type=int, default=None, help="explicit quantum radius cap")
    parser.add_argument("--rho", type=float, default=None, help="cover radius fraction (default 1/K)")
    parser.add_argument("--A", type=float, default=1.0, help="resource-curve constant")
    parser.add_argument("--B", type=float, default=1.0, help="resource-curve constant")
    parser.add_argument("--workers", type=int, default=None, help="worker count (default 2^k)")
    parser.add_argument("--retries", type=int, default=3, help="quantum retries per call")
    parser.add_argument("--seed", type=int, default=0, help="master random seed")
    parser.add_argument(
        "--mode", choices=("hybrid", "classical", "brute"), default="hybrid"
    )
    parser.add_argument("--stats", default=None, help="write JSONL quantum-call stats here")
    parser.add_argument("--cover-cache", default=None, help="directory for cover files")
    return parser


def _print_model(model: Assignment) -> None:
    lits = [i + 1 if bit else -(i + 1) for i, bit in enumerate(model)]
    print("v " + " ".join(map(str, lits)) + " 0")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_UNKNOWN if exc.code in (0, None) else EXIT_ERROR
    try:
        text = _read_input(args.input)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        formula = parse_dimacs(text)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.mode == "brute":
        try:
            model = brute_sat(formula)
        except ValueError as exc:
            print(f"c {exc}", file=sys.stderr)
            print("s UNKNOWN")
            return EXIT_UNKNOWN
        if model is not None:
            print("s SATISFIABLE")
            _print_model(model)
            return EXIT_SAT
        print("s UNSATISFIABLE")
        return EXIT_UNSAT

    cfg = SolveConfig(
        k=args.k,
        epsilon=args.epsilon,
        rho=args.rho,
        workers=args.workers,
        retries=args.retries,
        seed=args.seed,
        r_max=args.r_max,
        mode=args.mode,
        cover_cache=args.cover_cache,
    )
    try:
        rm = None
        if args.r_max is None:
            rm = solve_resource(args.A, args.B, args.c if args.c is not None else 0.3)
        result = solve(formula, cfg, rm)
    except ConfigError as exc:
        print(f"c {exc}", file=sys.stderr)
        print("s UNKNOWN")
        return EXIT_UNKNOWN

    if args.stats:
        with open(args.stats, "w") as fh:
            for record in result.stats.records:
                fh.write(json.dumps(record.as_json_dict()) + "\n")

    if result.status == "SAT":
        if not evaluate(formula, result.model):
            print("c model failed final verification", file=sys.stderr)
            print("s UNKNOWN")
            return EXIT_UNKNOWN
        print("s SATISFIABLE")
        _print_model(result.model)
        return EXIT_SAT
    print(f"c one-sided: failure-prob <= {result.stats.failure_bound:.6g}")
    print("s UNSATISFIABLE")
    return EXIT_UNSAT


def main() -> None:
    raise SystemExit(run())
