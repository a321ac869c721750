"""Command line front end: run scenarios, list them, verify invariants.

Exit codes: 0 all good, 1 an expectation or property failed, 2 bad input
(unknown scenario, malformed file, measurement that cannot fire), 3 numerical
trouble (a matrix that should be a state is not).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .errors import (
    NotPSDError,
    ScenarioError,
    SimulationError,
    ZeroProbabilityError,
)
from .scenarios import builtin_names, get_builtin, run_file, run_spec
from .verification import run_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idqsim",
        description="entanglement scenarios for identical qubits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list builtin scenarios")
    p_list.set_defaults(func=_cmd_list)

    p_run = sub.add_parser("run", help="run a builtin or file scenario")
    p_run.add_argument("name", nargs="?", help="builtin scenario name")
    p_run.add_argument("--file", metavar="PATH", help="scenario JSON file")
    p_run.add_argument(
        "--format",
        choices=("table", "machine"),
        default="table",
        help="human table or deterministic JSON (default: table)",
    )
    p_run.add_argument(
        "--tolerance",
        type=float,
        metavar="T",
        help="tighten every expectation tolerance to at most T",
    )
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="run the seeded property checks")
    p_verify.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def _cmd_list(args) -> int:
    for name in builtin_names():
        print(f"{name:<28} {get_builtin(name).title}")
    return EXIT_OK


def _cmd_run(args) -> int:
    if (args.name is None) == (args.file is None):
        print("error: give exactly one of a scenario name or --file", file=sys.stderr)
        return EXIT_INPUT
    if args.tolerance is not None and args.tolerance <= 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.file is not None:
        report = run_file(args.file, args.tolerance)
    else:
        report = run_spec(get_builtin(args.name), args.tolerance)
    if args.format == "machine":
        print(report.to_json())
    else:
        print(report.to_table())
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_verify(args) -> int:
    results = run_all(args.seed)
    for r in results:
        mark = "pass" if r.passed else "FAIL"
        print(f"[{mark}] {r.name}: {r.detail}")
    good = sum(r.passed for r in results)
    print(f"verified {good}/{len(results)} properties (seed {args.seed})")
    return EXIT_OK if good == len(results) else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZeroProbabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPSDError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, ValueError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
