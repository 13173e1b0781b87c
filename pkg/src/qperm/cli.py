"""Command-line front end.

Exit codes: 0 every asserted check passed, 1 some asserted check failed,
2 malformed input or a violated precondition.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from qperm.errors import DimensionError, StructuralError
from qperm.ncalg import ParseError, collapse_sums, normal_form, parse_expression
from qperm.scenario import RunReport, demo_scenario, load_scenario, run_scenario

_SHOW = {
    "magic": ("max_projection_violation", "max_row_sum_violation", "commutator_norm"),
    "symbolic": ("proved", "identities", "rewrite_soundness_violation"),
    "coassoc": ("symbolic", "delta_rep_valid", "coaction_max_violation"),
    "invariance": ("functions_tested", "max_violation"),
    "technical": ("functions_tested", "max_violation", "symbolic_agreement"),
    "faithful": ("recovered", "generators", "max_error"),
    "ergodic": ("dimension", "quotient_dim", "verdict"),
    "connected": ("components", "classes"),
    "density": ("rank", "target", "algebra_dim"),
    "homomorphism": ("multiplicative_violation", "adjoint_violation"),
}


def _env_seed() -> Optional[int]:
    raw = os.environ.get("QPG_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise StructuralError(f"QPG_SEED must be an integer, got {raw!r}") from None


def format_run(run: RunReport) -> str:
    lines = []
    for rep in run.reports:
        keys = _SHOW.get(rep.check, ())
        shown = "  ".join(f"{k}={rep.metrics[k]}" for k in keys if k in rep.metrics)
        lines.append(f"[{rep.status:>4}] {rep.check:<13} {shown}")
    lines.append(f"overall: {'PASS' if run.overall else 'FAIL'}")
    return "\n".join(lines)


def _emit(run: RunReport, json_path: Optional[str]) -> int:
    print(format_run(run))
    if json_path:
        Path(json_path).write_text(run.dumps() + "\n")
    return run.exit_code


def cmd_verify(args) -> int:
    sc = load_scenario(args.config)
    return _emit(run_scenario(sc, _env_seed()), args.json)


def cmd_demo(args) -> int:
    seed = _env_seed()
    sc, warning = demo_scenario(args.name, args.n, args.m, args.theta,
                                seed=0 if seed is None else seed, trials=args.trials)
    if warning:
        print(f"warning: {warning}", file=sys.stderr)
    return _emit(run_scenario(sc), args.json)


def cmd_reduce(args) -> int:
    try:
        p = parse_expression(args.expr, args.n)
    except ParseError as exc:
        print(exc.caret(), file=sys.stderr)
        return 2
    print(collapse_sums(p)[0] if args.collapse else normal_form(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qperm",
        description="Verify quantum permutation group actions on glued spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the checks listed in a scenario file")
    p.add_argument("-c", "--config", required=True, help="scenario JSON file")
    p.add_argument("--json", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", help="run a canned example")
    p.add_argument("name", choices=["wedge", "bouquet"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=None,
                   help="base sample points (default 5 for wedge, 6 for bouquet)")
    p.add_argument("--theta", type=float, default=math.pi / 4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--json", help="also write the JSON report here")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("reduce", help="print the normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--collapse", action="store_true",
                   help="also collapse full row and column sums to 1")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (StructuralError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
