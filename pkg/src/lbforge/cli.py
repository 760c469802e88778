"""Command line front end: run adversaries, print bound constants, query
the brute-force oracles, and build the small-k comparison table.

Exit codes: 0 the certificate passed its reference bound, 1 it missed the
bound, 2 the algorithm broke a referee contract mid-game, 3 the request was
invalid (unknown flags, bad parameters, unreadable files).

The environment variable LBFORGE_SEED supplies a default when --seed is
omitted.  Certificates go to --output (summary on stdout) or, without
--output, to stdout with the summary on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .baselines import KNAPSACK_BASELINES, MPAS_BASELINES, make_algorithm
from .bounds import best_cutoff, finite_N_bound, halves_constant, solve_tau_R
from .certificates import build_payload
from .errors import ContractViolation, LbforgeError
from .knapsack import Item, ProfitMode
from .knapsack_adversaries import (
    guaranteed_ratio,
    run_halves,
    run_two_size,
    two_size_bound,
)
from .mpas_adversaries import run_thirds, run_yao
from .numerics import EpsRational, format_fraction
from .oracles import brute_bin_packing, brute_knapsack

EXIT_PASS = 0
EXIT_BOUND_MISSED = 1
EXIT_CONTRACT = 2
EXIT_USAGE = 3


class UsageError(Exception):
    """Invalid request; maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 3
        raise UsageError(message)


def _default_seed(value: Optional[int]) -> Optional[int]:
    if value is not None:
        return value
    env = os.environ.get("LBFORGE_SEED")
    return int(env) if env else None


def parse_instance_file(path: str) -> list[EpsRational]:
    """One size per line: "std_num/std_den" with an optional eps coefficient
    "inf_num/inf_den" after a space.  Blank lines and #-comments skipped."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    sizes: list[EpsRational] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise UsageError(f"{path}:{lineno}: expected 'std [inf]', got {raw!r}")
        try:
            std = Fraction(parts[0])
            inf = Fraction(parts[1]) if len(parts) == 2 else Fraction(0)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
        sizes.append(EpsRational(std, inf))
    return sizes


def _emit(document: str, summary: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(document, encoding="utf-8")
        print(summary)
    else:
        sys.stdout.write(document)
        print(summary, file=sys.stderr)


def _cert_summary(payload: dict) -> str:
    ratio = Fraction(payload["ratio"])
    bound = Fraction(payload["reference_bound"])
    verdict = "PASS" if payload["passed"] else "FAIL"
    params = " ".join(f"{k}={v}" for k, v in payload["params"].items())
    return (
        f"{payload['adversary']} {params} alg={payload['algorithm']['name']}: "
        f"ratio {payload['ratio']} ({float(ratio):.6f}) vs bound "
        f"{payload['reference_bound']} ({float(bound):.6f}) -> {verdict}"
    )


def _finish_certificate(payload: dict, output: Optional[str]) -> int:
    _emit(json.dumps(payload, indent=2) + "\n", _cert_summary(payload), output)
    return EXIT_PASS if payload["passed"] else EXIT_BOUND_MISSED


def _cmd_knapsack_lb(args: argparse.Namespace) -> int:
    if args.alg not in KNAPSACK_BASELINES:
        raise UsageError(f"--alg must be one of {', '.join(KNAPSACK_BASELINES)}")
    seed = _default_seed(args.seed)
    if args.adversary == "thm1":
        if args.trials is not None:
            raise UsageError("--trials only applies to the thm2 adversary")
        cert = run_halves(make_algorithm(args.alg, seed), args.k)
    elif args.trials is not None:
        cert = run_two_size(
            lambda s: make_algorithm(args.alg, s), args.k, trials=args.trials, seed=seed
        )
    else:
        cert = run_two_size(make_algorithm(args.alg, seed), args.k)
    return _finish_certificate(build_payload(cert, args.alg, seed), args.output)


def _cmd_mpas_lb(args: argparse.Namespace) -> int:
    if args.alg not in MPAS_BASELINES:
        raise UsageError(f"--alg must be one of {', '.join(MPAS_BASELINES)}")
    if args.n is None:
        raise UsageError("--N is required")
    seed = _default_seed(args.seed)
    alg = make_algorithm(args.alg, seed)
    if args.adversary == "thm3":
        if args.m is not None or args.t is not None:
            raise UsageError("--M and --t only apply to the thm4 adversary")
        cert = run_thirds(alg, args.n)
    else:
        if args.m is None:
            raise UsageError("thm4 requires --M")
        t = args.t if args.t is not None else best_cutoff(args.n)
        cert = run_yao(alg, args.n, args.m, t)
    return _finish_certificate(build_payload(cert, args.alg, seed), args.output)


def _cmd_bounds(args: argparse.Namespace) -> int:
    solution = solve_tau_R()
    payload = {
        "halves_constant": halves_constant(),
        "tau": solution.tau,
        "R": solution.value,
        "table": {
            str(k): {
                "thm1": format_fraction(guaranteed_ratio(k)),
                "thm2": format_fraction(two_size_bound(k)),
            }
            for k in range(2, args.k_max + 1)
        },
    }
    if args.n is not None:
        t = args.t if args.t is not None else best_cutoff(args.n)
        value = finite_N_bound(args.n, t)
        payload["finite_N_bound"] = {
            "N": args.n,
            "t": t,
            "value": format_fraction(value),
            "float": float(value),
        }
    summary = (
        f"halves constant {payload['halves_constant']:.7f}; "
        f"tau {solution.tau:.6f}; R {solution.value:.7f}"
    )
    _emit(json.dumps(payload, indent=2) + "\n", summary, args.output)
    return EXIT_PASS


def _cmd_oracle(args: argparse.Namespace) -> int:
    sizes = parse_instance_file(args.file)
    if args.problem == "knapsack":
        if args.k is None:
            raise UsageError("the knapsack oracle requires --k")
        mode = ProfitMode.UNIT if args.profit == "unit" else ProfitMode.PROPORTIONAL
        profit, bins = brute_knapsack(
            [Item(i, s) for i, s in enumerate(sizes)], args.k, mode
        )
        payload = {
            "problem": "knapsack",
            "k": args.k,
            "profit_mode": args.profit,
            "profit": profit.to_pair(),
            "bins": [list(b) for b in bins],
        }
        summary = f"knapsack oracle: best profit {profit} in k={args.k} bins"
    else:
        count = brute_bin_packing(sizes)
        payload = {"problem": "packing", "bins": count}
        summary = f"packing oracle: minimum {count} bins"
    _emit(json.dumps(payload, indent=2) + "\n", summary, args.output)
    return EXIT_PASS


def _cmd_table(args: argparse.Namespace) -> int:
    seed = _default_seed(args.seed)
    names = sorted(KNAPSACK_BASELINES)
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["k", "thm1_bound", "thm2_bound"]
    for name in names:
        header += [f"{name}_thm1", f"{name}_thm2"]
    writer.writerow(header)
    for k in range(2, args.k_max + 1):
        row = [k, format_fraction(guaranteed_ratio(k)), format_fraction(two_size_bound(k))]
        for name in names:
            halves = run_halves(make_algorithm(name, seed), k)
            two_size = run_two_size(make_algorithm(name, seed), k)
            row += [format_fraction(halves.ratio_limit), format_fraction(two_size.ratio_limit)]
        writer.writerow(row)
    _emit(buf.getvalue(), f"ratio table for k=2..{args.k_max}", args.output)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lbforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    kn = sub.add_parser("knapsack-lb", help="play a removable-knapsack adversary")
    kn.add_argument("--adversary", choices=("thm1", "thm2"), required=True)
    kn.add_argument("--alg", required=True, help="baseline algorithm name")
    kn.add_argument("--k", type=int, required=True, help="number of unit bins")
    kn.add_argument("--trials", type=int, help="thm2 only: estimate E[X] over this many seeded runs")
    kn.add_argument("--seed", type=int)
    kn.add_argument("--output", help="certificate file (default: stdout)")
    kn.set_defaults(func=_cmd_knapsack_lb)

    mp = sub.add_parser("mpas-lb", help="play a peak-scheduling adversary")
    mp.add_argument("--adversary", choices=("thm3", "thm4"), required=True)
    mp.add_argument("--alg", required=True, help="baseline algorithm name")
    mp.add_argument("--N", dest="n", type=int, help="grid parameter")
    mp.add_argument("--M", dest="m", type=int, help="thm4: prefix multiplier")
    mp.add_argument("--t", dest="t", type=int, help="thm4: cutoff start (default: best for N)")
    mp.add_argument("--seed", type=int)
    mp.add_argument("--output", help="certificate file (default: stdout)")
    mp.set_defaults(func=_cmd_mpas_lb)

    bd = sub.add_parser("bounds", help="print the bound constants and small-k table")
    bd.add_argument("--k-max", dest="k_max", type=int, default=10)
    bd.add_argument("--N", dest="n", type=int, help="also evaluate the finite-N bound")
    bd.add_argument("--t", dest="t", type=int)
    bd.add_argument("--output")
    bd.set_defaults(func=_cmd_bounds)

    orc = sub.add_parser("oracle", help="brute-force optimum for an instance file")
    orc.add_argument("--problem", choices=("knapsack", "packing"), required=True)
    orc.add_argument("--file", required=True, help="one size per line: std [inf]")
    orc.add_argument("--k", type=int, help="knapsack: number of bins")
    orc.add_argument("--profit", choices=("proportional", "unit"), default="proportional")
    orc.add_argument("--output")
    orc.set_defaults(func=_cmd_oracle)

    tb = sub.add_parser("table", help="CSV of exact bounds and measured baseline ratios")
    tb.add_argument("--k-max", dest="k_max", type=int, default=10)
    tb.add_argument("--seed", type=int)
    tb.add_argument("--output")
    tb.set_defaults(func=_cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"lbforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"lbforge: contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (LbforgeError, ValueError, OSError) as exc:
        print(f"lbforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
