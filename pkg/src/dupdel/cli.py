"""Command-line entry point.

Exit codes: 0 pass, 1 comparison fail, 2 usage error, 3 solver/runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import experiments as ex
from .quadrature import QuadratureError
from .runner import run_coupled
from .theory import METHODS, ConvergenceError

log = logging.getLogger("dupdel")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _checkpoints(text: str):
    return "pow2" if text == "pow2" else _int_list(text)


def _methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"methods must be drawn from {','.join(METHODS)}")
    return methods


def _add_run_args(p: argparse.ArgumentParser, default_version: int | None) -> None:
    if default_version is None:
        p.add_argument("--version", type=int, choices=(1, 2), required=True)
    p.add_argument("--steps", type=int, default=None,
                   help="number of steps (default 1e6 for version 2, 1e5 for version 1)")
    p.add_argument("--seeds", type=_int_list, default=None, help="comma-separated seed list")
    p.add_argument("--num-seeds", type=int, default=1)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--checkpoints", type=_checkpoints, default="pow2",
                   help="'pow2' or a comma-separated list of step counts")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None, help="output path (stdout if omitted)")
    p.add_argument("--parallelism", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dupdel", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo runs compared with theory")
    _add_run_args(sim, None)
    sim.add_argument("--dmax", type=int, default=5)
    sim.add_argument("--tol", type=float, default=0.01)
    sim.add_argument("--clustering-tol", type=float, default=0.02)
    sim.add_argument("--global-tol", type=float, default=0.1)
    sim.add_argument("--couple", action="store_true",
                     help="version 1 only: run the coloured coupling alongside")

    th = sub.add_parser("theory", help="tabulate c_d")
    th.add_argument("--dmax", type=int, default=10)
    th.add_argument("--tol", type=float, default=1e-10)
    th.add_argument("--methods", type=_methods, default=["quadrature"])
    th.add_argument("--format", choices=("csv", "json"), default="json")
    th.add_argument("--out", default=None)

    cmp_ = sub.add_parser("compare", help="compare a simulation report with a theory table")
    cmp_.add_argument("report", help="JSON report written by 'simulate'")
    cmp_.add_argument("theory", help="theory table written by 'theory' (JSON or CSV)")
    cmp_.add_argument("--tol", type=float, default=0.01)
    cmp_.add_argument("--clustering-tol", type=float, default=0.02)
    cmp_.add_argument("--global-tol", type=float, default=0.1)
    cmp_.add_argument("--format", choices=("csv", "json"), default="json")
    cmp_.add_argument("--out", default=None)

    cc = sub.add_parser("couple-check", help="coupled runs: black subgraph vs version 2")
    _add_run_args(cc, 1)
    cc.add_argument("--every-step", action="store_true",
                    help="check colour invariants and equivalence after every step")
    return parser


def _seeds(args, parser) -> list[int]:
    if args.seeds is not None:
        return args.seeds
    if args.num_seeds < 1:
        parser.error("--num-seeds must be positive")
    return list(range(args.base_seed, args.base_seed + args.num_seeds))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def cmd_simulate(args, parser) -> int:
    steps = args.steps if args.steps is not None else (10**6 if args.version == 2 else 10**5)
    config = ex.RunConfig(
        version=args.version, steps=steps, seeds=_seeds(args, parser),
        checkpoints=args.checkpoints, d_max=args.dmax, tol=args.tol,
        clustering_tol=args.clustering_tol, global_tol=args.global_tol,
        couple=args.couple, format=args.format, out=args.out,
        parallelism=args.parallelism)
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    report = ex.simulate(config)
    text = ex.dumps(report) if args.format == "json" else ex.comparison_csv(report)
    _emit(text, args.out)
    log.info("simulate verdict: %s", report["verdict"])
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


def cmd_theory(args, parser) -> int:
    if args.dmax < 0 or args.tol <= 0:
        parser.error("--dmax must be >= 0 and --tol > 0")
    try:
        table = ex.theory_table(args.dmax, args.tol, args.methods)
    except ConvergenceError as exc:
        print(f"solver did not converge: enclosure width {exc.width:.3e}", file=sys.stderr)
        return EXIT_RUNTIME
    except QuadratureError as exc:
        print(f"quadrature failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    text = ex.dumps(table) if args.format == "json" else ex.theory_csv(table)
    _emit(text, args.out)
    return EXIT_PASS


def _read_theory(path: str) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return json.loads(text)
    return ex.read_theory_csv(text)


def cmd_compare(args, parser) -> int:
    try:
        report = ex.loads(Path(args.report).read_text(encoding="utf-8"))
        theory = _read_theory(args.theory)
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        result = ex.compare(report, theory, args.tol, args.clustering_tol, args.global_tol)
    except (ValueError, KeyError) as exc:
        print(f"incompatible inputs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = ex.dumps(result.as_dict())
    else:
        text = ex.table_csv(result.rows, ex.COMPARISON_COLUMNS)
    _emit(text, args.out)
    print(f"verdict: {result.verdict}", file=sys.stderr)
    return EXIT_PASS if result.verdict == "pass" else EXIT_FAIL


def cmd_couple_check(args, parser) -> int:
    steps = args.steps if args.steps is not None else 10**5
    if steps < 1:
        parser.error("--steps must be at least 1")
    seeds = _seeds(args, parser)
    blocks = []
    for seed in seeds:
        res = run_coupled(steps, seed, args.checkpoints, check=args.every_step)
        blocks.append({
            "seed": seed,
            "black_equivalent": res.all_equivalent,
            "growth": [
                {"n": g.steps, "S_n": g.edges, "S_n_over_n": ex.fmt(g.edges_per_step),
                 "Z_n": g.red_vertices, "Z_n_over_log_n": ex.fmt(
                     g.red_vertices / math.log(g.steps) if g.steps > 1 else math.nan),
                 "R_n": g.red_edges, "M_n": g.max_degree}
                for g in res.diagnostics
            ],
        })
        log.info("seed %d: equivalent=%s", seed, res.all_equivalent)
    ok = all(b["black_equivalent"] for b in blocks)
    out = {"steps": steps, "seeds": blocks, "verdict": "pass" if ok else "fail"}
    if args.format == "json":
        text = ex.dumps(out)
    else:
        rows = [{"seed": b["seed"], **g, "black_equivalent": b["black_equivalent"]}
                for b in blocks for g in b["growth"]]
        cols = ["seed", "n", "S_n", "S_n_over_n", "Z_n", "Z_n_over_log_n", "R_n", "M_n",
                "black_equivalent"]
        text = ex.table_csv(rows, cols)
    _emit(text, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {
    "simulate": cmd_simulate,
    "theory": cmd_theory,
    "compare": cmd_compare,
    "couple-check": cmd_couple_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args, parser)
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
