"""Command line entry point: ``ilsplit {bench,solve,generate}``.

Exit status is 0 when every trial converged, 2 when any did not, 1 on error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .core import AlphaPolicy, SolverConfig
from .errors import IlsError
from .generators import GenSpec, gen_random_ils
from .harness import (
    METHODS,
    ExperimentSpec,
    ResultRow,
    export_csv,
    row_flops,
    run_experiment,
    speedup,
)
from .mmio import read_problem, write_matrix, write_problem
from .ussor import USSOR_PRESETS

log = logging.getLogger("ilsplit")


def _methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    return methods


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _add_solver_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--method", type=_methods, default=["sp"],
                    help=f"comma-separated list from: {', '.join(METHODS)}")
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--tol", type=float, default=1e-6, help="outer tolerance on RR")
    ap.add_argument("--max-outer", type=int, default=20000)
    ap.add_argument("--inner-tol", type=float, default=1e-8)
    ap.add_argument("--max-inner", type=int, default=None, help="default 100*n")
    ap.add_argument("--check-every", type=int, default=None, help="default n")
    ap.add_argument("--alpha", type=AlphaPolicy.parse, default=AlphaPolicy(),
                    help="subset-size policy: uniform or fixed:K")
    ap.add_argument("--omega", type=float)
    ap.add_argument("--omega-hat", type=float)
    ap.add_argument("--preset", choices=sorted(USSOR_PRESETS),
                    help="take --omega/--omega-hat from a stored parameter set")
    ap.add_argument("--seed", type=_seed, default=0)
    ap.add_argument("--workers", type=int, default=1, help="parallel trials")
    ap.add_argument("--out", help="CSV output path")
    ap.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ilsplit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="benchmark methods on a generated family")
    bench.add_argument("--p", type=int, required=True)
    bench.add_argument("--q", type=int, required=True)
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--nu", type=float, default=7.0)
    bench.add_argument("--target-rho", type=float)
    bench.add_argument("--gen-seed", type=_seed, default=0, help="seed of the generated problem")
    bench.add_argument("--regenerate", action="store_true", help="fresh problem per trial")
    _add_solver_args(bench)

    solve = sub.add_parser("solve", help="solve a problem read from Matrix Market files")
    solve.add_argument("--a1", required=True)
    solve.add_argument("--b1", required=True)
    solve.add_argument("--a2")
    solve.add_argument("--b2")
    solve.add_argument("--x-out", help="write the first trial's solution (Matrix Market)")
    _add_solver_args(solve)

    gen = sub.add_parser("generate", help="write a generated problem as Matrix Market files")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--nu", type=float, default=7.0)
    gen.add_argument("--target-rho", type=float)
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--dir", required=True)
    return ap


def _config(args) -> SolverConfig:
    return SolverConfig(
        outer_tol=args.tol,
        max_outer=args.max_outer,
        inner_tol=args.inner_tol,
        max_inner=args.max_inner,
        check_every=args.check_every,
        alpha_policy=args.alpha,
        seed=args.seed,
    )


def _ussor_params(args):
    if args.preset:
        return USSOR_PRESETS[args.preset]
    if args.omega is None or args.omega_hat is None:
        return None
    return (args.omega, args.omega_hat)


def _print_table(rows: list[ResultRow], alpha: AlphaPolicy) -> None:
    head = f"{'method':<14}{'m x n':>14}{'IT':>9}{'IT_inner':>12}{'CPU':>11}{'RR_final':>11}{'conv':>6}{'speedup':>9}{'flops':>12}"
    print(head)
    for r in rows:
        a = alpha.k if alpha.kind == "fixed" else None
        flops = row_flops(r, a)
        print(
            f"{r.method:<14}{f'{r.m}x{r.n}':>14}{r.IT:>9.3f}{r.IT_inner:>12.4g}{r.CPU:>11.4g}"
            f"{r.RR_final:>11.3e}{r.converged_fraction:>6.2f}"
            f"{'' if r.speedup is None else f'{r.speedup:.4f}':>9}"
            f"{'' if flops is None else f'{flops:.4g}':>12}"
        )


def _run(args, gen=None, problem=None) -> int:
    cfg = _config(args)
    params = _ussor_params(args)
    rows = []
    for method in args.method:
        if method == "ussor" and params is None:
            raise IlsError("ussor needs --omega and --omega-hat (or --preset)")
        spec = ExperimentSpec(
            method=method,
            gen=gen,
            problem=problem,
            trials=args.trials,
            cfg=cfg,
            ussor_params=params if method == "ussor" else None,
            regenerate=getattr(args, "regenerate", False),
            workers=args.workers,
        )
        log.info("running %s (%d trials)", method, args.trials)
        rows.append(run_experiment(spec))
    baseline = next((r for r in rows if r.method == "ussor"), None)
    if baseline is not None:
        for r in rows:
            r.speedup = speedup(baseline, r)
    if args.out:
        export_csv(rows, args.out)
    _print_table(rows, args.alpha)
    if getattr(args, "x_out", None):
        write_matrix(args.x_out, rows[0].reports[0].x)
    return 0 if all(r.converged_fraction == 1.0 for r in rows) else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "generate":
            spec = GenSpec(args.p, args.q, args.n, args.nu, args.seed, args.target_rho)
            for path in write_problem(gen_random_ils(spec), args.dir):
                print(path)
            return 0
        if args.command == "bench":
            gen = GenSpec(args.p, args.q, args.n, args.nu, args.gen_seed, args.target_rho)
            return _run(args, gen=gen)
        problem = read_problem(args.a1, args.b1, args.a2, args.b2)
        return _run(args, problem=problem)
    except (IlsError, OSError, ValueError) as exc:
        print(f"ilsplit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
