"""Benchmark driver: repeated trials, averaged results, speed-ups, flop counts, CSV."""

from __future__ import annotations

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .core import IlsProblem, SolveReport, SolverConfig, relative_residual
from .errors import MeasurementError, ParameterError
from .generators import GenSpec, gen_random_ils
from .reference import solve_normal_direct, solve_qr_cholesky
from .rk_rgs import sp_rk_rgs_solve
from .sampling import RngState
from .scd import sp_scd_solve
from .sp import sp_solve
from .ussor import ussor_solve

log = logging.getLogger(__name__)

METHODS = ("sp", "sp-rk-rgs", "sp-scd", "ussor", "normal-direct", "qr-cholesky")
RANDOMIZED = frozenset({"sp-rk-rgs", "sp-scd"})


def _direct_report(prob: IlsProblem, solver, cfg: SolverConfig) -> SolveReport:
    start = time.perf_counter()
    x = solver(prob)
    wall = time.perf_counter() - start
    rr = relative_residual(prob, x)
    return SolveReport(x, 0, 0, [rr], wall, rr < cfg.outer_tol)


def run_solver(
    method: str,
    prob: IlsProblem,
    cfg: SolverConfig,
    rng: RngState | None = None,
    ussor_params: tuple[float, float] | None = None,
) -> SolveReport:
    """Dispatch one solve by method name."""
    if method == "sp":
        return sp_solve(prob, cfg)
    if method == "sp-rk-rgs":
        return sp_rk_rgs_solve(prob, cfg, rng)
    if method == "sp-scd":
        return sp_scd_solve(prob, cfg, rng)
    if method == "ussor":
        if ussor_params is None:
            raise ParameterError("ussor needs (omega, omega_hat)")
        return ussor_solve(prob, *ussor_params, cfg)
    if method == "normal-direct":
        return _direct_report(prob, solve_normal_direct, cfg)
    if method == "qr-cholesky":
        return _direct_report(prob, solve_qr_cholesky, cfg)
    raise ParameterError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass
class ExperimentSpec:
    """One benchmark cell.

    Exactly one of ``gen`` and ``problem`` must be given.  By default every
    trial solves the same instance with its own solver random stream;
    ``regenerate=True`` draws a fresh instance per trial instead.
    """

    method: str
    gen: GenSpec | None = None
    problem: IlsProblem | None = None
    trials: int = 10
    cfg: SolverConfig = field(default_factory=SolverConfig)
    ussor_params: tuple[float, float] | None = None
    regenerate: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown method {self.method!r}")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if (self.gen is None) == (self.problem is None):
            raise ParameterError("give exactly one of gen and problem")
        if (self.method == "ussor") != (self.ussor_params is not None):
            raise ParameterError("ussor_params is required for ussor and only for ussor")
        if self.regenerate and self.gen is None:
            raise ParameterError("regenerate needs a generator spec")


@dataclass
class ResultRow:
    method: str
    m: int
    n: int
    p: int
    q: int
    IT: float
    IT_inner: float
    CPU: float
    CPU_inner: float
    RR_final: float
    converged_fraction: float
    speedup: float | None = None
    reports: list[SolveReport] = field(default_factory=list, repr=False, compare=False)


CSV_COLUMNS = [f.name for f in fields(ResultRow) if f.name != "reports"]


def _trial_problems(spec: ExperimentSpec) -> list[IlsProblem]:
    if spec.problem is not None:
        return [spec.problem] * spec.trials
    if not spec.regenerate:
        return [gen_random_ils(spec.gen)] * spec.trials
    streams = RngState(spec.gen.seed).spawn(spec.trials)
    return [gen_random_ils(spec.gen, s) for s in streams]


def run_experiment(spec: ExperimentSpec) -> ResultRow:
    """Run ``spec.trials`` solves and average them.

    Trial ``i`` always gets the ``i``-th child stream of ``RngState(cfg.seed)``
    and results are reduced in trial order, so ``workers`` never changes the
    reported iteration counts or residuals.
    """
    problems = _trial_problems(spec)
    streams = RngState(spec.cfg.seed).spawn(spec.trials)

    def trial(i):
        tic = time.perf_counter()
        report = run_solver(spec.method, problems[i], spec.cfg, streams[i], spec.ussor_params)
        cpu = time.perf_counter() - tic
        log.debug("%s trial %d: IT=%d RR=%.3e", spec.method, i, report.outer_iters, report.rr_final)
        return report, cpu

    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(trial, range(spec.trials)))
    else:
        results = [trial(i) for i in range(spec.trials)]

    reports = [r for r, _ in results]
    prob = problems[0]
    return ResultRow(
        method=spec.method,
        m=prob.m,
        n=prob.n,
        p=prob.p,
        q=prob.q,
        IT=float(np.mean([r.outer_iters for r in reports])),
        IT_inner=float(np.mean([r.inner_iters_total for r in reports])),
        CPU=float(np.mean([c for _, c in results])),
        CPU_inner=float(np.mean([r.inner_time for r in reports])),
        RR_final=float(np.mean([r.rr_final for r in reports])),
        converged_fraction=float(np.mean([r.converged for r in reports])),
        reports=reports,
    )


def speedup(baseline: ResultRow, other: ResultRow) -> float:
    """``baseline.CPU / other.CPU``."""
    if not other.CPU > 0:
        raise MeasurementError(f"cannot divide by CPU time {other.CPU}")
    return baseline.CPU / other.CPU


def flop_estimate(method: str, p, q, n, iters, inner_iters=0, alpha=1):
    """Closed-form operation count of a method.

    ``iters`` is the outer iteration count and ``inner_iters`` the inner count
    per outer iteration (randomized methods); ``alpha`` is the subset size of
    the sampling coordinate descent step.  Integer inputs give exact integers.
    """
    if min(p, n) <= 0 or q < 0:
        raise ParameterError("dimensions must be positive")
    m = p + q
    if method == "sp":
        return m * n**2 + 4 * n**3 + 2 * m * n + 2 * n**2 - 2 * n + 2 * n**2 * iters
    if method == "sp-rk-rgs":
        per_outer = 2 * n**2 + (2 * p * n + 6 * p + 2) * inner_iters
        return q * n**2 + 2 * m * n - n + per_outer * iters
    if method == "ussor":
        setup = m * n**2 + 2 * n**3 + 2 * m * n + 4 * p * n + 3 - 2 * n
        return setup + (6 * q * n + 6 * n**2 + 6 * q + 9 * n + 7) * iters
    if method == "sp-scd":
        per_outer = 2 * n**2 + (2 * n + 2 * alpha + 4) * inner_iters
        return m * n**2 + 2 * m * n - n + per_outer * iters
    raise ParameterError(f"no operation count for method {method!r}")


def row_flops(row: ResultRow, alpha=None):
    """Operation count for an averaged row (inner count taken per outer iteration)."""
    if row.method not in ("sp", "sp-rk-rgs", "ussor", "sp-scd"):
        return None
    per_outer = row.IT_inner / row.IT if row.IT else 0.0
    if alpha is None:
        alpha = (row.n + 1) / 2
    return flop_estimate(row.method, row.p, row.q, row.n, row.IT, per_outer, alpha)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export_csv(rows: list[ResultRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, c)) for c in CSV_COLUMNS])


_INT_COLUMNS = {"m", "n", "p", "q"}


def import_csv(path) -> list[ResultRow]:
    """Read rows written by :func:`export_csv`."""
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            values = {}
            for c in CSV_COLUMNS:
                text = rec[c]
                if c == "method":
                    values[c] = text
                elif c in _INT_COLUMNS:
                    values[c] = int(text)
                else:
                    values[c] = float(text) if text != "" else None
            rows.append(ResultRow(**values))
    return rows
