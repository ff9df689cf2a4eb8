"""The parameter-free splitting iteration ``x <- (A1'A1)^-1 (A2'A2 x + A'Jb)``."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import IlsProblem, SolveReport, SolverConfig, relative_residual
from .errors import RankDeficiencyError
from .sampling import RngState


def cholesky_lower(g: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of ``g``; raises :class:`RankDeficiencyError` on breakdown."""
    try:
        l = scipy.linalg.cholesky(g, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise RankDeficiencyError("A1^T A1 is not positive definite") from exc
    if not np.all(np.diag(l) > 0):
        raise RankDeficiencyError("A1^T A1 is not positive definite")
    return l


def chol_solve(l: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Solve ``(L L^T) y = v`` by two triangular solves."""
    return scipy.linalg.cho_solve((l, True), v, check_finite=False)


@dataclass(frozen=True, eq=False)
class SpState:
    """Precomputed data for the splitting iteration.

    The iteration matrix ``B = (A1'A1)^-1 A2'A2`` is never formed; see
    :meth:`apply_b`.
    """

    chol_a1: np.ndarray
    a2bar: np.ndarray
    c: np.ndarray

    @property
    def n(self) -> int:
        return self.c.shape[0]

    def apply_b(self, v) -> np.ndarray:
        return chol_solve(self.chol_a1, self.a2bar @ v)

    def b_matrix(self) -> np.ndarray:
        """Dense ``B``; for tests and small diagnostics only."""
        return chol_solve(self.chol_a1, self.a2bar)


def sp_precompute(prob: IlsProblem) -> SpState:
    a1bar = prob.a1.T @ prob.a1
    l = cholesky_lower(a1bar)
    a2bar = prob.a2.T @ prob.a2
    c = chol_solve(l, prob.rhs())
    return SpState(l, a2bar, c)


def sp_step(state: SpState, x) -> np.ndarray:
    """One update ``Bx + c``."""
    return state.apply_b(x) + state.c


def sp_solve(prob: IlsProblem, cfg: SolverConfig | None = None, x0=None) -> SolveReport:
    """Run the splitting iteration from ``x0`` (default zero) until RR < ``cfg.outer_tol``."""
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    state = sp_precompute(prob)
    rhs = prob.rhs()
    x = np.zeros(prob.n) if x0 is None else np.array(x0, dtype=np.float64)
    history: list[float] = []
    converged = x0 is not None and relative_residual(prob, x, rhs) < cfg.outer_tol
    while not converged and len(history) < cfg.max_outer:
        x = sp_step(state, x)
        history.append(relative_residual(prob, x, rhs))
        converged = history[-1] < cfg.outer_tol
    return SolveReport(
        x=x,
        outer_iters=len(history),
        inner_iters_total=0,
        rr_history=history,
        wall_time=time.perf_counter() - start,
        converged=converged,
    )


def sp_spectral_radius(
    state: SpState, iters: int = 5000, rng: RngState | None = None, tol: float = 1e-10
) -> float:
    """Power-iteration estimate of the spectral radius of ``B``.

    ``B`` is self-adjoint in the ``A1'A1`` inner product, so the generalised
    Rayleigh quotient ``v'(A2'A2)v / v'(A1'A1)v`` of the power iterate is used
    as the estimate.  Stops after ``iters`` steps or once two successive
    estimates differ by less than ``tol``.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    rng = rng or RngState(0)
    v = rng.uniform(state.n) - 0.5
    estimate = np.inf
    for _ in range(iters):
        v = state.apply_b(v)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            return 0.0
        v /= norm
        energy = np.linalg.norm(state.chol_a1.T @ v) ** 2
        new = float(v @ state.a2bar @ v) / energy
        if abs(new - estimate) < tol:
            return new
        estimate = new
    return estimate
