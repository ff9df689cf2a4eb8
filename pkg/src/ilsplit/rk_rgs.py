"""Splitting outer loop with an alternating randomized Kaczmarz / Gauss-Seidel inner solve.

Each outer step needs ``x_{k+1} = (A1'A1)^{-1} bhat``.  The inner solve splits
that into ``A1' w = bhat`` (Kaczmarz, whose "rows" are the columns of ``A1``)
and ``A1 z = w`` (Gauss-Seidel on columns), advancing one step of each per
iteration.  Only columns of ``A1`` are ever touched.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernels
from ._outer import splitting_outer_loop
from .core import IlsProblem, SolveReport, SolverConfig
from .errors import ZeroColumnError
from .sampling import RngState, WeightedSampler, chunk_size


def _column(a1, j):
    return np.asarray(a1)[:, j]


def rk_step(a1, bhat, w, j1: int) -> np.ndarray:
    """Project ``w`` onto the hyperplane ``<A1[:, j1], w> = bhat[j1]``."""
    col = _column(a1, j1)
    norm_sq = float(col @ col)
    if norm_sq == 0.0:
        raise ZeroColumnError(f"column {j1} of A1 is zero")
    return w + ((bhat[j1] - col @ w) / norm_sq) * col


def rgs_step(a1, w, z, az, j2: int) -> tuple[np.ndarray, np.ndarray]:
    """Relax coordinate ``j2`` of ``z`` for ``A1 z = w``; ``az`` must equal ``A1 z``."""
    col = _column(a1, j2)
    norm_sq = float(col @ col)
    if norm_sq == 0.0:
        raise ZeroColumnError(f"column {j2} of A1 is zero")
    step = (col @ (w - az)) / norm_sq
    z = np.array(z, dtype=np.float64)
    z[j2] += step
    return z, az + step * col


def column_norms_sq(a1) -> np.ndarray:
    norms = np.einsum("ij,ij->j", a1, a1)
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise ZeroColumnError(f"A1 has zero column(s) {zero.tolist()}")
    return norms


class _InnerRkRgs:
    """Reusable precomputation for repeated inner solves on the same ``A1``."""

    def __init__(self, a1):
        self.a1 = np.asarray(a1, dtype=np.float64)
        self.a1t = np.ascontiguousarray(self.a1.T)
        self.col_norms_sq = column_norms_sq(self.a1)
        self.sampler = WeightedSampler(self.col_norms_sq)

    def solve(self, bhat, cfg: SolverConfig, rng: RngState):
        p, n = self.a1.shape
        max_inner, check_every = cfg.inner_caps(n)
        bhat = np.ascontiguousarray(bhat, dtype=np.float64)
        bound = cfg.inner_tol * np.linalg.norm(bhat)
        w = np.zeros(p)
        z = np.zeros(n)
        az = np.zeros(p)
        chunk = chunk_size(check_every)
        t = 0
        while True:
            size = min(chunk, max_inner - t)
            j = self.sampler.draw(rng, 2 * size).reshape(size, 2).T.copy()
            done, converged = _kernels.rk_rgs_run(
                self.a1t, bhat, self.col_norms_sq, w, z, az, j[0], j[1], check_every, bound
            )
            t += done
            if converged or t >= max_inner:
                return z, t


def inner_rk_rgs(a1, bhat, cfg: SolverConfig, rng: RngState) -> tuple[np.ndarray, int]:
    """Approximate ``(A1'A1)^{-1} bhat`` from ``z = w = 0``.

    Stops when ``||A1'A1 z - bhat|| <= inner_tol * ||bhat||`` at a check (run
    before the first pair and then every ``check_every`` pairs) or after
    ``max_inner`` pairs.  Returns ``(z, pairs_run)``.
    """
    return _InnerRkRgs(a1).solve(bhat, cfg, rng)


def sp_rk_rgs_solve(
    prob: IlsProblem, cfg: SolverConfig | None = None, rng: RngState | None = None, x0=None
) -> SolveReport:
    cfg = cfg or SolverConfig()
    rng = rng or RngState(cfg.seed)
    start = time.perf_counter()
    inner = _InnerRkRgs(prob.a1)
    return splitting_outer_loop(prob, cfg, lambda bhat: inner.solve(bhat, cfg, rng), x0, start)
