"""Splitting outer loop with a sampling coordinate descent inner solve.

The inner problem is the SPD system ``A1bar beta = bhat`` with
``A1bar = A1'A1``.  Every step draws a subset size ``alpha``, a uniformly
random subset of that size, and relaxes the coordinate with the largest
residual magnitude inside it.  The residual ``r = bhat - A1bar beta`` is
maintained incrementally.

:func:`scd_exact_sampler` enumerates all subsets to realise the adaptive
subset probability (weight = diagonal entry of the selected coordinate).  It
is exponential in ``n`` and serves as a distributional oracle only.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._outer import splitting_outer_loop
from .core import IlsProblem, SolveReport, SolverConfig
from .errors import CapacityError, ParameterError, RankDeficiencyError
from .sampling import RngState, WeightedSampler, chunk_size, draw_alphas

#: Largest ``n`` accepted by the enumerating sampler.
EXACT_SAMPLER_MAX_N = 25
_EXACT_SAMPLER_MAX_SUBSETS = 5_000_000


@dataclass
class ScdInnerState:
    beta: np.ndarray
    r: np.ndarray
    a1bar: np.ndarray
    diag: np.ndarray

    @classmethod
    def start(cls, a1bar, bhat) -> "ScdInnerState":
        """State at ``beta = 0``, ``r = bhat``."""
        a1bar = np.asarray(a1bar, dtype=np.float64)
        bhat = np.array(bhat, dtype=np.float64)
        return cls(np.zeros(bhat.shape[0]), bhat, a1bar, np.diag(a1bar).copy())


def rcd_step(state: ScdInnerState, bhat, j: int) -> ScdInnerState:
    """Exact line search along coordinate ``j``; returns a new state.

    ``bhat`` is implied by the maintained residual and only kept for the
    signature's sake.
    """
    if not state.diag[j] > 0:
        raise RankDeficiencyError(f"diagonal entry {j} of A1'A1 is not positive")
    step = state.r[j] / state.diag[j]
    beta = state.beta.copy()
    beta[j] += step
    return ScdInnerState(beta, state.r - step * state.a1bar[j], state.a1bar, state.diag)


def scd_select_index(r, tau) -> int:
    """Index in ``tau`` maximising ``r[s]**2``; ties go to the smallest index."""
    tau = np.asarray(tau, dtype=np.int64).reshape(-1)
    if tau.size == 0:
        raise ParameterError("index subset is empty")
    r = np.asarray(r)
    tau = np.sort(tau)
    return int(tau[np.argmax(r[tau] ** 2)])


class _InnerScd:
    def __init__(self, a1bar):
        self.a1bar = np.ascontiguousarray(a1bar, dtype=np.float64)
        self.diag = np.diag(self.a1bar).copy()
        bad = np.flatnonzero(~(self.diag > 0))
        if bad.size:
            raise RankDeficiencyError(f"A1'A1 has nonpositive diagonal at {bad.tolist()}")

    def solve(self, bhat, cfg: SolverConfig, rng: RngState, trace: list | None = None):
        n = self.diag.shape[0]
        max_inner, check_every = cfg.inner_caps(n)
        bhat = np.ascontiguousarray(bhat, dtype=np.float64)
        bound = cfg.inner_tol * np.linalg.norm(bhat)
        beta = np.zeros(n)
        r = bhat.copy()
        perm = np.arange(n, dtype=np.int64)
        chunk = chunk_size(check_every)
        t = 0
        while True:
            size = min(chunk, max_inner - t)
            alphas = draw_alphas(cfg.alpha_policy, n, rng, size)
            offsets = np.repeat(np.cumsum(alphas) - alphas, alphas)
            lows = np.arange(offsets.size, dtype=np.int64) - offsets
            picks = rng.integers(lows, n).astype(np.int64)
            chosen = np.empty(size, dtype=np.int64)
            done, converged = _kernels.scd_run(
                self.a1bar, self.diag, bhat, beta, r, alphas, picks, perm, chosen,
                check_every, bound,
            )
            if trace is not None:
                trace.extend(chosen[:done].tolist())
            t += done
            if converged or t >= max_inner:
                return beta, t


def scd_inner(a1bar, bhat, cfg: SolverConfig, rng: RngState, trace: list | None = None):
    """Approximate ``A1bar^{-1} bhat`` from ``beta = 0``; returns ``(beta, steps)``.

    Stops once ``||r|| <= inner_tol * ||bhat||`` for a freshly recomputed
    residual (checked before the first step and every ``check_every`` steps)
    or after ``max_inner`` steps.  If ``trace`` is a list, the selected
    coordinate of every step is appended to it.
    """
    return _InnerScd(a1bar).solve(bhat, cfg, rng, trace)


def scd_exact_distribution(a1bar, r, alpha: int) -> np.ndarray:
    """Probability of each coordinate under the enumerated adaptive subset law.

    Subset ``tau`` has probability proportional to ``A1bar[s, s]`` where
    ``s = argmax_{s in tau} r[s]**2`` (smallest index on ties); the returned
    vector aggregates subset probabilities by their selected coordinate.
    """
    diag = np.diag(np.asarray(a1bar, dtype=np.float64))
    n = diag.shape[0]
    if n > EXACT_SAMPLER_MAX_N or math.comb(n, alpha) > _EXACT_SAMPLER_MAX_SUBSETS:
        raise CapacityError(f"enumerating C({n}, {alpha}) subsets is too expensive")
    if not 1 <= alpha <= n:
        raise ParameterError(f"need 1 <= alpha <= n, got alpha={alpha}, n={n}")
    sq = np.asarray(r, dtype=np.float64) ** 2
    # rank coordinates by (r^2 descending, index ascending); each subset selects its best-ranked member
    order = np.lexsort((np.arange(n), -sq))
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    weight = np.zeros(n)
    for tau in itertools.combinations(range(n), alpha):
        s = min(tau, key=rank.__getitem__)
        weight[s] += diag[s]
    return weight / weight.sum()


def scd_exact_sampler(a1bar, r, alpha: int, rng: RngState, size: int | None = None):
    """Draw the selected coordinate under the enumerated adaptive subset law.

    With ``size`` given, returns that many independent draws for the same ``r``.
    """
    dist = scd_exact_distribution(a1bar, r, alpha)
    return WeightedSampler(dist).draw(rng, size)


def sp_scd_solve(
    prob: IlsProblem, cfg: SolverConfig | None = None, rng: RngState | None = None, x0=None
) -> SolveReport:
    cfg = cfg or SolverConfig()
    rng = rng or RngState(cfg.seed)
    start = time.perf_counter()
    inner = _InnerScd(prob.a1.T @ prob.a1)
    return splitting_outer_loop(prob, cfg, lambda bhat: inner.solve(bhat, cfg, rng), x0, start)
