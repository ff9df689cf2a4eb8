import time

import numpy as np

from .core import SolveReport, relative_residual


def splitting_outer_loop(prob, cfg, inner_solve, x0, start) -> SolveReport:
    """Outer loop ``x <- inner_solve(A2'A2 x + A'Jb)`` shared by the randomized methods.

    ``inner_solve(bhat)`` returns ``(x_next, inner_count)``; ``start`` is the
    ``perf_counter`` reading taken before any precomputation.
    """
    a2bar = prob.a2.T @ prob.a2
    rhs = prob.rhs()
    x = np.zeros(prob.n) if x0 is None else np.array(x0, dtype=np.float64)
    history: list[float] = []
    counts: list[int] = []
    inner_time = 0.0
    converged = x0 is not None and relative_residual(prob, x, rhs) < cfg.outer_tol
    while not converged and len(history) < cfg.max_outer:
        bhat = a2bar @ x + rhs
        tic = time.perf_counter()
        x, count = inner_solve(bhat)
        inner_time += time.perf_counter() - tic
        counts.append(count)
        history.append(relative_residual(prob, x, rhs))
        converged = history[-1] < cfg.outer_tol
    return SolveReport(
        x=x,
        outer_iters=len(history),
        inner_iters_total=sum(counts),
        rr_history=history,
        wall_time=time.perf_counter() - start,
        converged=converged,
        inner_iters_history=counts,
        inner_time=inner_time,
    )
