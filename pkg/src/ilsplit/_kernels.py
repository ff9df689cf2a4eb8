"""Compiled inner loops for the randomized solvers.

Random indices are drawn by the caller (from an :class:`~ilsplit.sampling.RngState`)
in chunks and passed in, so the kernels are deterministic functions of their
inputs.  Both kernels run the periodic stopping check themselves: before the
first step and then every ``check_every`` steps, with the maintained
quantities recomputed from scratch.  They return ``(steps_run, converged)``;
a chunk that runs out of indices returns ``converged=False`` without a final
check, which the next call performs.
"""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _residual_rk_rgs(a1t, bhat, z, az):
    """Recompute ``az = A1 z`` and return ``||A1' az - bhat||``."""
    n, p = a1t.shape
    az[:] = 0.0
    for j in range(n):
        zj = z[j]
        if zj != 0.0:
            for i in range(p):
                az[i] += a1t[j, i] * zj
    total = 0.0
    for j in range(n):
        s = -bhat[j]
        for i in range(p):
            s += a1t[j, i] * az[i]
        total += s * s
    return np.sqrt(total)


@numba.njit(cache=True, nogil=True)
def rk_rgs_run(a1t, bhat, col_norms_sq, w, z, az, j1s, j2s, check_every, bound):
    """Alternating Kaczmarz / Gauss-Seidel pairs, in place on ``w``, ``z``, ``az``.

    ``a1t`` is ``A1^T`` in C order so column ``j`` of ``A1`` is the contiguous
    row ``a1t[j]``.  Pair ``t`` uses ``j1s[t]`` for the Kaczmarz step on
    ``A1' w = bhat`` and ``j2s[t]`` for the Gauss-Seidel step on ``A1 z = w``.
    """
    p = a1t.shape[1]
    total = j1s.shape[0]
    t = 0
    while True:
        if _residual_rk_rgs(a1t, bhat, z, az) <= bound:
            return t, True
        if t >= total:
            return t, False
        stop = min(t + check_every, total)
        while t < stop:
            j = j1s[t]
            s = bhat[j]
            for i in range(p):
                s -= a1t[j, i] * w[i]
            s /= col_norms_sq[j]
            for i in range(p):
                w[i] += s * a1t[j, i]

            j = j2s[t]
            s = 0.0
            for i in range(p):
                s += a1t[j, i] * (w[i] - az[i])
            s /= col_norms_sq[j]
            z[j] += s
            for i in range(p):
                az[i] += s * a1t[j, i]
            t += 1


@numba.njit(cache=True, nogil=True)
def _residual_scd(a1bar, bhat, beta, r):
    """Recompute ``r = bhat - A1bar beta`` and return ``||r||``."""
    n = beta.shape[0]
    total = 0.0
    for i in range(n):
        s = bhat[i]
        for j in range(n):
            s -= a1bar[i, j] * beta[j]
        r[i] = s
        total += s * s
    return np.sqrt(total)


@numba.njit(cache=True, nogil=True)
def scd_run(a1bar, diag, bhat, beta, r, alphas, picks, perm, chosen, check_every, bound):
    """Sampling coordinate descent steps, in place on ``beta``, ``r``, ``perm``.

    Step ``t`` draws a subset of size ``alphas[t]`` by partial Fisher-Yates on
    the persistent permutation ``perm``, consuming swap targets from
    ``picks`` sequentially (the ``i``-th swap target lies in ``[i, n)``), then
    relaxes the coordinate of largest ``|r|`` in the subset, ties to the
    smallest index.  The selected coordinate is written to ``chosen[t]``.
    """
    n = beta.shape[0]
    total = alphas.shape[0]
    pos = 0
    t = 0
    while True:
        if _residual_scd(a1bar, bhat, beta, r) <= bound:
            return t, True
        if t >= total:
            return t, False
        stop = min(t + check_every, total)
        while t < stop:
            a = alphas[t]
            best = -1
            best_val = -1.0
            for i in range(a):
                k = picks[pos + i]
                tmp = perm[i]
                perm[i] = perm[k]
                perm[k] = tmp
                s = perm[i]
                v = r[s] * r[s]
                if v > best_val or (v == best_val and s < best):
                    best_val = v
                    best = s
            pos += a
            chosen[t] = best
            step = r[best] / diag[best]
            if step != 0.0:
                beta[best] += step
                for i in range(n):
                    r[i] -= step * a1bar[best, i]
            t += 1


def warmup():
    """Compile both kernels on tiny inputs."""
    a = np.eye(2)
    v = np.zeros(2)
    idx = np.zeros(1, dtype=np.int64)
    rk_rgs_run(a, np.ones(2), np.ones(2), v.copy(), v.copy(), v.copy(), idx, idx, 1, 0.0)
    scd_run(a, np.ones(2), np.ones(2), v.copy(), v.copy(), np.ones(1, dtype=np.int64), idx,
            np.arange(2), idx.copy(), 1, 0.0)
