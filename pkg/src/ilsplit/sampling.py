"""Seeded randomness for the randomized solvers.

All draws go through :class:`RngState`, a thin wrapper over numpy's
counter-based Philox bit generator, so a seed plus a call sequence fixes the
output on every platform.  Independent streams for parallel trials come from
:meth:`RngState.spawn`.
"""

from __future__ import annotations

import numpy as np

from .core import AlphaPolicy
from .errors import DegenerateWeightsError, ParameterError


class RngState:
    """Single-owner random stream; never share one between threads."""

    def __init__(self, seed: int | np.random.SeedSequence = 0):
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
            self.seed = int(seed.entropy)
        else:
            seed = int(seed)
            if not 0 <= seed < 2**64:
                raise ParameterError("seed must be a 64-bit unsigned integer")
            self.seed = seed
            self._seq = np.random.SeedSequence(seed)
        self.generator = np.random.Generator(np.random.Philox(self._seq))

    def spawn(self, count: int) -> list["RngState"]:
        """Return ``count`` statistically independent child streams.

        Children depend only on the parent seed and the spawn order, not on
        draws already taken from the parent.
        """
        return [RngState(child) for child in self._seq.spawn(count)]

    def uniform(self, size=None):
        return self.generator.random(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size=size)

    def __repr__(self):
        return f"RngState(seed={self.seed})"


class WeightedSampler:
    """Inverse-CDF sampler over prefix sums of nonnegative weights."""

    def __init__(self, weights):
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        if weights.size == 0 or np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise DegenerateWeightsError("weights must be finite and nonnegative")
        self.cumulative = np.cumsum(weights)
        self.total = float(self.cumulative[-1])
        if not self.total > 0:
            raise DegenerateWeightsError("all weights are zero")
        # u * total can round up to total; fall back to the last positive weight
        self._last = int(np.flatnonzero(weights > 0)[-1])

    def __len__(self):
        return self.cumulative.size

    def probabilities(self) -> np.ndarray:
        return np.diff(self.cumulative, prepend=0.0) / self.total

    def draw(self, rng: RngState, size: int | None = None):
        u = rng.uniform(size) * self.total
        j = np.searchsorted(self.cumulative, u, side="right")
        j = np.minimum(j, self._last)
        return int(j) if size is None else j.astype(np.int64)


def sample_weighted(sampler: WeightedSampler, rng: RngState) -> int:
    """Draw index ``j`` with probability ``weight[j] / total``."""
    return sampler.draw(rng)


def sample_uniform_subset(n: int, alpha: int, rng: RngState) -> np.ndarray:
    """Uniformly random size-``alpha`` subset of ``range(n)`` (partial Fisher-Yates)."""
    if not 1 <= alpha <= n:
        raise ParameterError(f"need 1 <= alpha <= n, got alpha={alpha}, n={n}")
    perm = np.arange(n)
    picks = rng.integers(np.arange(alpha), n)
    for i, k in enumerate(picks):
        perm[i], perm[k] = perm[k], perm[i]
    return perm[:alpha].copy()


def sample_alpha(policy: AlphaPolicy, n: int, rng: RngState) -> int:
    """Subset size for one sampling coordinate descent step."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if policy.kind == "fixed":
        return min(policy.k, n)
    return int(rng.integers(1, n + 1))


def draw_alphas(policy: AlphaPolicy, n: int, rng: RngState, size: int) -> np.ndarray:
    """Vectorised :func:`sample_alpha` for ``size`` consecutive steps."""
    if policy.kind == "fixed":
        return np.full(size, min(policy.k, n), dtype=np.int64)
    return rng.integers(1, n + 1, size=size).astype(np.int64)


def chunk_size(check_every: int, target: int = 8192) -> int:
    """Number of steps to pre-draw at once: a multiple of ``check_every`` near ``target``."""
    return check_every * max(1, target // check_every)
