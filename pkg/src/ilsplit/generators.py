"""Synthetic problem families.

``A1`` and both right-hand sides have i.i.d. U[0, 1) entries and
``A2 = nu * [I_q | 0]``.  At small sizes ``nu = 7`` usually breaks positive
definiteness of ``A1'A1 - A2'A2``; ``target_rho`` instead sets
``nu = sqrt(target_rho * lambda_min(A1'A1))``, which makes the splitting
iteration matrix have spectral radius at most ``target_rho`` (exactly
``target_rho`` when ``q == n``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import IlsProblem, check_spd, normal_matrix
from .errors import GenerationError, ParameterError
from .sampling import RngState


@dataclass(frozen=True)
class GenSpec:
    p: int
    q: int
    n: int
    nu: float = 7.0
    seed: int = 0
    target_rho: float | None = None

    def __post_init__(self):
        if not (self.p >= self.n >= 1 and self.q >= 0):
            raise ParameterError(f"need p >= n >= 1 and q >= 0, got {self}")
        if self.target_rho is None:
            if not self.nu > 0:
                raise ParameterError("nu must be positive")
        elif not 0 < self.target_rho < 1:
            raise ParameterError("target_rho must lie in (0, 1)")


def lambda_min(g: np.ndarray) -> float:
    """Smallest eigenvalue of the symmetric matrix ``g``."""
    return float(scipy.linalg.eigh(g, eigvals_only=True, subset_by_index=[0, 0])[0])


def gen_random_ils(spec: GenSpec, rng: RngState | None = None) -> IlsProblem:
    """Draw one instance; raises :class:`GenerationError` if it is not well posed."""
    rng = rng or RngState(spec.seed)
    p, q, n = spec.p, spec.q, spec.n
    a1 = rng.uniform((p, n))
    b1 = rng.uniform(p)
    b2 = rng.uniform(q)
    if spec.target_rho is not None:
        nu = np.sqrt(spec.target_rho * lambda_min(a1.T @ a1))
    else:
        nu = spec.nu
    a2 = nu * np.eye(q, n)
    prob = IlsProblem(a1, a2, b1, b2)
    if not check_spd(normal_matrix(prob)):
        raise GenerationError(
            f"A1'A1 - A2'A2 is not positive definite for p={p}, q={q}, n={n}, nu={nu:g}; "
            "lower nu, raise p, or set target_rho"
        )
    return prob


def gen_minkowski_ils(
    p: int, n: int, nu: float = 7.0, rng: RngState | None = None, target_rho: float | None = None
) -> IlsProblem:
    """The ``q = 1`` family, ``A2 = nu * e_1^T``."""
    return gen_random_ils(GenSpec(p, 1, n, nu=nu, target_rho=target_rho), rng)
