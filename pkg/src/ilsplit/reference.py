"""Direct solvers used as ground truth."""

import numpy as np
import scipy.linalg

from .core import IlsProblem, normal_matrix
from .errors import NotWellPosedError, RankDeficiencyError


def _cholesky(m):
    try:
        return scipy.linalg.cho_factor(m, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotWellPosedError("A^T J A is not positive definite") from exc


def solve_normal_direct(prob: IlsProblem) -> np.ndarray:
    """Solve ``(A1'A1 - A2'A2) x = A'Jb`` by Cholesky."""
    return scipy.linalg.cho_solve(_cholesky(normal_matrix(prob)), prob.rhs())


def solve_qr_cholesky(prob: IlsProblem) -> np.ndarray:
    """QR-Cholesky method: ``A = QR``, solve ``(Q'JQ) y = Q'Jb``, return ``R^{-1} y``.

    Uses LAPACK's Householder QR.  Raises :class:`RankDeficiencyError` when
    ``R`` is numerically singular.
    """
    a = prob.a
    q, r = np.linalg.qr(a, mode="reduced")
    d = np.abs(np.diag(r))
    if d.min() <= max(a.shape) * np.finfo(float).eps * d.max():
        raise RankDeficiencyError("A is not of full column rank")
    q1, q2 = q[: prob.p], q[prob.p :]
    g = q1.T @ q1 - q2.T @ q2
    y = scipy.linalg.cho_solve(_cholesky(0.5 * (g + g.T)), q1.T @ prob.b1 - q2.T @ prob.b2)
    return scipy.linalg.solve_triangular(r, y, lower=False)
