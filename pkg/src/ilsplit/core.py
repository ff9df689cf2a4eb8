"""Problem container, shared diagnostics and solver bookkeeping types.

Dense matrices are plain ``numpy.ndarray`` objects of dtype float64.  The
signature matrix ``J = diag(I_p, -I_q)`` is never materialised; only its
action on vectors is implemented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRhsError, DimensionError, ParameterError, ShapeError

#: Relative Frobenius asymmetry tolerated by :func:`check_spd`.
SYMMETRY_RTOL = 1e-12


def _as_matrix(a, name: str) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    a.setflags(write=False)
    return a


def _as_vector(v, name: str) -> np.ndarray:
    v = np.array(v, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains NaN or Inf")
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class IlsProblem:
    """Partitioned indefinite least squares data ``(A_1, A_2, b_1, b_2)``.

    Represents ``min (b - Ax)^T J (b - Ax)`` with ``A = [A_1; A_2]`` and
    ``b = [b_1; b_2]``.  ``A_2`` may have zero rows (ordinary least squares).
    Arrays are copied and frozen on construction.
    """

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self):
        a1 = _as_matrix(self.a1, "a1")
        n = a1.shape[1]
        a2 = np.asarray(self.a2, dtype=np.float64)
        if a2.size == 0:
            a2 = np.zeros((0, n))
        a2 = _as_matrix(a2, "a2")
        b1 = _as_vector(self.b1, "b1")
        b2 = _as_vector(self.b2, "b2")
        p, q = a1.shape[0], a2.shape[0]
        if p < 1 or n < 1:
            raise DimensionError(f"need p >= 1 and n >= 1, got p={p}, n={n}")
        if a2.shape[1] != n:
            raise DimensionError(f"a2 has {a2.shape[1]} columns, a1 has {n}")
        if p + q < n:
            raise DimensionError(f"need m = p + q >= n, got m={p + q}, n={n}")
        if b1.shape[0] != p or b2.shape[0] != q:
            raise DimensionError(
                f"rhs sizes ({b1.shape[0]}, {b2.shape[0]}) do not match ({p}, {q})"
            )
        for name, value in (("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2)):
            object.__setattr__(self, name, value)

    @property
    def p(self) -> int:
        return self.a1.shape[0]

    @property
    def q(self) -> int:
        return self.a2.shape[0]

    @property
    def n(self) -> int:
        return self.a1.shape[1]

    @property
    def m(self) -> int:
        return self.p + self.q

    @property
    def a(self) -> np.ndarray:
        """The stacked matrix ``[A_1; A_2]``."""
        return np.vstack([self.a1, self.a2])

    @property
    def b(self) -> np.ndarray:
        return np.concatenate([self.b1, self.b2])

    def rhs(self) -> np.ndarray:
        """``A^T J b = A_1^T b_1 - A_2^T b_2``."""
        return self.a1.T @ self.b1 - self.a2.T @ self.b2


@dataclass(frozen=True)
class AlphaPolicy:
    """How the subset size of a sampling coordinate descent step is drawn.

    ``kind="uniform"`` draws alpha uniformly from ``{1, ..., n}``;
    ``kind="fixed"`` uses ``min(k, n)``.
    """

    kind: str = "uniform"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("uniform", "fixed"):
            raise ParameterError(f"unknown alpha policy {self.kind!r}")
        if self.kind == "fixed" and self.k < 1:
            raise ParameterError(f"fixed alpha must be >= 1, got {self.k}")

    @classmethod
    def parse(cls, text: str) -> "AlphaPolicy":
        """Parse ``"uniform"`` or ``"fixed:K"``."""
        text = text.strip().lower()
        if text == "uniform":
            return cls()
        kind, _, k = text.partition(":")
        if kind != "fixed" or not k:
            raise ParameterError(f"alpha policy must be 'uniform' or 'fixed:K', got {text!r}")
        try:
            return cls("fixed", int(k))
        except ValueError:
            raise ParameterError(f"bad fixed alpha {k!r}") from None

    def __str__(self):
        return "uniform" if self.kind == "uniform" else f"fixed:{self.k}"


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and caps shared by the iterative solvers.

    ``max_inner`` and ``check_every`` default to ``100 * n`` and ``n`` when
    left as ``None``; use :meth:`inner_caps` to resolve them.
    """

    outer_tol: float = 1e-6
    max_outer: int = 20000
    inner_tol: float = 1e-8
    max_inner: int | None = None
    check_every: int | None = None
    alpha_policy: AlphaPolicy = field(default_factory=AlphaPolicy)
    seed: int = 0

    def __post_init__(self):
        if not (self.outer_tol > 0 and self.inner_tol > 0):
            raise ParameterError("tolerances must be positive")
        if self.max_outer < 1:
            raise ParameterError("max_outer must be >= 1")
        if self.max_inner is not None and self.max_inner < 1:
            raise ParameterError("max_inner must be >= 1")
        if self.check_every is not None and self.check_every < 1:
            raise ParameterError("check_every must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be a 64-bit unsigned integer")

    def inner_caps(self, n: int) -> tuple[int, int]:
        """Return ``(max_inner, check_every)`` resolved for dimension ``n``."""
        max_inner = 100 * n if self.max_inner is None else self.max_inner
        check_every = n if self.check_every is None else self.check_every
        return max_inner, check_every


@dataclass
class SolveReport:
    """Outcome of one solve.

    ``rr_history[k]`` is the relative residual after outer iteration ``k + 1``;
    ``inner_iters_history`` holds the inner count of each outer iteration for
    the randomized methods (empty otherwise).
    """

    x: np.ndarray
    outer_iters: int
    inner_iters_total: int
    rr_history: list[float]
    wall_time: float
    converged: bool
    inner_iters_history: list[int] = field(default_factory=list)
    inner_time: float = 0.0
    diverged: bool = False

    @property
    def rr_final(self) -> float:
        return self.rr_history[-1] if self.rr_history else float("nan")


def apply_signature(p: int, q: int, v) -> np.ndarray:
    """Return ``J v`` for ``J = diag(I_p, -I_q)``."""
    if p < 1 or q < 0:
        raise DimensionError(f"need p >= 1 and q >= 0, got p={p}, q={q}")
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (p + q,):
        raise DimensionError(f"vector of length {v.shape} does not match p+q={p + q}")
    w = v.copy()
    w[p:] = -w[p:]
    return w


def normal_matrix(prob: IlsProblem) -> np.ndarray:
    """``A^T J A = A_1^T A_1 - A_2^T A_2``, symmetrised to be exactly symmetric."""
    m = prob.a1.T @ prob.a1 - prob.a2.T @ prob.a2
    return 0.5 * (m + m.T)


def check_spd(m) -> bool:
    """True iff an unpivoted Cholesky factorisation of ``m`` succeeds."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.T) > SYMMETRY_RTOL * scale:
        raise ShapeError("matrix is not symmetric")
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return False
    return True


def relative_residual(prob: IlsProblem, x, rhs=None) -> float:
    """``||A^T J (Ax - b)||^2 / ||A^T J b||^2``.

    ``rhs`` may pass a precomputed ``A^T J b`` to skip recomputing it.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (prob.n,):
        raise DimensionError(f"x has shape {x.shape}, expected ({prob.n},)")
    if rhs is None:
        rhs = prob.rhs()
    denom = float(rhs @ rhs)
    if denom == 0.0:
        raise DegenerateRhsError("A^T J b = 0, relative residual is undefined")
    g = prob.a1.T @ (prob.a1 @ x - prob.b1) - prob.a2.T @ (prob.a2 @ x - prob.b2)
    return float(g @ g) / denom
