"""Splitting and randomized iterative solvers for indefinite least squares.

Solves ``min_x (b - Ax)^T J (b - Ax)`` with ``A = [A1; A2]`` and
``J = diag(I_p, -I_q)`` under the assumption that ``A1'A1 - A2'A2`` is
positive definite.
"""

from .core import (
    AlphaPolicy,
    IlsProblem,
    SolveReport,
    SolverConfig,
    apply_signature,
    check_spd,
    normal_matrix,
    relative_residual,
)
from .errors import (
    CapacityError,
    DegenerateRhsError,
    DegenerateWeightsError,
    DimensionError,
    GenerationError,
    IlsError,
    MeasurementError,
    NotWellPosedError,
    ParameterError,
    RankDeficiencyError,
    ShapeError,
    ZeroColumnError,
)
from .generators import GenSpec, gen_minkowski_ils, gen_random_ils
from .harness import (
    ExperimentSpec,
    ResultRow,
    export_csv,
    flop_estimate,
    import_csv,
    run_experiment,
    speedup,
)
from .reference import solve_normal_direct, solve_qr_cholesky
from .rk_rgs import inner_rk_rgs, rgs_step, rk_step, sp_rk_rgs_solve
from .sampling import (
    RngState,
    WeightedSampler,
    sample_alpha,
    sample_uniform_subset,
    sample_weighted,
)
from .scd import (
    ScdInnerState,
    rcd_step,
    scd_exact_sampler,
    scd_inner,
    scd_select_index,
    sp_scd_solve,
)
from .sp import SpState, sp_precompute, sp_solve, sp_spectral_radius, sp_step
from .ussor import USSOR_PRESETS, ussor_solve, ussor_tau

__version__ = "0.1.0"
