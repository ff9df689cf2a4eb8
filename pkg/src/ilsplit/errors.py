"""Exception hierarchy shared by every solver and utility in the package."""

import numpy as np


class IlsError(Exception):
    """Base class for all package errors."""


class DimensionError(IlsError, ValueError):
    """Vector or matrix sizes are inconsistent with the problem dimensions."""


class ShapeError(IlsError, ValueError):
    """A matrix is not square, or not symmetric within tolerance."""


class ParameterError(IlsError, ValueError):
    """A configuration value is outside its admissible range."""


class DegenerateRhsError(IlsError, ValueError):
    """A^T J b vanishes, so the relative residual is undefined."""


class DegenerateWeightsError(IlsError, ValueError):
    """Sampling weights are all zero (or negative/non-finite)."""


class CapacityError(IlsError, ValueError):
    """Requested enumeration is too large to perform."""


class RankDeficiencyError(IlsError, np.linalg.LinAlgError):
    """A_1 (or A) is not of full column rank."""


class ZeroColumnError(RankDeficiencyError):
    """A_1 has a zero column, so it cannot be sampled or projected on."""


class NotWellPosedError(IlsError, np.linalg.LinAlgError):
    """A_1^T A_1 - A_2^T A_2 is not positive definite."""


class GenerationError(IlsError, RuntimeError):
    """A generated instance failed its positive-definiteness check."""


class MeasurementError(IlsError, ValueError):
    """A timing used as a denominator is zero or negative."""
