"""Exact, uniformly fast random variate generation for the Pearson IV law."""

from .core import (
    ArctanMapped,
    GammaBounds,
    PearsonParams,
    gamma_bounds,
    gamma_exact,
    log_density,
    mean,
    mode,
    variance,
)
from .errors import (
    ConsistencyError,
    DomainError,
    IterationCapError,
    MomentUndefinedError,
    QuadratureError,
)
from .rngkit import RngState
from .samplers import AlgorithmId, PeakBound, SampleReport, sample_pearson4, select_algorithm

__all__ = [
    "AlgorithmId",
    "ArctanMapped",
    "ConsistencyError",
    "DomainError",
    "GammaBounds",
    "IterationCapError",
    "MomentUndefinedError",
    "PearsonParams",
    "PeakBound",
    "QuadratureError",
    "RngState",
    "SampleReport",
    "gamma_bounds",
    "gamma_exact",
    "log_density",
    "mean",
    "mode",
    "sample_pearson4",
    "select_algorithm",
    "variance",
]

__version__ = "0.1.0"
