"""Loss-constrained phase searches, random scans and no-go certification."""

from .search import BACKENDS, PRNG_NAME, Evaluation, PenaltySearch, RestartResult, SearchPoint
from .optimizer import (
    LOSS_TOLERANCE,
    OptimizationTask,
    TradeoffPoint,
    fit_loglog_slope,
    optimize_phase,
    shrink_to_budget,
    tradeoff_curve,
)
from .sampling import SampleStatistics, sample_random_sequences
from .certification import CertificationEntry, certify_nogo, require_certified

__all__ = [
    "BACKENDS",
    "PRNG_NAME",
    "Evaluation",
    "PenaltySearch",
    "RestartResult",
    "SearchPoint",
    "LOSS_TOLERANCE",
    "OptimizationTask",
    "TradeoffPoint",
    "fit_loglog_slope",
    "optimize_phase",
    "shrink_to_budget",
    "tradeoff_curve",
    "SampleStatistics",
    "sample_random_sequences",
    "CertificationEntry",
    "certify_nogo",
    "require_certified",
]
