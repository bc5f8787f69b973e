"""Derivative-free minimization with a conjugate-prior treatment of CMA-ES.

The search distribution's mean and covariance carry a Normal-Inverse-Wishart
belief that is updated in closed form each iteration from density-weighted,
fitness-ranked candidate evaluations, with a dilatation/contraction restart
controller for escaping local minima.
"""

from .benchmarks import BenchmarkSpec, cone, rastrigin, registry_lookup, schwefel1, schwefel2
from .errors import (
    BcmaesError,
    DegreesOfFreedomTooLow,
    InvalidLevels,
    InvariantViolation,
    NonFiniteFitness,
    NonPositiveDensity,
    NotPositiveDefinite,
    PriorDegeneracy,
    RepairFailed,
    SchemaError,
    UnknownFunction,
)
from .likelihood import (
    CandidateSet,
    RankedCandidateSet,
    compute_weights,
    corrected_covariance,
    rank_candidates,
    strategy_one_mean,
    strategy_two_mean,
    summarize,
)
from .linalg import cholesky, mvn_logpdf, mvn_pdf, sample_mvn, spd_repair
from .niw import (
    NigParams,
    NiwParams,
    SummaryStats,
    expected_covariance,
    expected_mean,
    nig_posterior,
    posterior_update,
    posterior_update_raw,
    weighted_update_expectations,
)
from .optimizer import (
    IterationTrace,
    OptimizerConfig,
    RunResult,
    default_popsize,
    evaluate_population,
    init_prior,
    run,
)
from .restart import (
    DEFAULT_FACTORS,
    DEFAULT_LEVELS,
    RestartDecision,
    RestartState,
    init_restart,
    step_restart,
)
from .rng import RandomSource

__version__ = "0.1.0"

__all__ = [
    "BcmaesError",
    "BenchmarkSpec",
    "CandidateSet",
    "DegreesOfFreedomTooLow",
    "DEFAULT_FACTORS",
    "DEFAULT_LEVELS",
    "InvalidLevels",
    "InvariantViolation",
    "IterationTrace",
    "NigParams",
    "NiwParams",
    "NonFiniteFitness",
    "NonPositiveDensity",
    "NotPositiveDefinite",
    "OptimizerConfig",
    "PriorDegeneracy",
    "RandomSource",
    "RankedCandidateSet",
    "RepairFailed",
    "RestartDecision",
    "RestartState",
    "RunResult",
    "SchemaError",
    "SummaryStats",
    "UnknownFunction",
    "cholesky",
    "compute_weights",
    "cone",
    "corrected_covariance",
    "default_popsize",
    "evaluate_population",
    "expected_covariance",
    "expected_mean",
    "init_prior",
    "init_restart",
    "mvn_logpdf",
    "mvn_pdf",
    "nig_posterior",
    "posterior_update",
    "posterior_update_raw",
    "rank_candidates",
    "rastrigin",
    "registry_lookup",
    "run",
    "sample_mvn",
    "schwefel1",
    "schwefel2",
    "spd_repair",
    "step_restart",
    "strategy_one_mean",
    "strategy_two_mean",
    "summarize",
    "weighted_update_expectations",
]
