"""Harmonic analysis on p-adic cell grids: generalized Rademacher systems,
the fast Vilenkin-Chrestenson transform, Riesz product measures with
coefficient shaping, and sup-norm/coefficient-norm inequalities for
Rademacher chaos, all exact at finite level."""

from .errors import (
    ChaosError,
    CoefficientOutOfRange,
    CombinatorialBlowup,
    DegenerateInput,
    EmptyIndexSet,
    FormatError,
    GuardExceeded,
    IllConditionedSystem,
    InsufficientLevel,
    InvalidExponent,
    InvalidOrder,
    LevelMismatch,
    MalformedIndex,
    NotAChaosIndex,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .padic import (
    CellIndex,
    ChaosTerm,
    PaleyIndex,
    enumerate_Nd,
    from_digits,
    group_add,
    group_sub,
    paley_decode,
    paley_encode,
    to_digits,
)
from .transform import (
    Spectrum,
    StepFunction,
    character_matrix,
    character_value,
    convolve,
    convolve_functions,
    forward,
    inverse,
    naive_forward,
    rademacher_value,
)
from .measures import (
    MeasureRep,
    VandermondeSystem,
    is_self_conjugate,
    lemma1_measure,
    lemma1_pattern_residual,
    lemma1_system,
    lemma2_base_density,
    lemma2_measure,
    lemma2_pattern_residual,
    lemma2_polynomial,
    rho_y_measure,
    riesz_density,
    selector_alphabet,
    total_variation,
)
from .chaos import (
    ChaosPolynomial,
    convolve_with_measure,
    decomposition_residual,
    linf_norm,
    lq_norm,
    polynomial_spectrum,
    project_J,
    project_order,
    sidon_ratio,
    synthesize,
)
from .experiments import (
    CheckResult,
    ExperimentConfig,
    ExperimentReport,
    ExperimentRow,
    SuiteReport,
    growth_study,
    random_chaos,
    random_ensemble_study,
    trial_rng,
    verify_suite,
)

__version__ = "0.1.0"
