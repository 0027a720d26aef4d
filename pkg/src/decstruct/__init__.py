"""Ordinal decision-structure model of risky choice."""

from .classification import cancel_and_reduce, classify, superiority
from .compensatory import (
    corollary_check,
    derive_coefficients,
    expected_utility,
    expected_value,
    prospect_value,
)
from .core import (
    DecisionMatrix,
    Dimension,
    Gamble,
    Label,
    Option,
    Outcome,
    Pair,
    ProbCategory,
    ReductionTrace,
    StructureClass,
    SubstitutionScheme,
    Token,
    ValCategory,
    rank,
)
from .phenomena import allais_predict, ellsberg_predict, pi_behavior
from .reduction import (
    ReductionPolicy,
    TimeParams,
    admissible_steps,
    choice_distribution,
    deliberation_time,
    reduction_tree,
    sample_path,
)
from .substitution import (
    build_matrices,
    product,
    substitute_probability,
    substitute_uncertain_probability,
    substitute_value,
)

__version__ = "0.1.0"
