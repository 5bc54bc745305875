"""Occupation-kernel dynamic mode decomposition for time-fractional systems."""

from ._core import (
    AccuracyError,
    ConditioningError,
    DivergenceError,
    DomainError,
    FormatError,
    FracdmdError,
    Model,
    ParameterError,
    Trajectory,
    caputo_derivative,
    decompose,
    gram_matrix,
    interaction_matrix,
    kernel_eval,
    mittag_leffler,
    rl_integral,
    run_validation,
    singular_weights,
    solve,
)

__all__ = [
    "AccuracyError",
    "ConditioningError",
    "DivergenceError",
    "DomainError",
    "FormatError",
    "FracdmdError",
    "Model",
    "ParameterError",
    "Trajectory",
    "caputo_derivative",
    "decompose",
    "gram_matrix",
    "interaction_matrix",
    "kernel_eval",
    "mittag_leffler",
    "rl_integral",
    "run_validation",
    "singular_weights",
    "solve",
]
