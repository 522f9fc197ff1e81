"""
Custom exceptions module for the dgs toolkit.
"""

from .custom_exceptions import (
    EXIT_INPUT_ERROR,
    EXIT_NUMERICAL_ERROR,
    BaseCustomException,
    InputError,
    NumericalError,
    GraphParseError,
    GraphValidationError,
    InvalidVertexError,
    InvalidFunctionError,
    FixtureSpecError,
    PreconditionError,
    NotASolutionError,
    NotASupersolutionError,
    NegativeFunctionError,
    ZeroFunctionError,
    NotAdjacentError,
    WeightedGraphError,
    DisconnectedGraphError,
    ConvergenceError,
    EnergyTooHighError,
    SizeGuardError
)

__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_NUMERICAL_ERROR",
    "BaseCustomException",
    "InputError",
    "NumericalError",
    "GraphParseError",
    "GraphValidationError",
    "InvalidVertexError",
    "InvalidFunctionError",
    "FixtureSpecError",
    "PreconditionError",
    "NotASolutionError",
    "NotASupersolutionError",
    "NegativeFunctionError",
    "ZeroFunctionError",
    "NotAdjacentError",
    "WeightedGraphError",
    "DisconnectedGraphError",
    "ConvergenceError",
    "EnergyTooHighError",
    "SizeGuardError"
]
