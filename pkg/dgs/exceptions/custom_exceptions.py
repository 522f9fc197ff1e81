"""
Custom exception classes for the dgs toolkit.

Every exception carries an error code, a user-facing message and the process
exit code the CLI returns for it: 1 for input/validation problems, 2 for
numerical or guard failures.
"""
from typing import Any, Dict, Optional

EXIT_INPUT_ERROR = 1
EXIT_NUMERICAL_ERROR = 2


class BaseCustomException(Exception):
    """Base class for all custom exceptions."""

    def __init__(
        self,
        exit_code: int,
        detail: str,
        error_code: str,
        user_message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail
        self.error_code = error_code
        self.user_message = user_message or detail
        self.details = details or {}


class InputError(BaseCustomException):
    """Raised when user input (files, flags, functions) is invalid."""

    def __init__(
        self,
        detail: str = "Invalid input",
        error_code: str = "INP_001",
        user_message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            exit_code=EXIT_INPUT_ERROR,
            detail=detail,
            error_code=error_code,
            user_message=user_message,
            details=details
        )


class NumericalError(BaseCustomException):
    """Raised when a numerical procedure or a size guard fails."""

    def __init__(
        self,
        detail: str = "Numerical failure",
        error_code: str = "NUM_001",
        user_message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            exit_code=EXIT_NUMERICAL_ERROR,
            detail=detail,
            error_code=error_code,
            user_message=user_message,
            details=details
        )


class GraphParseError(InputError):
    """Raised when a graph file line cannot be parsed."""

    def __init__(self, detail: str = "Graph file could not be parsed", line: Optional[int] = None):
        message = f"line {line}: {detail}" if line is not None else detail
        super().__init__(
            detail=message,
            error_code="PARSE_001",
            user_message="Check the graph file format ('v <label> <m> <c>', 'e <a> <b> <weight>')",
            details={"line": line}
        )
        self.line = line


class GraphValidationError(InputError):
    """Raised when graph data violates the weighted graph axioms."""

    def __init__(self, detail: str = "Graph data is invalid", line: Optional[int] = None):
        message = f"line {line}: {detail}" if line is not None else detail
        super().__init__(
            detail=message,
            error_code="GRAPH_001",
            user_message="Weights must be symmetric and positive, m > 0, c >= 0, no self-loops",
            details={"line": line}
        )
        self.line = line


class InvalidVertexError(InputError):
    """Raised when a vertex index is out of range."""

    def __init__(self, vertex: Any, vertex_count: int):
        super().__init__(
            detail=f"invalid vertex {vertex!r} (graph has {vertex_count} vertices)",
            error_code="VTX_001",
            user_message="Vertex indices run from 0 to vertex_count - 1",
            details={"vertex": vertex, "vertex_count": vertex_count}
        )


class InvalidFunctionError(InputError):
    """Raised when a function does not match its graph or has non-finite entries."""

    def __init__(self, detail: str = "Function is not a valid graph function"):
        super().__init__(detail=detail, error_code="FUN_001")


class FixtureSpecError(InputError):
    """Raised when a fixture, window or solution specification cannot be understood."""

    def __init__(self, detail: str = "Invalid fixture specification"):
        super().__init__(
            detail=detail,
            error_code="FIX_001",
            user_message="Fixtures look like path:5, cycle:8, star:3, z:60 or random:30:0.2"
        )


class PreconditionError(InputError):
    """Raised when an operation's precondition is not met by its arguments."""

    def __init__(
        self,
        detail: str = "Precondition failed",
        error_code: str = "PRE_001",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(detail=detail, error_code=error_code, details=details)


class NotASolutionError(PreconditionError):
    """Raised when a function is required to solve (L - E)w = 0 but does not."""

    def __init__(self, residual: float, energy: float, detail: Optional[str] = None):
        super().__init__(
            detail=detail or f"function is not a solution at E={energy:g} (max scaled residual {residual:.3e})",
            error_code="PRE_002",
            details={"residual": residual, "energy": energy}
        )
        self.residual = residual


class NotASupersolutionError(PreconditionError):
    """Raised when a function is required to satisfy (L - E)w >= 0 but does not."""

    def __init__(self, min_slack: float, energy: float):
        super().__init__(
            detail=f"function is not a super-solution at E={energy:g} (min slack {min_slack:.3e})",
            error_code="PRE_003",
            details={"min_slack": min_slack, "energy": energy}
        )
        self.min_slack = min_slack


class NegativeFunctionError(PreconditionError):
    """Raised when a non-negative function is required."""

    def __init__(self, vertex: int, value: float):
        super().__init__(
            detail=f"function is negative at vertex {vertex} ({value:.3e})",
            error_code="PRE_004",
            details={"vertex": vertex, "value": value}
        )


class ZeroFunctionError(PreconditionError):
    """Raised when a non-trivial function is required."""

    def __init__(self, detail: str = "function vanishes identically"):
        super().__init__(detail=detail, error_code="PRE_005")


class NotAdjacentError(PreconditionError):
    """Raised when an edge is required between two vertices."""

    def __init__(self, x: int, y: int):
        super().__init__(
            detail=f"vertices {x} and {y} are not adjacent",
            error_code="PRE_006",
            details={"x": x, "y": y}
        )


class WeightedGraphError(PreconditionError):
    """Raised when an unweighted graph (b in {0,1}, m = 1, c = 0) is required."""

    def __init__(self, detail: str = "operation requires b in {0,1}, m = 1 and c = 0"):
        super().__init__(detail=detail, error_code="PRE_007")


class DisconnectedGraphError(NumericalError):
    """Raised when a connected graph or window is required."""

    def __init__(self, detail: str = "graph is not connected", components: Optional[int] = None):
        super().__init__(
            detail=detail,
            error_code="CONN_001",
            user_message="The operation needs a connected graph (or connected window)",
            details={"components": components}
        )


class ConvergenceError(NumericalError):
    """Raised when an iterative method fails to reach its tolerance."""

    def __init__(self, detail: str = "iteration did not converge", iterations: Optional[int] = None,
                 residual: Optional[float] = None):
        super().__init__(
            detail=detail,
            error_code="CONV_001",
            details={"iterations": iterations, "residual": residual}
        )


class EnergyTooHighError(NumericalError):
    """Raised when an energy lies at or above the admissible threshold."""

    def __init__(self, energy: float, threshold: float, detail: Optional[str] = None):
        super().__init__(
            detail=detail or f"energy {energy:g} is not below the admissible threshold {threshold:.12g}",
            error_code="ENERGY_001",
            user_message="Choose an energy strictly below the ground state energy",
            details={"energy": energy, "threshold": threshold}
        )
        self.energy = energy
        self.threshold = threshold


class SizeGuardError(NumericalError):
    """Raised when an exact algorithm would exceed its documented size guard."""

    def __init__(self, size: int, limit: int, what: str = "window"):
        super().__init__(
            detail=f"{what} of size {size} exceeds the exact-enumeration limit {limit}",
            error_code="GUARD_001",
            details={"size": size, "limit": limit}
        )
