"""
Error hierarchy

Every failure the solver can surface derives from QRootError. Each class
carries the process exit code the command-line entry point maps it to, so the
exit-code contract lives next to the errors rather than in the CLI.
"""

from typing import Any, List, Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2
EXIT_CAP_EXCEEDED = 3
EXIT_NUMERICAL = 4

RANGE_CHANGE_HINT = (
    "no grid point passed every check oracle; change the range for the initial "
    "register (--int-bits / --bits) or loosen the threshold (--threshold-log2 / --lambda)"
)


class QRootError(Exception):
    """Base class for all solver errors."""
    exit_code = EXIT_USAGE


class ConfigurationError(QRootError):
    exit_code = EXIT_USAGE


class SystemParseError(QRootError):
    """Syntax error in a polynomial system file, with 1-based position."""
    exit_code = EXIT_USAGE

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class FixedPointOverflowError(QRootError):
    exit_code = EXIT_USAGE


class SimulationCapError(QRootError):
    exit_code = EXIT_CAP_EXCEEDED


class EmptyBranchError(QRootError):
    """Projection onto an outcome with (numerically) zero probability."""
    exit_code = EXIT_NO_SOLUTION

    def __init__(self, message: str = RANGE_CHANGE_HINT):
        super().__init__(message)


class SearchExhaustedError(QRootError):
    exit_code = EXIT_NO_SOLUTION


class ScratchContaminationError(QRootError):
    """Scratch registers did not return to |0> after uncomputation."""
    exit_code = EXIT_NUMERICAL


class SingularJacobianError(QRootError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, iterate: List[float], pivot: float):
        super().__init__(f"singular Jacobian at iterate {iterate} (pivot {pivot:.3e})")
        self.iterate = iterate
        self.pivot = pivot


class NewtonConvergenceError(QRootError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, message: str, trace: Optional[List[Any]] = None):
        super().__init__(message)
        self.trace = trace or []
