from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import FixedFormat
from src.statesim.quantum_state import QuantumState


@dataclass(frozen=True)
class MarkingSpec:
    """Check-oracle definition: a residual passes iff |residual| < tau = 2^threshold_log2.

    `lambda_` counts the leading magnitude integer bits that must be zero, so
    threshold_log2 = result integer bits - lambda_. The two constructors let
    callers pick whichever knob they think in.

    Attributes:
        threshold_log2: rho, with tau = 2^rho.
        variable_format: Format of every variable register.
        result_format: Signed format of the residual register.
    """
    threshold_log2: int
    variable_format: FixedFormat
    result_format: FixedFormat

    def __post_init__(self):
        low = -self.result_format.fractional_bits
        high = self.result_format.integer_bits
        if not low <= self.threshold_log2 <= high:
            raise ConfigurationError(
                f"threshold_log2 must lie in [{low}, {high}] for a result register with "
                f"{self.result_format.integer_bits} integer and {self.result_format.fractional_bits} "
                f"fractional bits, got {self.threshold_log2}"
            )

    @classmethod
    def from_threshold_log2(cls, threshold_log2: int, variable_format: FixedFormat,
                            result_format: FixedFormat) -> "MarkingSpec":
        return cls(threshold_log2, variable_format, result_format)

    @classmethod
    def from_lambda(cls, lambda_: int, variable_format: FixedFormat,
                    result_format: FixedFormat) -> "MarkingSpec":
        return cls(result_format.integer_bits - lambda_, variable_format, result_format)

    @property
    def lambda_(self) -> int:
        return self.result_format.integer_bits - self.threshold_log2

    @property
    def tau(self) -> Fraction:
        return Fraction(2) ** self.threshold_log2

    @property
    def raw_limit(self) -> int:
        """tau expressed in result-register grid units: |raw| < raw_limit passes."""
        return 2 ** (self.threshold_log2 + self.result_format.fractional_bits)


@dataclass
class MarkReport:
    """Outcome of one marking pass.

    Attributes:
        marked_count: M, the number of grid points passing every check.
        total_states: 2^(N*n).
        success_probability: Squared norm of the marked branch before renormalization.
        success_state: Marked branch over the variable registers (faithful mode only).
    """
    marked_count: int
    total_states: int
    success_probability: float
    success_state: Optional[QuantumState] = None

    @property
    def marked_fraction(self) -> Fraction:
        return Fraction(self.marked_count, self.total_states)
