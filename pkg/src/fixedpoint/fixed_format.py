"""
N-bit fixed-point register words.

A register of N qubits with m integer bits holds raw/2^(N-m). Variable
registers are unsigned and cover [0, 2^m); result registers are signed two's
complement over N+1 raw bits and cover [-2^m, 2^m). Encoding truncates toward
minus infinity onto the 2^-(N-m) grid.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Union

from src.errors import FixedPointOverflowError
from src.polysys.interval import Interval, bound_on_box
from src.polysys.polynomial_system import PolynomialSystem, degree_stats

logger = logging.getLogger(__name__)

MAX_TOTAL_BITS = 62

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class FixedFormat:
    """Register format: total_bits N, integer_bits m, optional sign bit."""
    total_bits: int
    integer_bits: int
    signed: bool = False

    def __post_init__(self):
        if not 0 < self.integer_bits <= self.total_bits <= MAX_TOTAL_BITS:
            raise ValueError(
                f"need 0 < integer_bits <= total_bits <= {MAX_TOTAL_BITS}, "
                f"got integer_bits={self.integer_bits}, total_bits={self.total_bits}"
            )

    @property
    def fractional_bits(self) -> int:
        return self.total_bits - self.integer_bits

    @property
    def width(self) -> int:
        """Raw bit width, including the sign bit for signed formats."""
        return self.total_bits + 1 if self.signed else self.total_bits

    @property
    def resolution(self) -> Fraction:
        return Fraction(1, 2 ** self.fractional_bits)

    @property
    def min_value(self) -> Fraction:
        return Fraction(-(2 ** self.integer_bits)) if self.signed else Fraction(0)

    @property
    def max_value(self) -> Fraction:
        """Largest representable value, (2^N - 1) / 2^(N-m)."""
        return Fraction(2 ** self.total_bits - 1, 2 ** self.fractional_bits)

    def grid_index(self, value: Scalar) -> int:
        """floor(value * 2^(N-m)) without range checks."""
        return floor(Fraction(value) * 2 ** self.fractional_bits)

    def contains(self, value: Scalar) -> bool:
        k = self.grid_index(value)
        low = -(2 ** self.total_bits) if self.signed else 0
        return low <= k < 2 ** self.total_bits

    def truncate(self, value: Scalar) -> Fraction:
        return Fraction(self.grid_index(value), 2 ** self.fractional_bits)


@dataclass(frozen=True)
class BitWord:
    """A raw register value together with its format."""
    raw: int
    format: FixedFormat

    def __post_init__(self):
        if not 0 <= self.raw < 2 ** self.format.width:
            raise ValueError(f"raw value {self.raw} does not fit in {self.format.width} bits")

    @property
    def signed_raw(self) -> int:
        if self.format.signed and self.raw >= 2 ** self.format.total_bits:
            return self.raw - 2 ** self.format.width
        return self.raw

    @property
    def value(self) -> Fraction:
        return Fraction(self.signed_raw, 2 ** self.format.fractional_bits)

    def bits(self) -> str:
        """Render as integer-dot-fraction digits, e.g. 010.110 for 2.75 in N=6, m=3."""
        digits = format(self.raw, f"0{self.format.width}b")
        split = self.format.width - self.format.fractional_bits
        if self.format.fractional_bits == 0:
            return digits
        return f"{digits[:split]}.{digits[split:]}"

    def __str__(self) -> str:
        return f"|{self.bits()}>"


def encode(value: Scalar, format: FixedFormat) -> BitWord:
    """Truncate value onto the format grid and return its register word.

    Raises:
        FixedPointOverflowError: If the truncated value is outside the format range.
    """
    if not format.contains(value):
        raise FixedPointOverflowError(
            f"{value} is outside [{format.min_value}, {format.max_value}] for {format}"
        )
    return BitWord(format.grid_index(value) % (2 ** format.width), format)


def decode(word: BitWord) -> Fraction:
    return word.value


def _ceil_log2(value: int) -> int:
    return (value - 1).bit_length() if value > 0 else 0


@dataclass(frozen=True)
class ResultFormat(FixedFormat):
    """Signed residual-register format sized so that no f_i overflows over the search box."""
    signed: bool = True

    @classmethod
    def for_system(cls, system: PolynomialSystem, variable_format: FixedFormat,
                   fractional_bits: Optional[int] = None) -> "ResultFormat":
        """Integer bits h*m + ceil(log2 t) + 1, widened if the interval bound needs more.

        Raises:
            FixedPointOverflowError: If the required width exceeds the 62-bit cap.
        """
        if fractional_bits is None:
            fractional_bits = variable_format.fractional_bits
        if fractional_bits < 0:
            raise ValueError(f"fractional_bits must be non-negative, got {fractional_bits}")
        h, t = degree_stats(system)
        integer_bits = max(1, h * variable_format.integer_bits + _ceil_log2(t) + 1)

        box = [Interval(0, variable_format.max_value)] * system.n
        bound = max(bound_on_box(eq, box).magnitude for eq in system.equations)
        # truncation can push a negative value one grid step below -bound
        needed = max(1, floor(bound + Fraction(1, 2 ** fractional_bits)).bit_length())
        if needed > integer_bits:
            logger.warning(
                f"Residual bound {float(bound):.6g} needs {needed} integer bits; "
                f"widening result register from {integer_bits}"
            )
            integer_bits = needed

        total_bits = integer_bits + fractional_bits
        if total_bits > MAX_TOTAL_BITS:
            raise FixedPointOverflowError(
                f"result register needs {total_bits} bits, above the {MAX_TOTAL_BITS}-bit cap"
            )
        return cls(total_bits=total_bits, integer_bits=integer_bits, signed=True)
