"""
The check oracle: one bit per equation saying whether the residual is small.

Negative residuals are stored in two's complement, where "leading digits
are zero" would fail for every negative value, so the test is made on the
magnitude: the bit is 0 iff |residual| < tau.
"""

import numpy as np

from src.fixedpoint.fixed_format import BitWord
from src.marking.marking_spec import MarkingSpec


def check_oracle(residual: BitWord, spec: MarkingSpec) -> int:
    """0 if |decode(residual)| < tau, else 1."""
    if residual.format.fractional_bits != spec.result_format.fractional_bits:
        raise ValueError(f"residual format {residual.format} does not match {spec.result_format}")
    return 0 if abs(residual.signed_raw) < spec.raw_limit else 1


def check_bits(signed_raw: np.ndarray, spec: MarkingSpec) -> np.ndarray:
    """Vectorized check_oracle over signed raw residuals; returns a uint8 array."""
    return (np.abs(signed_raw) >= spec.raw_limit).astype(np.uint8)


def _widened(values: np.ndarray, total_bits: int) -> np.ndarray:
    # 2^(total_bits + 1) must fit the array dtype
    values = np.asarray(values)
    if total_bits + 1 >= 63 and values.dtype != object:
        return values.astype(object)
    return values


def to_signed(raw: np.ndarray, total_bits: int) -> np.ndarray:
    """Interpret (total_bits + 1)-bit two's-complement raw words as signed integers."""
    raw = _widened(raw, total_bits)
    return np.where(raw >= 2 ** total_bits, raw - 2 ** (total_bits + 1), raw)


def to_raw(signed: np.ndarray, total_bits: int) -> np.ndarray:
    return _widened(signed, total_bits) % 2 ** (total_bits + 1)
