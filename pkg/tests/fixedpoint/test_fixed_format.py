from fractions import Fraction

import pytest

from src.errors import FixedPointOverflowError
from src.fixedpoint.fixed_format import MAX_TOTAL_BITS, FixedFormat, ResultFormat, decode, encode

VARIABLE = FixedFormat(total_bits=6, integer_bits=3)


def test_encode_on_grid_value():
    word = encode(Fraction(11, 4), VARIABLE)

    assert word.raw == 0b010110
    assert str(word) == "|010.110>"


def test_encode_truncates_toward_minus_infinity():
    word = encode(Fraction("3.2834"), VARIABLE)

    assert word.raw == 0b011010
    assert decode(word) == Fraction(13, 4)


def test_zero_encodes_to_zero():
    assert encode(0, VARIABLE).raw == 0
    assert encode(0, FixedFormat(9, 4, signed=True)).raw == 0


def test_signed_twos_complement():
    signed = FixedFormat(total_bits=6, integer_bits=3, signed=True)
    word = encode(Fraction(-13, 8), signed)

    assert word.raw == 2 ** 7 - 13
    assert decode(word) == Fraction(-13, 8)


@pytest.mark.parametrize("value", [8, Fraction(-1, 8)])
def test_out_of_range_values_overflow(value):
    with pytest.raises(FixedPointOverflowError):
        encode(value, VARIABLE)


def test_format_bounds_are_validated():
    with pytest.raises(ValueError):
        FixedFormat(total_bits=3, integer_bits=4)
    with pytest.raises(ValueError):
        FixedFormat(total_bits=MAX_TOTAL_BITS + 1, integer_bits=1)


def test_result_format_covers_the_search_box(cubic_system):
    result = ResultFormat.for_system(cubic_system, VARIABLE)

    assert result.signed
    assert result.fractional_bits == VARIABLE.fractional_bits
    # h*m + ceil(log2 t) + 1
    assert result.integer_bits >= 3 * 3 + 3 + 1
    corner = [VARIABLE.max_value] * 3
    for equation in cubic_system.equations:
        assert result.contains(equation.evaluate(corner))
        assert result.contains(equation.evaluate([0, 0, 0]))
