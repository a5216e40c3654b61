from fractions import Fraction

import numpy as np
import pytest

from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import FixedFormat, ResultFormat, encode
from src.marking.check_oracle import check_bits, check_oracle, to_raw, to_signed
from src.marking.marking_spec import MarkingSpec

VARIABLE = FixedFormat(total_bits=6, integer_bits=3)


@pytest.fixture
def fine_result(cubic_system):
    return ResultFormat.for_system(cubic_system, VARIABLE, fractional_bits=6)


def _spec(threshold_log2, result_format):
    return MarkingSpec.from_threshold_log2(threshold_log2, VARIABLE, result_format)


def test_small_residual_passes(fine_result):
    residual = encode(Fraction(-41, 64), fine_result)

    assert check_oracle(residual, _spec(0, fine_result)) == 0


def test_threshold_decides_borderline_residual(fine_result):
    residual = encode(Fraction(-79, 64), fine_result)

    assert check_oracle(residual, _spec(0, fine_result)) == 1
    assert check_oracle(residual, _spec(1, fine_result)) == 0


@pytest.mark.parametrize("threshold_log2", [-6, 0, 5])
def test_zero_residual_always_passes(fine_result, threshold_log2):
    assert check_oracle(encode(0, fine_result), _spec(threshold_log2, fine_result)) == 0


def test_check_is_on_magnitude(fine_result):
    spec = _spec(0, fine_result)

    assert check_oracle(encode(Fraction(63, 64), fine_result), spec) == 0
    assert check_oracle(encode(Fraction(-63, 64), fine_result), spec) == 0
    assert check_oracle(encode(1, fine_result), spec) == 1
    assert check_oracle(encode(-1, fine_result), spec) == 1


def test_lambda_and_threshold_describe_the_same_check(fine_result):
    by_lambda = MarkingSpec.from_lambda(fine_result.integer_bits - 1, VARIABLE, fine_result)

    assert by_lambda.threshold_log2 == 1
    assert by_lambda.tau == 2


def test_threshold_outside_the_register_is_rejected(fine_result):
    with pytest.raises(ConfigurationError, match="threshold_log2"):
        _spec(fine_result.integer_bits + 1, fine_result)


def test_vectorized_check_matches_scalar(fine_result):
    spec = _spec(0, fine_result)
    signed = np.array([-70, -64, -63, 0, 63, 64, 70])

    assert check_bits(signed, spec).tolist() == [1, 1, 0, 0, 0, 1, 1]


def test_twos_complement_conversion_round_trips():
    signed = np.array([-8, -1, 0, 1, 7])

    raw = to_raw(signed, 3)

    assert raw.tolist() == [8, 15, 0, 1, 7]
    assert to_signed(raw, 3).tolist() == signed.tolist()
