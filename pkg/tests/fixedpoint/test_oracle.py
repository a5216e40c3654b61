from fractions import Fraction

import numpy as np
import pytest

from src.fixedpoint.fixed_format import FixedFormat, ResultFormat, encode
from src.fixedpoint.oracle import OracleMode, eval_oracle, evaluate_on_grid
from src.polysys.parser import parse_system
from tests.helpers import CUBIC_CANDIDATE

VARIABLE = FixedFormat(total_bits=6, integer_bits=3)


def _words(point, variable_format):
    return [encode(x, variable_format) for x in point]


def test_exact_mode_residuals_of_the_candidate(cubic_system):
    result = ResultFormat.for_system(cubic_system, VARIABLE, fractional_bits=6)
    point = _words(CUBIC_CANDIDATE, VARIABLE)

    assert eval_oracle(cubic_system, 0, point, result).value == Fraction(-41, 64)
    assert eval_oracle(cubic_system, 1, point, result).value == Fraction(-79, 64)


def test_coarse_result_register_truncates_downward(cubic_system):
    result = ResultFormat.for_system(cubic_system, VARIABLE)

    word = eval_oracle(cubic_system, 0, _words(CUBIC_CANDIDATE, VARIABLE), result)

    assert word.value == Fraction(-3, 4)


def test_identity_oracle(identity_system):
    integer_format = FixedFormat(total_bits=3, integer_bits=3)
    result = ResultFormat.for_system(identity_system, integer_format)

    assert eval_oracle(identity_system, 0, [encode(5, integer_format)], result).value == 5


def test_truncating_mode_loses_intermediate_bits():
    system = parse_system("x0^3 + x1^3\nx0 - x1")
    variable = FixedFormat(total_bits=4, integer_bits=2)
    result = ResultFormat.for_system(system, variable)
    point = _words([Fraction(3, 4), Fraction(3, 4)], variable)

    exact = eval_oracle(system, 0, point, result, OracleMode.EXACT)
    truncated = eval_oracle(system, 0, point, result, OracleMode.TRUNCATING)

    assert exact.value == Fraction(3, 4)
    assert truncated.value == Fraction(1, 2)


def test_equation_index_is_checked(cubic_system):
    result = ResultFormat.for_system(cubic_system, VARIABLE)

    with pytest.raises(IndexError):
        eval_oracle(cubic_system, 3, _words(CUBIC_CANDIDATE, VARIABLE), result)


@pytest.mark.parametrize("threads", [1, 3])
def test_grid_evaluation_matches_exact_oracle(cubic_system, threads):
    result = ResultFormat.for_system(cubic_system, VARIABLE)
    rng = np.random.default_rng(7)
    raw = rng.integers(0, 2 ** 6, size=(200, 3))
    coordinates = [raw[:, j] for j in range(3)]

    for i, equation in enumerate(cubic_system.equations):
        grid = evaluate_on_grid(equation, coordinates, VARIABLE, result, threads=threads)
        for k in range(len(raw)):
            point = [encode(Fraction(int(r), 8), VARIABLE) for r in raw[k]]
            assert int(grid[k]) == eval_oracle(cubic_system, i, point, result).signed_raw
