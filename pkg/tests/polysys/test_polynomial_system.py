from fractions import Fraction

from src.polysys.parser import parse_system
from src.polysys.polynomial_system import (
    degree_stats,
    evaluate,
    format_rational,
    grad_F,
    objective_value,
    residuals,
)
from tests.helpers import CUBIC_CANDIDATE


def test_cubic_residuals_at_candidate(cubic_system):
    assert evaluate(cubic_system, 0, CUBIC_CANDIDATE) == Fraction(-41, 64)
    assert evaluate(cubic_system, 1, CUBIC_CANDIDATE) == Fraction(-79, 64)


def test_residual_at_origin_is_the_constant(cubic_system):
    assert evaluate(cubic_system, 0, (0, 0, 0)) == -35


def test_objective_is_sum_of_squares(cubic_system):
    values = residuals(cubic_system, CUBIC_CANDIDATE)

    assert objective_value(cubic_system, CUBIC_CANDIDATE) == sum(v * v for v in values)


def test_gradient_of_single_linear_equation(identity_system):
    assert grad_F(identity_system, [3]) == (6,)


def test_gradient_vanishes_at_exact_root(quadratic_system):
    assert grad_F(quadratic_system, [2]) == (0,)


def test_gradient_matches_central_differences(cubic_system):
    step = 1e-6
    point = [float(x) for x in CUBIC_CANDIDATE]

    def F(x):
        return sum(eq.evaluate_float(x) ** 2 for eq in cubic_system.equations)

    exact = grad_F(cubic_system, CUBIC_CANDIDATE)
    for j in range(3):
        up, down = list(point), list(point)
        up[j] += step
        down[j] -= step
        numeric = (F(up) - F(down)) / (2 * step)
        assert abs(numeric - float(exact[j])) <= 1e-4 * abs(float(exact[j]))


def test_degree_stats():
    assert degree_stats(parse_system("x0^3 + x1^2 - x1 + 2 x2 = 35\nx1\nx2")) == (3, 5)
    assert degree_stats(parse_system("x0^2*x1 + x1\nx0")) == (3, 2)


def test_format_rational():
    assert format_rational(Fraction(-41, 64)) == "-0.640625"
    assert format_rational(Fraction(7)) == "7"
    assert format_rational(Fraction(1, 3)) == "1/3"
