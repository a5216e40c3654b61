from fractions import Fraction

import numpy as np
import pytest

from src.errors import SimulationCapError
from src.gradient.gradient_config import GradientConfig
from src.gradient.impl.jordan_gradient import (
    JordanGradient,
    automatic_s,
    estimate_polynomial,
    jordan_gradient,
    pow2_above,
)
from src.polysys.parser import parse_polynomial
from src.polysys.polynomial_system import grad_F, objective
from tests.helpers import CUBIC_CANDIDATE, random_system


def test_linear_phase_decodes_exactly():
    estimate = estimate_polynomial(parse_polynomial("3 x0 - 2 x1 + 1", 2), [1, 1], grid_bits=5,
                                   window=Fraction(1, 4), s=16)

    assert estimate.gradient == (3, -2)
    assert estimate.outcomes == (6, -4)
    assert not estimate.wraparound
    for probability in estimate.modal_probabilities:
        assert probability == pytest.approx(1, abs=1e-10)


def test_square_at_one():
    estimate = estimate_polynomial(parse_polynomial("x0^2", 1), [1], grid_bits=6, window=Fraction(1, 4), s=16)

    assert abs(estimate.gradient[0] - 2) <= Fraction(1, 4)


def test_cubic_gradient_within_error_bound(cubic_system):
    config = GradientConfig(grid_bits=6, window=Fraction(1, 1024))

    estimate = jordan_gradient(cubic_system, CUBIC_CANDIDATE, config)

    assert not estimate.wraparound
    exact = grad_F(cubic_system, CUBIC_CANDIDATE)
    for approximate, analytic in zip(estimate.gradient, exact):
        assert abs(approximate - analytic) <= estimate.error_bound


def test_random_systems_within_error_bound():
    rng = np.random.default_rng(99)
    checked = 0
    for _ in range(20):
        n = int(rng.integers(1, 3))
        system = random_system(rng, n)
        point = [Fraction(int(rng.integers(0, 17)), 8) for _ in range(n)]

        estimate = estimate_polynomial(objective(system), point, grid_bits=5, window=Fraction(1, 64))

        if estimate.wraparound:
            continue
        checked += 1
        for approximate, analytic in zip(estimate.gradient, grad_F(system, point)):
            assert abs(approximate - analytic) <= estimate.error_bound
    assert checked > 0


def test_automatic_s_exceeds_twice_the_bound():
    assert pow2_above(Fraction(100)) == 128
    assert pow2_above(Fraction(128)) == 256
    assert automatic_s(Fraction(100)) == 256
    assert automatic_s(Fraction(0)) == 1


def test_grid_over_the_cap_is_rejected(cubic_system):
    with pytest.raises(SimulationCapError):
        jordan_gradient(cubic_system, CUBIC_CANDIDATE, GradientConfig(grid_bits=7))


def test_window_never_drops_below_the_working_grid(quadratic_system):
    config = GradientConfig(grid_bits=4, window=Fraction(1, 8))
    source = JordanGradient()

    source.gradient(quadratic_system, [Fraction(2)], config)

    floor = config.working_resolution * 2 ** config.grid_bits
    assert source.last_estimate.window >= floor
    source.reset()
    assert source.estimates == []
