from fractions import Fraction

import pytest

from src.errors import ConfigurationError
from src.gradient.descent import automatic_alpha, descent_step, refine, snap
from src.gradient.gradient_config import GradientConfig
from src.gradient.impl.analytic_gradient import AnalyticGradient
from src.gradient.impl.jordan_gradient import JordanGradient
from src.polysys.polynomial_system import grad_F, objective_value
from tests.helpers import CUBIC_CANDIDATE, CUBIC_ROOT


def test_descent_step_arithmetic():
    assert descent_step([Fraction(1)], [Fraction(2)], Fraction(1, 10)) == (Fraction(4, 5),)


def test_zero_gradient_keeps_the_point():
    assert descent_step(CUBIC_CANDIDATE, [0, 0, 0], Fraction(1, 128)) == CUBIC_CANDIDATE


def test_descent_step_checks_lengths():
    with pytest.raises(ValueError):
        descent_step([1, 2], [1], Fraction(1))


def test_automatic_step_decreases_the_objective(cubic_system):
    gradient = grad_F(cubic_system, CUBIC_CANDIDATE)
    alpha = automatic_alpha(cubic_system, CUBIC_CANDIDATE)

    moved = descent_step(CUBIC_CANDIDATE, gradient, alpha)

    assert objective_value(cubic_system, moved) < objective_value(cubic_system, CUBIC_CANDIDATE)


def test_snap_rounds_half_up():
    assert snap(Fraction(3, 8), Fraction(1, 4)) == Fraction(1, 2)
    assert snap(Fraction(-3, 8), Fraction(1, 4)) == Fraction(-1, 4)
    assert snap(Fraction(1, 3), Fraction(1, 4)) == Fraction(1, 4)


def test_exact_root_converges_immediately(quadratic_system):
    solution, trace = refine(quadratic_system, [Fraction(2)], GradientConfig())

    assert solution == (Fraction(2),)
    assert trace.converged
    assert trace.stop_reason == "gradient"
    assert trace.iterations_used == 0
    assert len(trace.iterates) == 1


def test_analytic_refinement_reaches_the_root(cubic_system):
    config = GradientConfig()

    solution, trace = refine(cubic_system, CUBIC_CANDIDATE, config, AnalyticGradient())

    assert trace.converged
    assert len(trace.iterates) <= config.max_iters + 1
    for coordinate, expected in zip(solution, CUBIC_ROOT):
        assert abs(float(coordinate) - expected) <= 5e-4
    for coordinate in solution:
        assert (coordinate * 2 ** config.accuracy_bits).denominator == 1


def test_analytic_refinement_never_increases_the_objective(cubic_system):
    _, trace = refine(cubic_system, CUBIC_CANDIDATE, GradientConfig())

    values = [iterate.value for iterate in trace.iterates]
    assert not trace.alpha_halved
    assert all(later <= earlier for earlier, later in zip(values, values[1:]))


def test_refinement_is_deterministic(cubic_system):
    config = GradientConfig(max_iters=8)

    assert refine(cubic_system, CUBIC_CANDIDATE, config) == refine(cubic_system, CUBIC_CANDIDATE, config)


def test_oversized_step_trips_the_divergence_guard(quadratic_system):
    config = GradientConfig(alpha=Fraction(1), max_iters=20)

    _, trace = refine(quadratic_system, [Fraction(3)], config)

    assert trace.alpha_halved
    assert trace.stop_reason == "divergence"
    assert not trace.converged


@pytest.mark.slow
def test_simulated_gradient_refinement_matches_analytic(cubic_system):
    config = GradientConfig(grid_bits=5, max_iters=64)

    analytic, _ = refine(cubic_system, CUBIC_CANDIDATE, config, AnalyticGradient())
    simulated, trace = refine(cubic_system, CUBIC_CANDIDATE, config, JordanGradient())

    for a, b in zip(analytic, simulated):
        assert abs(float(a) - float(b)) <= 1e-3
    assert len(trace.iterates) <= config.max_iters + 1


def test_config_validation():
    with pytest.raises(ConfigurationError):
        GradientConfig(grid_bits=0)
    with pytest.raises(ConfigurationError):
        GradientConfig(alpha=Fraction(-1))
    config = GradientConfig(grid_bits=5, window=Fraction(1, 4))
    assert config.delta == Fraction(1, 128)
    assert config.phase_bits == 5
