import numpy as np
import pytest

from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import FixedFormat
from src.resources.estimator import (
    ResourceParams,
    amplification_rounds,
    estimate_operations,
    estimate_qubits,
    newton_cost,
    newton_crossover,
    search_cost,
)

CUBIC_PARAMS = ResourceParams(n=3, t=5, h=3, N=6, m=3, l=13, lambda_=3, c=32)


def test_cubic_operation_counts():
    estimate = estimate_operations(CUBIC_PARAMS)

    # ceil(2^1.5) * 3*5*3*36
    assert estimate.search_ops == 3 * 1620
    assert estimate.refine_ops == 368640
    assert estimate.total_ops == estimate.search_ops + estimate.refine_ops


def test_cubic_qubit_count():
    assert estimate_qubits(CUBIC_PARAMS) == 310


def test_cubic_newton_cost():
    assert newton_cost(CUBIC_PARAMS) == 103680
    assert estimate_operations(CUBIC_PARAMS).newton_ops_per_iter == 103680


def test_newton_overtakes_the_quantum_solve_at_six_variables():
    assert newton_crossover(CUBIC_PARAMS) == 6


def test_no_crossover_without_register_bits():
    params = ResourceParams(n=1, t=1, h=1, N=1, m=0, l=0, lambda_=0, c=1)

    assert newton_crossover(params) is None


def test_lambda_zero_means_one_round():
    params = ResourceParams(n=2, t=3, h=2, N=5, m=2, l=4, lambda_=0)

    assert search_cost(params) == 2 * 3 * 2 * 25


def test_doubling_register_width_quadruples_search():
    params = ResourceParams(n=2, t=3, h=2, N=5, m=2, l=4, lambda_=5)
    doubled = ResourceParams(n=2, t=3, h=2, N=10, m=2, l=4, lambda_=5)

    assert search_cost(doubled) == 4 * search_cost(params)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_degenerate_linear_qubits(m):
    params = ResourceParams(n=1, t=1, h=1, N=m, m=m, l=0, lambda_=0)

    assert estimate_qubits(params) == 7 * m + 2


def test_newton_cost_for_one_variable():
    params = ResourceParams(n=1, t=4, h=2, N=5, m=2, l=6, lambda_=1)

    assert newton_cost(params) == 2 * 4 * 64


def test_amplification_rounds_is_integer_ceiling():
    assert [amplification_rounds(k) for k in range(7)] == [1, 2, 2, 3, 4, 6, 8]


def test_random_parameters_are_linear_in_n_and_pure():
    rng = np.random.default_rng(5)
    for _ in range(50):
        t, h, N = (int(v) for v in rng.integers(1, 9, size=3))
        m = int(rng.integers(1, N + 1))
        l, lambda_, c = (int(v) for v in rng.integers(0, 20, size=3))
        params = ResourceParams(n=1, t=t, h=h, N=N, m=m, l=l, lambda_=lambda_, c=c + 1)
        base = search_cost(params)

        assert base == amplification_rounds(lambda_) * t * h * N ** 2
        for n in (2, 5):
            assert search_cost(params.with_n(n)) == n * base
        assert estimate_operations(params) == estimate_operations(params)
        bigger = ResourceParams(n=1, t=t + 1, h=h + 1, N=N + 1, m=m + 1, l=l + 1, lambda_=lambda_, c=c + 1)
        assert estimate_qubits(bigger) > estimate_qubits(params)


def test_params_from_cubic_system(cubic_system):
    params = ResourceParams.from_system(cubic_system, FixedFormat(6, 3), accuracy_bits=13, lambda_=3)

    assert params == CUBIC_PARAMS


def test_lambda_defaults_to_h_times_m(cubic_system):
    params = ResourceParams.from_system(cubic_system, FixedFormat(6, 3), accuracy_bits=13)

    assert params.lambda_ == 9


def test_invalid_params_are_rejected():
    with pytest.raises(ConfigurationError):
        ResourceParams(n=0, t=1, h=1, N=1, m=0, l=0, lambda_=0)
    with pytest.raises(ConfigurationError):
        ResourceParams(n=1, t=1, h=1, N=1, m=-1, l=0, lambda_=0)
