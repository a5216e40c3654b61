
import numpy as np
import pytest

from src.errors import EmptyBranchError
from src.marking.impl.collapsed_marker import CollapsedMarker, mark_collapsed
from src.marking.impl.faithful_marker import (
    CHECK_REGISTER,
    RESULT_REGISTER,
    FaithfulMarker,
    mark_faithful,
)
from src.marking.marked_set import decode_index, grid_coordinates, marked_mask, marked_set, variable_layout
from src.statesim.quantum_state import QuantumState, init_uniform, marginal_probabilities
from tests.helpers import CUBIC_CANDIDATE, CUBIC_NON_SOLUTION, marking_spec_for, random_system, raw_point


def _uniform(system, spec):
    layout = variable_layout(system.n, spec.variable_format)
    return init_uniform(layout, layout.names)


def test_collapsed_marking_of_single_root(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 0)

    branch, report = mark_collapsed(_uniform(quadratic_system, spec), quadratic_system, spec)

    assert report.marked_count == 1
    assert report.success_probability == pytest.approx(1 / 8)
    assert abs(branch.amplitudes[2]) == pytest.approx(1)


def test_marking_a_marked_state_is_idempotent(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 2)
    layout = variable_layout(1, spec.variable_format)
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[[1, 2]] = [0.6, 0.8j]
    state = QuantumState(layout, amplitudes)

    branch, report = mark_collapsed(state, quadratic_system, spec)

    assert report.success_probability == pytest.approx(1)
    np.testing.assert_allclose(branch.amplitudes, state.amplitudes, atol=1e-12)


def test_cubic_success_probability_is_marked_fraction(cubic_system, cubic_spec):
    _, report = CollapsedMarker().mark(_uniform(cubic_system, cubic_spec), cubic_system, cubic_spec)

    assert report.total_states == 2 ** 18
    assert report.marked_count == len(marked_set(cubic_system, cubic_spec))
    assert report.success_probability == pytest.approx(report.marked_count / 2 ** 18, rel=1e-9)


def test_empty_marked_set_raises(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 1, -1)

    with pytest.raises(EmptyBranchError):
        mark_collapsed(_uniform(quadratic_system, spec), quadratic_system, spec)


def test_non_solution_controls_end_in_all_ones(cubic_system, cubic_spec):
    marker = FaithfulMarker()
    raw = raw_point(CUBIC_NON_SOLUTION, cubic_spec.variable_format)

    controls = marker.control_amplitudes(cubic_system, cubic_spec, [raw])[0]

    assert abs(controls[0b111]) == pytest.approx(1)


def test_failing_checks_kick_back_a_sign_onto_their_controls(cubic_system, cubic_spec):
    marker = FaithfulMarker()
    raw = raw_point(CUBIC_NON_SOLUTION, cubic_spec.variable_format)

    controls = marker.control_amplitudes(cubic_system, cubic_spec, [raw], hadamard_controls=False)[0]

    signs = np.array([(-1) ** bin(c).count("1") for c in range(8)])
    np.testing.assert_allclose(controls, signs / np.sqrt(8), atol=1e-12)


def test_candidate_controls_end_in_all_zeros(cubic_system, cubic_spec):
    marker = FaithfulMarker()
    raw = raw_point(CUBIC_CANDIDATE, cubic_spec.variable_format)

    controls = marker.control_amplitudes(cubic_system, cubic_spec, [raw])[0]

    assert abs(controls[0]) == pytest.approx(1)


def test_identity_system_controls(identity_system):
    spec = marking_spec_for(identity_system, 3, 3, 0)
    marker = FaithfulMarker()

    controls = marker.control_amplitudes(identity_system, spec, [(x,) for x in range(8)])

    assert abs(controls[0, 0]) == pytest.approx(1)
    np.testing.assert_allclose(np.abs(controls[1:, 1]), np.ones(7), atol=1e-12)


def test_dense_operator_restores_scratch_registers(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 0)
    marker = FaithfulMarker(dense_qubits=26)
    assert marker.uses_dense_path(quadratic_system, spec)

    full = marker.apply_operator(_uniform(quadratic_system, spec), quadratic_system, spec)

    scratch = marginal_probabilities(full, [RESULT_REGISTER, CHECK_REGISTER])
    assert scratch[0, 0] == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("dense_qubits", [0, 26])
def test_faithful_single_root(quadratic_system, dense_qubits):
    spec = marking_spec_for(quadratic_system, 3, 3, 0)

    branch, report = mark_faithful(_uniform(quadratic_system, spec), quadratic_system, spec,
                                   dense_qubits=dense_qubits)

    assert report.marked_count == 1
    assert report.success_probability == pytest.approx(1 / 8)
    assert report.success_state is branch
    assert abs(branch.amplitudes[2]) == pytest.approx(1)


def test_faithful_and_collapsed_markers_agree_on_random_systems():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(1, 3))
        bits = int(rng.integers(1, 5))
        int_bits = int(rng.integers(1, bits + 1))
        system = random_system(rng, n)
        widest = marking_spec_for(system, bits, int_bits, 0)
        low = -widest.result_format.fractional_bits
        threshold = int(rng.integers(low, widest.result_format.integer_bits + 1))
        spec = marking_spec_for(system, bits, int_bits, threshold)

        layout = variable_layout(n, spec.variable_format)
        amplitudes = rng.normal(size=layout.dimension) + 1j * rng.normal(size=layout.dimension)
        state = QuantumState(layout, amplitudes / np.linalg.norm(amplitudes))

        try:
            expected, expected_report = mark_collapsed(state, system, spec)
        except EmptyBranchError:
            with pytest.raises(EmptyBranchError):
                mark_faithful(state, system, spec)
            continue
        actual, report = mark_faithful(state, system, spec)

        assert report.marked_count == expected_report.marked_count
        assert report.success_probability == pytest.approx(expected_report.success_probability, abs=1e-10)
        np.testing.assert_allclose(actual.amplitudes, expected.amplitudes, atol=1e-10)


def _random_spec(rng, system):
    bits = int(rng.integers(1, 5))
    int_bits = int(rng.integers(1, bits + 1))
    widest = marking_spec_for(system, bits, int_bits, 0)
    low = -widest.result_format.fractional_bits
    threshold = int(rng.integers(low, widest.result_format.integer_bits + 1))
    return marking_spec_for(system, bits, int_bits, threshold)


def test_control_register_selects_exactly_on_random_systems():
    rng = np.random.default_rng(77)
    marker = FaithfulMarker()
    for _ in range(200):
        n = int(rng.integers(1, 3))
        system = random_system(rng, n)
        spec = _random_spec(rng, system)
        points = np.stack(grid_coordinates(n, spec.variable_format), axis=1)

        zero_controls = marker.control_amplitudes(system, spec, points)[:, 0]

        deviation = np.minimum(np.abs(zero_controls), np.abs(zero_controls - 1))
        assert deviation.max() < 1e-12
        np.testing.assert_array_equal(np.abs(zero_controls) > 0.5, marked_mask(system, spec))


def test_collapsed_support_is_the_marked_set_on_random_systems():
    rng = np.random.default_rng(78)
    for _ in range(200):
        n = int(rng.integers(1, 3))
        system = random_system(rng, n)
        spec = _random_spec(rng, system)
        expected = marked_set(system, spec)

        if not expected:
            with pytest.raises(EmptyBranchError):
                mark_collapsed(_uniform(system, spec), system, spec)
            continue
        branch, report = mark_collapsed(_uniform(system, spec), system, spec)

        support = [decode_index(int(k), n, spec.variable_format)
                   for k in np.flatnonzero(branch.probabilities() > 0)]
        assert support == expected
        assert report.marked_count == len(expected)
