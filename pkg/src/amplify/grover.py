"""
Amplitude amplification with the reflections U0 and U1.

U0 = I - 2 P_marked flips the sign of every marked basis state and
U1 = I - 2 |Psi><Psi| reflects about the reference state Psi (the state the
search prepared before marking, uniform over the grid). One step applies U0
then U1. Starting from Psi, the marked probability after k steps is
sin^2((2k + 1) theta) with sin(theta) = sqrt(M/T).
"""

import logging
from math import asin, floor, pi, sin, sqrt
from typing import Callable, List, Tuple, Union

import numpy as np

from src.statesim.quantum_state import QuantumState

logger = logging.getLogger(__name__)

SPAN_TOLERANCE = 1e-12

MarkedIndicator = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


def _mask(marked_indicator: MarkedIndicator, size: int) -> np.ndarray:
    if callable(marked_indicator):
        return np.asarray(marked_indicator(np.arange(size)), dtype=bool)
    mask = np.asarray(marked_indicator, dtype=bool)
    if mask.shape != (size,):
        raise ValueError(f"marked indicator has shape {mask.shape}, expected ({size},)")
    return mask


def grover_step(state: QuantumState, marked_indicator: MarkedIndicator,
                initial_state: QuantumState) -> QuantumState:
    """U1 U0 applied once.

    Args:
        state: Current state on the variable registers.
        marked_indicator: Boolean mask over flat basis indices, or a predicate
            taking the index array.
        initial_state: The reflection reference Psi.
    """
    mask = _mask(marked_indicator, state.amplitudes.size)
    flipped = np.where(mask, -state.amplitudes, state.amplitudes)
    reference = initial_state.amplitudes
    reflected = flipped - 2 * np.vdot(reference, flipped) * reference
    return QuantumState(state.layout, reflected)


def marked_probability(state: QuantumState, mask: np.ndarray) -> float:
    return float(np.sum(np.abs(state.amplitudes[mask]) ** 2))


def optimal_iterations(marked_count: int, total_states: int) -> int:
    """floor(pi / (4 asin(sqrt(M/T)))), at least 0.

    Raises:
        ValueError: If marked_count is 0 or outside [1, total_states].
    """
    if marked_count == 0:
        raise ValueError("no marked states: amplification has nothing to amplify")
    if not 1 <= marked_count <= total_states:
        raise ValueError(f"need 1 <= marked_count <= total_states, got {marked_count} of {total_states}")
    theta = asin(sqrt(marked_count / total_states))
    return max(0, floor(pi / (4 * theta)))


def closed_form_probability(steps: int, marked_count: int, total_states: int) -> float:
    theta = asin(sqrt(marked_count / total_states))
    return sin((2 * steps + 1) * theta) ** 2


def sqrt_lambda_iterations(lambda_: int) -> int:
    return round(sqrt(2 ** lambda_))


def _two_level_basis(mask: np.ndarray, reference: np.ndarray):
    good = np.where(mask, reference, 0)
    bad = np.where(mask, 0, reference)
    good_norm, bad_norm = np.linalg.norm(good), np.linalg.norm(bad)
    if good_norm < SPAN_TOLERANCE or bad_norm < SPAN_TOLERANCE:
        return None
    return good / good_norm, bad / bad_norm


def amplify(state: QuantumState, mask: np.ndarray, initial_state: QuantumState, steps: int,
            two_level: bool = True) -> Tuple[QuantumState, List[float]]:
    """Apply `steps` Grover steps; returns the final state and the marked-probability trace.

    When the state lies in span{good, bad} (the reference split into its marked
    and unmarked parts), the steps run as a 2x2 rotation on the coefficients;
    otherwise every step runs on the full vector.
    """
    mask = _mask(mask, state.amplitudes.size)
    trace = [marked_probability(state, mask)]
    basis = _two_level_basis(mask, initial_state.amplitudes) if two_level else None
    if basis is not None:
        good, bad = basis
        coefficients = np.array([np.vdot(good, state.amplitudes), np.vdot(bad, state.amplitudes)])
        in_span = coefficients[0] * good + coefficients[1] * bad
        if np.linalg.norm(state.amplitudes - in_span) < SPAN_TOLERANCE:
            reference = np.array([np.vdot(good, initial_state.amplitudes), np.vdot(bad, initial_state.amplitudes)])
            step = (np.eye(2) - 2 * np.outer(reference, np.conj(reference))) @ np.diag([-1.0, 1.0])
            for _ in range(steps):
                coefficients = step @ coefficients
                trace.append(float(abs(coefficients[0]) ** 2))
            amplitudes = coefficients[0] * good + coefficients[1] * bad
            return QuantumState(state.layout, amplitudes / np.linalg.norm(amplitudes)), trace
        logger.debug("State leaves the two-level span; running full-vector Grover steps")

    for _ in range(steps):
        state = grover_step(state, mask, initial_state)
        trace.append(marked_probability(state, mask))
    return state, trace
