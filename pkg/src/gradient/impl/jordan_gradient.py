"""
Simulated phase-kickback gradient estimation.

Each variable gets a g-qubit offset register y_j. With y'_j = y_j - 2^(g-1)
and delta = L / 2^g, the kickback leaves the grid in

    sum_y exp(2 pi i (F(x* + delta y') - F(x*)) / (s delta)) |y_0> ... |y_{n-1}>

so to first order the phase of register j advances by 2 pi dF/dx_j / s per
step of y_j. An inverse QFT per register turns that ramp into a peak at
k_j = dF/dx_j * 2^g / s. The modal k_j, read as signed over
[-2^(g-1), 2^(g-1)), decodes to the estimate k_j * s / 2^g per unit x_j; the
representable range is therefore [-s/2, s/2).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.errors import SimulationCapError
from src.gradient.gradient_config import MAX_GRID_QUBITS, GradientConfig
from src.gradient.gradient_source import GradientSource
from src.polysys.interval import bound_near
from src.polysys.polynomial import Polynomial
from src.polysys.polynomial_system import PolynomialSystem, objective
from src.statesim.quantum_state import QuantumState, apply_qft, marginal_probabilities, measure
from src.statesim.register_layout import RegisterLayout

logger = logging.getLogger(__name__)

CHUNK_SIZE = 2 ** 16


def pow2_above(value: Fraction) -> Fraction:
    """Smallest power of two strictly greater than a positive value."""
    power = Fraction(1)
    while power <= value:
        power *= 2
    while power / 2 > value:
        power /= 2
    return power


def pow2_at_most(value: Fraction) -> Fraction:
    """Largest power of two not above a positive value."""
    power = pow2_above(value)
    return power / 2


def derivative_bound(polynomial: Polynomial, point: Sequence[Fraction], window: Fraction) -> Fraction:
    """Interval bound of max_j |dP/dx_j| over the box of half-width window/2."""
    return max(bound_near(polynomial.derivative(j), point, window / 2).magnitude for j in range(polynomial.n_vars))


def hessian_row_bound(polynomial: Polynomial, point: Sequence[Fraction], window: Fraction) -> Fraction:
    """Interval bound of the Hessian's infinity norm over the box of half-width window/2."""
    rows = []
    for j in range(polynomial.n_vars):
        first = polynomial.derivative(j)
        rows.append(sum(
            (bound_near(first.derivative(k), point, window / 2).magnitude for k in range(polynomial.n_vars)),
            Fraction(0),
        ))
    return max(rows)


def automatic_s(bound: Fraction) -> Fraction:
    return 2 * pow2_above(bound) if bound > 0 else Fraction(1)


@dataclass
class JordanEstimate:
    """Decoded QFT peaks of one gradient simulation.

    Attributes:
        gradient: Estimate of dF/dx_j per variable.
        outcomes: Signed modal outcomes k_j.
        modal_probabilities: Marginal probability of each k_j.
        s: Derivative bound used in the phase.
        window: L of the offset grid.
        grid_bits: g.
        derivative_bound: Interval bound of |dF/dx_j| over the window.
        hessian_bound: Interval bound of the Hessian's infinity norm over the window.
        wraparound: Set when a peak sits next to +-2^(g-1) or the derivative
            bound reaches s/2, either of which can alias the estimate.
    """
    gradient: Tuple[Fraction, ...]
    outcomes: Tuple[int, ...]
    modal_probabilities: Tuple[float, ...]
    s: Fraction
    window: Fraction
    grid_bits: int
    derivative_bound: Fraction
    hessian_bound: Fraction
    wraparound: bool

    @property
    def delta(self) -> Fraction:
        return self.window / 2 ** self.grid_bits

    @property
    def error_bound(self) -> Fraction:
        """Resolution term s/2^(g-1) plus the curvature spread over half the window."""
        return self.s / 2 ** (self.grid_bits - 1) + self.hessian_bound * self.window / 2


def _offset_columns(n: int, grid_bits: int, start: int, stop: int) -> List[np.ndarray]:
    index = np.arange(start, stop, dtype=np.int64)
    mask = 2 ** grid_bits - 1
    half = 2 ** (grid_bits - 1)
    return [(((index >> (grid_bits * (n - 1 - j))) & mask) - half).astype(np.float64) for j in range(n)]


def _phase_cycles(polynomial: Polynomial, n: int, grid_bits: int, scale: Fraction, threads: int) -> np.ndarray:
    """polynomial(u) * scale in cycles for every offset u on the grid, constant term dropped."""
    program = [
        (float(term.coefficient * scale), term.exponents)
        for term in polynomial.terms if term.degree > 0
    ]
    size = 2 ** (grid_bits * n)

    def run(start: int) -> np.ndarray:
        stop = min(start + CHUNK_SIZE, size)
        columns = _offset_columns(n, grid_bits, start, stop)
        total = np.zeros(stop - start)
        for coefficient, exponents in program:
            product = np.full(stop - start, coefficient)
            for column, e in zip(columns, exponents):
                if e:
                    product *= column ** e
            total += product
        return total

    starts = list(range(0, size, CHUNK_SIZE))
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(start) for start in starts]
    return np.concatenate(parts)


def estimate_polynomial(polynomial: Polynomial, point: Sequence[Fraction], grid_bits: int, window: Fraction,
                        s: Optional[Fraction] = None, threads: int = 1, sample_shots: int = 0,
                        seed: int = 0) -> JordanEstimate:
    """Simulate the gradient circuit for an arbitrary objective polynomial.

    Raises:
        SimulationCapError: If grid_bits * n exceeds the 20-qubit gradient cap.
    """
    n = polynomial.n_vars
    if grid_bits * n > MAX_GRID_QUBITS:
        raise SimulationCapError(
            f"gradient grid needs {grid_bits * n} qubits, above the cap of {MAX_GRID_QUBITS}"
        )
    point = [Fraction(x) for x in point]
    window = Fraction(window)
    delta = window / 2 ** grid_bits

    bound = derivative_bound(polynomial, point, window)
    curvature = hessian_row_bound(polynomial, point, window)
    if s is None:
        s = automatic_s(bound)
    s = Fraction(s)

    shifted = polynomial.shifted(point, delta)
    cycles = _phase_cycles(shifted, n, grid_bits, 1 / (s * delta), threads)
    size = 2 ** (grid_bits * n)
    names = [f"y{j}" for j in range(n)]
    layout = RegisterLayout(tuple((name, grid_bits) for name in names))
    state = QuantumState(layout, np.exp(2j * pi * cycles) / np.sqrt(size))
    for name in names:
        state = apply_qft(state, name, inverse=True)

    half = 2 ** (grid_bits - 1)
    outcomes, probabilities = [], []
    for name in names:
        marginal = marginal_probabilities(state, [name])
        k = int(np.argmax(marginal))
        probabilities.append(float(marginal[k]))
        outcomes.append(k - 2 ** grid_bits if k >= half else k)

    if sample_shots > 0:
        samples = measure(state, names, sample_shots, seed)
        logger.debug(f"Gradient register samples: {samples}")

    wraparound = bound >= s / 2 or any(abs(k) >= half - 1 for k in outcomes)
    if wraparound:
        logger.warning(
            f"Possible gradient wraparound: outcomes {outcomes}, derivative bound "
            f"{float(bound):.6g} against s/2 = {float(s / 2):.6g}"
        )
    gradient = tuple(Fraction(k) * s / 2 ** grid_bits for k in outcomes)
    return JordanEstimate(
        gradient=gradient,
        outcomes=tuple(outcomes),
        modal_probabilities=tuple(probabilities),
        s=s,
        window=window,
        grid_bits=grid_bits,
        derivative_bound=bound,
        hessian_bound=curvature,
        wraparound=wraparound,
    )


def jordan_gradient(system: PolynomialSystem, x_star: Sequence[Fraction], config: GradientConfig,
                    window: Optional[Fraction] = None, threads: int = 1) -> JordanEstimate:
    """Gradient estimate of F = sum_i f_i^2 at x_star."""
    return estimate_polynomial(
        objective(system),
        x_star,
        config.grid_bits,
        window if window is not None else config.window,
        config.s,
        threads=threads,
    )


class JordanGradient(GradientSource):
    """Gradient source backed by the simulated gradient circuit.

    With an automatic derivative bound the window follows the gradient: it is
    the largest power of two not above 2 * G / (H * 2^g), where G is the
    previous estimate's largest component (the interval gradient bound on the
    first call) and H the interval Hessian bound, capped at the configured
    window and floored so that delta stays at or above the working grid.
    This keeps the curvature spread of the peaks below one grid bin.

    Attributes:
        threads (int): Workers for the grid phase evaluation.
        last_estimate (Optional[JordanEstimate]): Estimate from the latest call.
    """

    def __init__(self, threads: int = 1, sample_shots: int = 0, seed: int = 0):
        self.threads = threads
        self.sample_shots = sample_shots
        self.seed = seed
        self.last_estimate: Optional[JordanEstimate] = None
        self.estimates: List[JordanEstimate] = []

    def reset(self) -> None:
        self.last_estimate = None
        self.estimates = []

    def _window(self, F: Polynomial, point: Sequence[Fraction], config: GradientConfig) -> Fraction:
        if config.s is not None:
            return config.window
        if self.last_estimate is None:
            scale = derivative_bound(F, point, config.window)
        else:
            scale = max(abs(g) for g in self.last_estimate.gradient)
        floor = config.working_resolution * 2 ** config.grid_bits
        curvature = hessian_row_bound(F, point, config.window)
        if scale == 0 or curvature == 0:
            return config.window if curvature == 0 else floor
        target = 2 * scale / (curvature * 2 ** config.grid_bits)
        return max(floor, min(config.window, pow2_at_most(target)))

    def gradient(self, system: PolynomialSystem, point: Sequence[Fraction],
                 config: GradientConfig) -> Tuple[Fraction, ...]:
        F = objective(system)
        window = self._window(F, point, config)
        estimate = estimate_polynomial(
            F, point, config.grid_bits, window, config.s,
            threads=self.threads, sample_shots=self.sample_shots,
            seed=self.seed + len(self.estimates),
        )
        logger.debug(
            f"Jordan gradient at window {window}: outcomes {estimate.outcomes}, s={estimate.s}"
        )
        self.last_estimate = estimate
        self.estimates.append(estimate)
        return estimate.gradient
