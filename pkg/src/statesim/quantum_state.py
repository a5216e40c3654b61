"""
Dense state vectors over a RegisterLayout.

Operations are pure: each returns a new QuantumState and leaves its input
untouched. Register-local transforms act on the C-order tensor view
(one axis per register), following the reshape/tensordot pattern of small
state-vector simulators, so other registers are never touched.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import hadamard

from src.errors import EmptyBranchError
from src.statesim.register_layout import RegisterLayout

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
ZERO_PROBABILITY = 1e-15


class QuantumState:
    """A normalized amplitude vector over a register layout.

    The squared norm must lie within 1e-12 of 1.

    Attributes:
        layout: The register layout fixing qubit order.
        amplitudes: complex128 vector of length 2^total_qubits.
    """

    def __init__(self, layout: RegisterLayout, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.size != layout.dimension:
            raise ValueError(
                f"expected {layout.dimension} amplitudes for {layout.total_qubits} qubits, got {amplitudes.size}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state is not normalized (squared norm {norm!r})")
        self.layout = layout
        self.amplitudes = amplitudes

    @classmethod
    def basis(cls, layout: RegisterLayout, values: Optional[Dict[str, int]] = None) -> "QuantumState":
        """The computational basis state with the given raw register values (others |0>)."""
        amplitudes = np.zeros(layout.dimension, dtype=np.complex128)
        amplitudes[layout.flat_index(values or {})] = 1.0
        return cls(layout, amplitudes)

    def tensor(self) -> np.ndarray:
        """C-order view with one axis per register."""
        return self.amplitudes.reshape(self.layout.shape)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def kron(self, other: "QuantumState") -> "QuantumState":
        """Product state self ⊗ other; other's registers follow self's."""
        layout = RegisterLayout(self.layout.registers + other.layout.registers, self.layout.max_qubits)
        return QuantumState(layout, np.kron(self.amplitudes, other.amplitudes))

    def inner(self, other: "QuantumState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self) -> str:
        return f"QuantumState(layout={list(self.layout.registers)})"


def init_uniform(layout: RegisterLayout, uniform_registers: Sequence[str] = ()) -> QuantumState:
    """H on every qubit of the listed registers applied to |0...0>."""
    names = layout.check_names(uniform_registers)
    vectors = []
    for name, width in layout.registers:
        size = 2 ** width
        if name in names:
            vectors.append(np.full(size, 1.0 / np.sqrt(size), dtype=np.complex128))
        else:
            vector = np.zeros(size, dtype=np.complex128)
            vector[0] = 1.0
            vectors.append(vector)
    amplitudes = np.ones(1, dtype=np.complex128)
    for vector in vectors:
        amplitudes = np.kron(amplitudes, vector)
    return QuantumState(layout, amplitudes)


def prepare_phase_register(width: int) -> np.ndarray:
    """Phase-kickback register sum_a e^{2 pi i a/N0} |a> / sqrt(N0), N0 = 2^width.

    This is the forward QFT of |1>; for width 1 it is (|0> - |1>)/sqrt(2).
    """
    if width < 1:
        raise ValueError(f"phase register width must be >= 1, got {width}")
    one = np.zeros(2 ** width, dtype=np.complex128)
    one[1] = 1.0
    return np.fft.ifft(one, norm="ortho")


def apply_qft(state: QuantumState, register: str, inverse: bool = False) -> QuantumState:
    """QFT on one register: |j> -> sum_k e^{+2 pi i jk/M} |k> / sqrt(M).

    The inverse maps the ramp sum_y e^{2 pi i ky/M} |y> / sqrt(M) to |k>.
    """
    axis = state.layout.axis(register)
    transform = np.fft.fft if inverse else np.fft.ifft
    return QuantumState(state.layout, transform(state.tensor(), axis=axis, norm="ortho"))


def apply_register_unitary(state: QuantumState, register: str, matrix: np.ndarray) -> QuantumState:
    """Apply a 2^w x 2^w matrix to one register's axis."""
    axis = state.layout.axis(register)
    size = state.layout.shape[axis]
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (size, size):
        raise ValueError(f"register {register!r} needs a {size}x{size} matrix, got {matrix.shape}")
    moved = np.moveaxis(state.tensor(), axis, -1)
    updated = np.moveaxis(moved @ matrix.T, -1, axis)
    return QuantumState(state.layout, updated)


def apply_hadamard(state: QuantumState, registers: Sequence[str]) -> QuantumState:
    """H on every qubit of each listed register."""
    for name in state.layout.check_names(registers):
        size = 2 ** state.layout.width(name)
        state = apply_register_unitary(state, name, hadamard(size) / np.sqrt(size))
    return state


def project(state: QuantumState, register: str, value: int) -> Tuple[QuantumState, float]:
    """Post-measurement state for `register == value` and its Born probability.

    Raises:
        EmptyBranchError: If the outcome probability is below 1e-15.
    """
    axis = state.layout.axis(register)
    if not 0 <= value < state.layout.shape[axis]:
        raise ValueError(f"value {value} does not fit register {register!r}")
    kept = np.zeros_like(state.tensor())
    index = [slice(None)] * len(state.layout.shape)
    index[axis] = value
    kept[tuple(index)] = state.tensor()[tuple(index)]
    probability = float(np.vdot(kept, kept).real)
    if probability < ZERO_PROBABILITY:
        raise EmptyBranchError(f"outcome {value} on register {register!r} has probability {probability:.3e}")
    return QuantumState(state.layout, kept / np.sqrt(probability)), probability


def marginal_probabilities(state: QuantumState, registers: Sequence[str]) -> np.ndarray:
    """Joint Born distribution of the listed registers, one axis per register in the order given."""
    names = state.layout.check_names(registers)
    axes = [state.layout.axis(name) for name in names]
    others = tuple(a for a in range(len(state.layout.shape)) if a not in axes)
    marginal = np.sum(np.abs(state.tensor()) ** 2, axis=others)
    kept_in_order = sorted(axes)
    return np.transpose(marginal, [kept_in_order.index(a) for a in axes])


def measure(state: QuantumState, registers: Sequence[str], shots: int, seed: int) -> List[Tuple[int, ...]]:
    """Seeded samples of the listed registers' joint outcome, one tuple of raw values per shot."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    marginal = marginal_probabilities(state, registers)
    flat = marginal.reshape(-1)
    rng = np.random.default_rng(seed)
    draws = rng.choice(flat.size, size=shots, p=flat / flat.sum())
    coordinates = np.unravel_index(draws, marginal.shape)
    return [tuple(int(c[i]) for c in coordinates) for i in range(shots)]


def register_amplitudes(state: QuantumState, registers: Sequence[str]) -> QuantumState:
    """Reduced pure state of the listed registers when the rest is a single basis state.

    Raises:
        ValueError: If the remaining registers are not in a definite basis state.
    """
    names = state.layout.check_names(registers)
    rest = [name for name in state.layout.names if name not in names]
    if not rest:
        return state
    rest_probabilities = marginal_probabilities(state, rest).reshape(-1)
    support = np.flatnonzero(rest_probabilities > ZERO_PROBABILITY)
    if support.size != 1:
        raise ValueError(f"registers {rest} are not in a single basis state")
    rest_index = np.unravel_index(int(support[0]), [state.layout.shape[state.layout.axis(n)] for n in rest])
    order = [state.layout.axis(n) for n in names] + [state.layout.axis(n) for n in rest]
    arranged = np.transpose(state.tensor(), order)
    reduced = arranged[(Ellipsis,) + tuple(int(i) for i in rest_index)]
    layout = state.layout.sub_layout(names)
    reduced = reduced.reshape(-1)
    return QuantumState(layout, reduced / np.linalg.norm(reduced))
