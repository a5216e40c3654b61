"""
Circuit-faithful marking.

For each equation i the marking operator

    U_{f_i}^-1 U_{fbar_i}^-1 (M_0 (x) |0><0| + M_1 (x) |1><1|)_{eta_i} U_{fbar_i} U_{f_i}

is applied with the residual register, the check bit, the kickback ancilla
(|0> - |1>)/sqrt(2) and the control register eta in |+>^n. M_0 is the
identity and M_1 XORs the check bit into the ancilla, which kicks a -1 phase
back onto eta_i whenever the check fails. Hadamards on eta then leave the
controls in |fbar_0(x) ... fbar_{n-1}(x)>, so post-selecting |0...0> keeps
exactly the marked points.

Small instances run on the full register set. Larger ones run per variable
basis value: every oracle is a classical permutation controlled by x, so the
scratch registers stay basis labels and only the ancilla/control factor is
simulated as amplitudes.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import hadamard

from src.environment_loader import EnvironmentLoader
from src.errors import EmptyBranchError, ScratchContaminationError
from src.marking.check_oracle import check_bits, to_raw, to_signed
from src.marking.impl.collapsed_marker import check_variable_state
from src.marking.marked_set import grid_coordinates, residual_table, variable_register_names
from src.marking.marker import Marker
from src.marking.marking_spec import MarkingSpec, MarkReport
from src.polysys.polynomial_system import PolynomialSystem
from src.statesim.quantum_state import (
    ZERO_PROBABILITY,
    QuantumState,
    apply_hadamard,
    marginal_probabilities,
    prepare_phase_register,
    project,
)
from src.statesim.register_layout import RegisterLayout

SCRATCH_TOLERANCE = 1e-12
CHUNK_SIZE = 2 ** 16

RESULT_REGISTER = "result"
CHECK_REGISTER = "check"
ANCILLA_REGISTER = "ancilla"
CONTROL_REGISTER = "controls"


def _control_bit_mask(i: int, n: int) -> np.ndarray:
    """Control-register values whose eta_i qubit is 1 (eta_0 is the most significant)."""
    return ((np.arange(2 ** n) >> (n - 1 - i)) & 1).astype(bool)


class FaithfulMarker(Marker):
    """Runs the ancilla/control marking construction and post-selects the controls.

    Attributes:
        dense_qubits (int): Largest full register set simulated densely;
            defaults to QROOT_FAITHFUL_DENSE_QUBITS.
        threads (int): Worker count for residual evaluation and chunked
            per-basis simulation.
    """

    def __init__(self, dense_qubits: Optional[int] = None, threads: int = 1):
        self.dense_qubits = dense_qubits if dense_qubits is not None else EnvironmentLoader.faithful_dense_qubits()
        self.threads = threads
        self.ancilla = prepare_phase_register(1)
        self.logger = logging.getLogger(__name__)

    def full_layout(self, system: PolynomialSystem, spec: MarkingSpec) -> RegisterLayout:
        """Variables, then residual, check bit, ancilla and controls."""
        registers = [(name, spec.variable_format.total_bits) for name in variable_register_names(system.n)]
        registers += [
            (RESULT_REGISTER, spec.result_format.width),
            (CHECK_REGISTER, 1),
            (ANCILLA_REGISTER, 1),
            (CONTROL_REGISTER, system.n),
        ]
        return RegisterLayout(tuple(registers))

    def uses_dense_path(self, system: PolynomialSystem, spec: MarkingSpec) -> bool:
        total = (system.n * spec.variable_format.total_bits + spec.result_format.width + 2 + system.n)
        return total <= min(self.dense_qubits, EnvironmentLoader.max_qubits())

    # Full-register simulation

    def apply_operator(self, state: QuantumState, system: PolynomialSystem, spec: MarkingSpec) -> QuantumState:
        """Full register state after all n marking operators and the control Hadamards."""
        check_variable_state(state, system, spec)
        layout = self.full_layout(system, spec)
        n = system.n
        width = spec.result_format.width
        points, results, controls = state.amplitudes.size, 2 ** width, 2 ** n

        tensor = np.zeros((points, results, 2, 2, controls), dtype=np.complex128)
        tensor[:, 0, 0, :, :] = (
            state.amplitudes[:, None, None]
            * self.ancilla[None, :, None]
            * np.full(controls, 1 / np.sqrt(controls))[None, None, :]
        )

        coordinates = grid_coordinates(n, spec.variable_format)
        residual_words = [
            np.asarray(to_raw(r, spec.result_format.total_bits), dtype=np.int64)
            for r in residual_table(system, spec, coordinates, self.threads)
        ]
        failing_words = check_bits(
            to_signed(np.arange(results, dtype=np.int64), spec.result_format.total_bits), spec
        ).astype(bool)

        for i in range(n):
            tensor = self._xor_into_result(tensor, residual_words[i])
            tensor = self._xor_into_check(tensor, failing_words)
            tensor = self._controlled_kickback(tensor, _control_bit_mask(i, n))
            tensor = self._xor_into_check(tensor, failing_words)
            tensor = self._xor_into_result(tensor, residual_words[i])

        full = QuantumState(layout, tensor.reshape(-1))
        return apply_hadamard(full, [CONTROL_REGISTER])

    @staticmethod
    def _xor_into_result(tensor: np.ndarray, words: np.ndarray) -> np.ndarray:
        points, results = tensor.shape[:2]
        rows = np.arange(points)[:, None]
        columns = np.arange(results)[None, :] ^ words[:, None]
        updated = np.empty_like(tensor)
        updated[rows, columns] = tensor
        return updated

    @staticmethod
    def _xor_into_check(tensor: np.ndarray, failing_words: np.ndarray) -> np.ndarray:
        updated = tensor.copy()
        updated[:, failing_words] = tensor[:, failing_words][:, :, ::-1]
        return updated

    @staticmethod
    def _controlled_kickback(tensor: np.ndarray, control_mask: np.ndarray) -> np.ndarray:
        # check bit 1 and eta_i = 1: X on the ancilla
        updated = tensor.copy()
        updated[:, :, 1][..., control_mask] = tensor[:, :, 1][..., control_mask][:, :, ::-1, :]
        return updated

    def _check_scratch(self, full: QuantumState) -> None:
        scratch = marginal_probabilities(full, [RESULT_REGISTER, CHECK_REGISTER])
        leaked = 1.0 - float(scratch[0, 0])
        if leaked > SCRATCH_TOLERANCE:
            raise ScratchContaminationError(
                f"scratch registers hold probability {leaked:.3e} outside |0> after uncomputation"
            )

    def _mark_dense(self, state: QuantumState, system: PolynomialSystem,
                    spec: MarkingSpec) -> Tuple[QuantumState, float]:
        full = self.apply_operator(state, system, spec)
        self._check_scratch(full)
        try:
            projected, probability = project(full, CONTROL_REGISTER, 0)
        except EmptyBranchError:
            raise EmptyBranchError() from None
        points = state.amplitudes.size
        tensor = projected.tensor().reshape(points, -1, 2, 2, 2 ** system.n)
        branch = tensor[:, 0, 0, :, 0] @ np.conj(self.ancilla)
        return QuantumState(state.layout, branch / np.linalg.norm(branch)), probability

    # Per-basis simulation

    def _kickback_factors(self, system: PolynomialSystem, spec: MarkingSpec,
                          coordinates: Sequence[np.ndarray], hadamard_controls: bool) -> np.ndarray:
        """Ancilla/control amplitudes (points, 2, 2^n) for each variable basis value."""
        n = system.n
        total_bits = spec.result_format.total_bits
        points = len(coordinates[0])
        controls = 2 ** n
        factors = np.empty((points, 2, controls), dtype=np.complex128)
        factors[:] = self.ancilla[None, :, None] / np.sqrt(controls)

        residual_words = [to_raw(r, total_bits) for r in residual_table(system, spec, coordinates)]
        result = np.zeros(points, dtype=residual_words[0].dtype)
        check = np.zeros(points, dtype=np.uint8)
        for i in range(n):
            result = result ^ residual_words[i]
            check ^= check_bits(to_signed(result, total_bits), spec)
            rows = np.flatnonzero(check)
            columns = np.flatnonzero(_control_bit_mask(i, n))
            block = np.ix_(rows, [0, 1], columns)
            factors[block] = factors[block][:, ::-1, :]
            check ^= check_bits(to_signed(result, total_bits), spec)
            result = result ^ residual_words[i]

        if np.any(result != 0) or np.any(check != 0):
            raise ScratchContaminationError("scratch labels not restored to 0 after uncomputation")
        if hadamard_controls:
            factors = factors @ (hadamard(controls) / np.sqrt(controls)).T
        return factors

    def control_amplitudes(self, system: PolynomialSystem, spec: MarkingSpec,
                           points: Sequence[Sequence[int]], hadamard_controls: bool = True) -> np.ndarray:
        """Control-register amplitudes (ancilla factored out) for raw variable points.

        Args:
            points: Raw variable-register values, one tuple of n ints per point.
            hadamard_controls: Apply the final Hadamards on the controls.

        Returns:
            np.ndarray: Shape (len(points), 2^n). After the Hadamards each row is a
                basis vector |fbar_0 ... fbar_{n-1}>.
        """
        raw = np.asarray(points, dtype=np.int64).reshape(-1, system.n)
        coordinates = [raw[:, j] for j in range(system.n)]
        factors = self._kickback_factors(system, spec, coordinates, hadamard_controls)
        return np.einsum("a,kac->kc", np.conj(self.ancilla), factors)

    def _zero_control_amplitudes(self, system: PolynomialSystem, spec: MarkingSpec) -> np.ndarray:
        coordinates = grid_coordinates(system.n, spec.variable_format)
        size = len(coordinates[0])
        starts = list(range(0, size, CHUNK_SIZE))

        def run(start: int) -> np.ndarray:
            chunk = [c[start:start + CHUNK_SIZE] for c in coordinates]
            factors = self._kickback_factors(system, spec, chunk, hadamard_controls=True)
            return factors[:, :, 0] @ np.conj(self.ancilla)

        if self.threads > 1 and len(starts) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts: List[np.ndarray] = list(pool.map(run, starts))
        else:
            parts = [run(start) for start in starts]
        return np.concatenate(parts)

    def mark(self, state: QuantumState, system: PolynomialSystem,
             spec: MarkingSpec) -> Tuple[QuantumState, MarkReport]:
        check_variable_state(state, system, spec)
        selection = self._zero_control_amplitudes(system, spec)
        marked_count = int(np.count_nonzero(np.abs(selection) > 0.5))

        if self.uses_dense_path(system, spec):
            self.logger.debug("Faithful marking on the full register set")
            branch, probability = self._mark_dense(state, system, spec)
        else:
            self.logger.debug("Faithful marking per variable basis value")
            kept = state.amplitudes * selection
            probability = float(np.vdot(kept, kept).real)
            if probability < ZERO_PROBABILITY:
                raise EmptyBranchError()
            branch = QuantumState(state.layout, kept / np.sqrt(probability))

        report = MarkReport(
            marked_count=marked_count,
            total_states=selection.size,
            success_probability=probability,
            success_state=branch,
        )
        self.logger.info(
            f"Faithful marking kept {marked_count} of {selection.size} grid points "
            f"(branch probability {probability:.6g})"
        )
        return branch, report


def mark_faithful(state: QuantumState, system: PolynomialSystem, spec: MarkingSpec,
                  threads: int = 1, dense_qubits: Optional[int] = None) -> Tuple[QuantumState, MarkReport]:
    return FaithfulMarker(dense_qubits, threads).mark(state, system, spec)
