import logging
from typing import Tuple

import numpy as np

from src.errors import EmptyBranchError
from src.marking.marked_set import marked_mask, variable_register_names
from src.marking.marker import Marker
from src.marking.marking_spec import MarkingSpec, MarkReport
from src.polysys.polynomial_system import PolynomialSystem
from src.statesim.quantum_state import ZERO_PROBABILITY, QuantumState


def check_variable_state(state: QuantumState, system: PolynomialSystem, spec: MarkingSpec) -> None:
    expected = tuple((name, spec.variable_format.total_bits) for name in variable_register_names(system.n))
    if state.layout.registers != expected:
        raise ValueError(f"marking needs a state on the variable registers {expected}, got {state.layout.registers}")


class CollapsedMarker(Marker):
    """Applies the marking projector directly on the variable registers.

    Hadamards on the controls followed by post-selection on |0...0> act on
    the variable registers as the diagonal projector onto points whose check
    bits are all zero. This marker multiplies the amplitudes by that 0/1 mask,
    which is exact and scales to the full simulation cap.

    Attributes:
        threads (int): Worker count for the grid oracle evaluation.
    """

    def __init__(self, threads: int = 1):
        self.threads = threads
        self.logger = logging.getLogger(__name__)

    def mark(self, state: QuantumState, system: PolynomialSystem,
             spec: MarkingSpec) -> Tuple[QuantumState, MarkReport]:
        check_variable_state(state, system, spec)
        mask = marked_mask(system, spec, self.threads)
        kept = np.where(mask, state.amplitudes, 0)
        probability = float(np.vdot(kept, kept).real)
        if probability < ZERO_PROBABILITY:
            raise EmptyBranchError()
        report = MarkReport(
            marked_count=int(mask.sum()),
            total_states=mask.size,
            success_probability=probability,
        )
        self.logger.info(
            f"Collapsed marking kept {report.marked_count} of {report.total_states} grid points "
            f"(branch probability {probability:.6g})"
        )
        return QuantumState(state.layout, kept / np.sqrt(probability)), report


def mark_collapsed(state: QuantumState, system: PolynomialSystem, spec: MarkingSpec,
                   threads: int = 1) -> Tuple[QuantumState, MarkReport]:
    return CollapsedMarker(threads).mark(state, system, spec)
