from abc import ABC, abstractmethod
from enum import Enum
from typing import Tuple

from src.marking.marking_spec import MarkingSpec, MarkReport
from src.polysys.polynomial_system import PolynomialSystem
from src.statesim.quantum_state import QuantumState


class MarkingMode(str, Enum):
    COLLAPSED = "collapsed"
    FAITHFUL = "faithful"


class Marker(ABC):
    """Abstract base class for marking passes over the variable registers.

    A marker takes a state defined on the variable registers x0 ... x{n-1},
    keeps only the amplitude of grid points whose residuals pass every check
    oracle, and renormalizes. Concrete markers differ in how literally they
    simulate the circuit: the collapsed marker applies the resulting
    projector directly, the faithful marker runs the ancilla/control
    construction and post-selects on the control register.

    Both must return the same state vector; the pipeline picks one through
    configuration and never depends on which one ran.
    """

    @abstractmethod
    def mark(self, state: QuantumState, system: PolynomialSystem,
             spec: MarkingSpec) -> Tuple[QuantumState, MarkReport]:
        """Project the state onto the marked branch.

        Args:
            state: A state on the variable registers only.
            system: The polynomial system whose residuals are checked.
            spec: Threshold and register formats for the check oracle.

        Returns:
            Tuple[QuantumState, MarkReport]: The renormalized marked branch and a
                report with the marked count and the branch probability.

        Raises:
            EmptyBranchError: If no amplitude survives marking.
        """
        pass
