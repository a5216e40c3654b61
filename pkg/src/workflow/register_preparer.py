import logging
import time

from src.amplify.search import SearchRunner
from src.workflow.solve_state import SolveState


class RegisterPreparer:
    """Puts the n variable registers into uniform superposition.

    This is the first node of the solve graph. The dense state it builds is
    the largest allocation of the run, so the qubit cap is enforced here and
    a SimulationCapError surfaces before any marking work starts.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def prepare_registers(self, state: SolveState) -> SolveState:
        """Build the uniform superposition over the variable registers.

        Args:
            state (SolveState): Carries the system and the marking spec.

        Returns:
            SolveState: The state with `initial_state` set and the stage timing recorded.

        Raises:
            SimulationCapError: If the registers exceed the qubit cap.
        """
        start = time.perf_counter()
        system, spec = state["system"], state["marking_spec"]
        state["initial_state"] = SearchRunner.prepare(system, spec)
        state["timings"]["prepare_registers"] = time.perf_counter() - start
        self.logger.info(
            f"Prepared {system.n} variable registers of {spec.variable_format.total_bits} qubits "
            f"({state['initial_state'].layout.dimension} basis states)"
        )
        return state
