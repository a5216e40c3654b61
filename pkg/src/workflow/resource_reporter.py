import logging
import time

from src.resources.estimator import ResourceParams, estimate_operations, newton_crossover
from src.workflow.solve_state import SolveState


class ResourceReporter:
    """Attaches the operation and qubit estimate for the configuration just run."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def estimate_resources(self, state: SolveState) -> SolveState:
        """Estimate operations and qubits for the configuration just run.

        Lambda is taken from the run's marking threshold and c from the
        descent iteration cap.

        Args:
            state (SolveState): Carries the system, marking spec and gradient config.

        Returns:
            SolveState: The state with resource params, the estimate and the
                Newton crossover.
        """
        start = time.perf_counter()
        spec, config = state["marking_spec"], state["gradient_config"]
        params = ResourceParams.from_system(
            state["system"],
            spec.variable_format,
            config.accuracy_bits,
            lambda_=spec.lambda_,
            c=config.max_iters,
        )
        estimate = estimate_operations(params)
        state["resource_params"] = params
        state["resources"] = estimate
        state["newton_crossover"] = newton_crossover(params)
        state["timings"]["estimate_resources"] = time.perf_counter() - start
        self.logger.info(
            f"Estimated {estimate.total_ops} operations on {estimate.total_qubits} qubits "
            f"(Newton: {estimate.newton_ops_per_iter} per iteration)"
        )
        return state
