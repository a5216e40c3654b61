import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from src.amplify.search import derived_seed
from src.gradient.descent import RefineTrace, gradient_source_for, refine
from src.polysys.polynomial_system import objective_value, residuals
from src.workflow.solve_state import SolveState


@dataclass
class RefinedCandidate:
    """A sampled grid point and where gradient descent took it.

    Attributes:
        candidate: The coarse grid point read out of the search.
        solution: Refined point on the 2^-l grid.
        residuals: Exact f_i at the solution.
        objective: Exact F at the solution.
        trace: Descent record.
    """
    candidate: Tuple[Fraction, ...]
    solution: Tuple[Fraction, ...]
    residuals: Tuple[Fraction, ...]
    objective: Fraction
    trace: RefineTrace

    @property
    def max_residual(self) -> Fraction:
        return max(abs(r) for r in self.residuals)


class CandidateRefiner:
    """Refines every distinct candidate with gradient descent on F = sum_i f_i^2.

    Each candidate gets its own gradient source; the simulated source draws
    its seed from the run seed and the candidate's position so reruns are
    reproducible.
    """

    def __init__(self, threads: int = 1):
        self.threads = threads
        self.logger = logging.getLogger(__name__)

    def refine_candidates(self, state: SolveState) -> SolveState:
        """Refine every distinct candidate by gradient descent on F.

        Args:
            state (SolveState): Carries the candidates and the gradient settings.

        Returns:
            SolveState: The state with one RefinedCandidate per candidate, in
                candidate order.
        """
        start = time.perf_counter()
        system, config = state["system"], state["gradient_config"]
        seed = state["amplify_spec"].seed
        refined = []
        for index, candidate in enumerate(state["candidates"]):
            source = gradient_source_for(state["gradient_kind"], self.threads, derived_seed(seed, 1, index))
            solution, trace = refine(system, candidate, config, source)
            result = RefinedCandidate(
                candidate=candidate,
                solution=solution,
                residuals=residuals(system, solution),
                objective=objective_value(system, solution),
                trace=trace,
            )
            self.logger.info(
                f"Candidate {[float(x) for x in candidate]} -> {[float(x) for x in solution]} "
                f"(max residual {float(result.max_residual):.3e}, {trace.stop_reason})"
            )
            refined.append(result)
        state["refined"] = refined
        state["timings"]["refine_candidates"] = time.perf_counter() - start
        return state
