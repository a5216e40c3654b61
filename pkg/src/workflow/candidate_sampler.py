import logging
import time
from collections import Counter

from src.amplify.search import SearchRunner
from src.workflow.solve_state import SolveState


class CandidateSampler:
    """Amplifies the marked branch, samples it and de-duplicates the readouts.

    Several shots are the remedy for systems with more than one marked point:
    each distinct readout becomes a refinement candidate.
    """

    def __init__(self, runner: SearchRunner):
        self.runner = runner
        self.logger = logging.getLogger(__name__)

    def amplify_and_sample(self, state: SolveState) -> SolveState:
        """Amplify the marked branch and draw the configured number of shots.

        Args:
            state (SolveState): Carries the marked branch and its report.

        Returns:
            SolveState: The state with samples, diagnostics, per-point counts
                and the sorted distinct candidates.

        Raises:
            SearchExhaustedError: If post-selection cannot collect enough samples.
        """
        start = time.perf_counter()
        samples, diagnostics = self.runner.sample(
            state["initial_state"],
            state["marked_branch"],
            state["mark_report"],
            state["system"],
            state["marking_spec"],
            state["amplify_spec"],
        )
        counts = Counter(samples)
        state["samples"] = samples
        state["diagnostics"] = diagnostics
        state["sample_counts"] = dict(counts)
        state["candidates"] = sorted(counts)
        state["timings"]["amplify_and_sample"] = time.perf_counter() - start
        self.logger.info(f"{len(samples)} samples gave {len(counts)} distinct candidates")
        return state
