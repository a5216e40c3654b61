import logging
import time

from src.amplify.search import SearchRunner
from src.errors import EmptyBranchError
from src.workflow.solve_state import SolveState


class CandidateMarker:
    """Runs the marking operator on the prepared superposition.

    An empty marked set is not an exception at this stage: the report is
    recorded with M = 0 and the routing handler sends the graph to the
    no-solution node.

    Attributes:
        runner (SearchRunner): Shared with the sampling node so both use the same marker.
    """

    def __init__(self, runner: SearchRunner):
        self.runner = runner
        self.logger = logging.getLogger(__name__)

    def mark_candidates(self, state: SolveState) -> SolveState:
        """Mark the grid points that pass every check oracle.

        Args:
            state (SolveState): Carries the prepared superposition.

        Returns:
            SolveState: The state with `marked_branch` and `mark_report` set, or
                with `error` set and both cleared when nothing is marked.
        """
        start = time.perf_counter()
        try:
            branch, report = self.runner.mark(state["initial_state"], state["system"], state["marking_spec"])
        except EmptyBranchError as e:
            self.logger.warning(f"Marked set is empty: {e}")
            state["marked_branch"] = None
            state["mark_report"] = None
            state["error"] = str(e)
        else:
            state["marked_branch"] = branch
            state["mark_report"] = report
            self.logger.info(
                f"Marked {report.marked_count} of {report.total_states} grid points "
                f"(success probability {report.success_probability:.6g})"
            )
        state["timings"]["mark_candidates"] = time.perf_counter() - start
        return state
