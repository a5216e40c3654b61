from src.workflow.handler.handler import NextStep
from src.workflow.solve_state import SolveState


class MarkingNextStep(NextStep):
    """Routes on the marked count: sample when M > 0, otherwise report no solution."""

    def get_next_step(self, state: SolveState) -> str:
        """Pick the route after marking.

        Args:
            state (SolveState): The state after the marking node.

        Returns:
            str: "amplify_and_sample" when at least one point is marked, else "no_solution".
        """
        report = state["mark_report"]
        if report is not None and report.marked_count > 0:
            return "amplify_and_sample"
        return "no_solution"
