import logging

from src.errors import RANGE_CHANGE_HINT
from src.workflow.solve_state import SolveState


class NoSolutionHandler:
    """Terminal node for an empty marked set.

    Leaves the state without candidates and records the range-change hint so
    the caller can report it and exit with the no-solution code.

    Attributes:
        hint (str): Message stored in the state's error field.
    """

    def __init__(self, hint: str = RANGE_CHANGE_HINT):
        self.hint = hint
        self.logger = logging.getLogger(__name__)

    def handle_no_solution(self, state: SolveState) -> SolveState:
        """Clear the candidates and record the range-change hint.

        Args:
            state (SolveState): The state after marking found nothing.

        Returns:
            SolveState: The state with empty candidates and `error` set to the hint.
        """
        self.logger.warning(f"No candidates in range: {self.hint}")
        state["candidates"] = []
        state["refined"] = []
        state["error"] = self.hint
        return state
