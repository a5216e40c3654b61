from abc import ABC, abstractmethod

from src.workflow.solve_state import SolveState


class NextStep(ABC):
    """Abstract base class for routing decisions in the solve graph.

    Concrete handlers inspect the state after a node has run and return the
    name of the route to follow. The returned strings must match the keys of
    the conditional edges registered in WorkflowBuilder.
    """

    @abstractmethod
    def get_next_step(self, state: SolveState) -> str:
        """Determine the next step from the current state.

        Args:
            state (SolveState): The state produced by the node this handler follows.

        Returns:
            str: A route identifier registered for the conditional edge.
        """
        pass
