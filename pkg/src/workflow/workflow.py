from typing import Optional

from langgraph.graph import END, START, StateGraph
from langgraph.graph.state import CompiledStateGraph

from src.amplify.search import SearchRunner
from src.marking.impl.collapsed_marker import CollapsedMarker
from src.marking.impl.faithful_marker import FaithfulMarker
from src.marking.marker import Marker, MarkingMode
from src.workflow.candidate_marker import CandidateMarker
from src.workflow.candidate_refiner import CandidateRefiner
from src.workflow.candidate_sampler import CandidateSampler
from src.workflow.handler.impl.marking_handler import MarkingNextStep
from src.workflow.handler.impl.no_solution_handler import NoSolutionHandler
from src.workflow.register_preparer import RegisterPreparer
from src.workflow.resource_reporter import ResourceReporter
from src.workflow.solve_state import SolveState


def marker_for(mode: MarkingMode, threads: int = 1, dense_qubits: Optional[int] = None) -> Marker:
    """Marker for the requested simulation mode; dense_qubits only matters for faithful marking."""
    if MarkingMode(mode) is MarkingMode.FAITHFUL:
        return FaithfulMarker(dense_qubits=dense_qubits, threads=threads)
    return CollapsedMarker(threads)


class WorkflowBuilder:
    """Builds the solve pipeline as a LangGraph state graph.

    The graph prepares the variable registers, marks the grid points whose
    residuals pass every check oracle, and then either stops at the
    no-solution node (empty marked set) or amplifies and samples the marked
    branch, refines every distinct candidate with gradient descent and
    attaches a resource estimate.

    Stages run sequentially; `threads` is passed to the stages that
    parallelize internally.

    Attributes:
        workflow (StateGraph): The graph under construction.
        runner (SearchRunner): Search stages shared by the marking and sampling nodes.
        register_preparer (RegisterPreparer): Uniform superposition node.
        candidate_marker (CandidateMarker): Marking node.
        candidate_sampler (CandidateSampler): Amplification and readout node.
        candidate_refiner (CandidateRefiner): Gradient-descent node.
        resource_reporter (ResourceReporter): Resource-estimate node.
        marking_next_step (MarkingNextStep): Routes on the marked count.
        no_solution_handler (NoSolutionHandler): Terminal node for an empty marked set.
    """

    def __init__(self, marking_mode: MarkingMode = MarkingMode.COLLAPSED, threads: int = 1):
        self.workflow = StateGraph(SolveState)
        self.runner = SearchRunner(marker_for(marking_mode, threads), threads)
        self.register_preparer = RegisterPreparer()
        self.candidate_marker = CandidateMarker(self.runner)
        self.candidate_sampler = CandidateSampler(self.runner)
        self.candidate_refiner = CandidateRefiner(threads)
        self.resource_reporter = ResourceReporter()
        self.marking_next_step = MarkingNextStep()
        self.no_solution_handler = NoSolutionHandler()

    def create_workflow(self) -> CompiledStateGraph:
        """Wire the nodes and compile the graph.

        Returns:
            CompiledStateGraph: Ready to `invoke` with an initial SolveState.
        """
        self.workflow.add_node("prepare_registers", self.register_preparer.prepare_registers)
        self.workflow.add_node("mark_candidates", self.candidate_marker.mark_candidates)
        self.workflow.add_node("amplify_and_sample", self.candidate_sampler.amplify_and_sample)
        self.workflow.add_node("refine_candidates", self.candidate_refiner.refine_candidates)
        self.workflow.add_node("estimate_resources", self.resource_reporter.estimate_resources)
        self.workflow.add_node("no_solution", self.no_solution_handler.handle_no_solution)

        self.workflow.add_edge(START, "prepare_registers")
        self.workflow.add_edge("prepare_registers", "mark_candidates")

        self.workflow.add_conditional_edges(
            "mark_candidates",
            self.marking_next_step.get_next_step,
            {
                "amplify_and_sample": "amplify_and_sample",  # M > 0
                "no_solution": "no_solution",
            }
        )

        self.workflow.add_edge("amplify_and_sample", "refine_candidates")
        self.workflow.add_edge("refine_candidates", "estimate_resources")
        self.workflow.add_edge("estimate_resources", END)
        self.workflow.add_edge("no_solution", END)

        return self.workflow.compile()
