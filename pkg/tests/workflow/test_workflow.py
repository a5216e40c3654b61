import inspect
from fractions import Fraction

import pytest

from src.amplify.amplify_spec import AmplifySpec
from src.errors import RANGE_CHANGE_HINT
from src.fixedpoint.fixed_format import FixedFormat
from src.gradient.gradient_config import GradientConfig
from src.marking.marker import MarkingMode
from src.workflow.candidate_marker import CandidateMarker
from src.workflow.candidate_refiner import CandidateRefiner
from src.workflow.candidate_sampler import CandidateSampler
from src.workflow.handler.impl.marking_handler import MarkingNextStep
from src.workflow.handler.impl.no_solution_handler import NoSolutionHandler
from src.workflow.register_preparer import RegisterPreparer
from src.workflow.resource_reporter import ResourceReporter
from src.workflow.solve_state import initial_solve_state
from src.workflow.workflow import WorkflowBuilder
from tests.helpers import marking_spec_for


def _run(system, spec, marking_mode=MarkingMode.COLLAPSED):
    gradient_config = GradientConfig.for_variable_format(spec.variable_format)
    state = initial_solve_state(system, spec, AmplifySpec(shots=20, seed=8), gradient_config)
    return WorkflowBuilder(marking_mode).create_workflow().invoke(state)


def test_quadratic_pipeline_finds_the_root(quadratic_system):
    state = _run(quadratic_system, marking_spec_for(quadratic_system, 3, 3, 0))

    assert state["error"] is None
    assert state["candidates"] == [(Fraction(2),)]
    assert state["sample_counts"] == {(Fraction(2),): 20}
    [refined] = state["refined"]
    assert refined.solution == (Fraction(2),)
    assert refined.max_residual == 0
    assert state["resources"].total_ops == state["resources"].search_ops + state["resources"].refine_ops
    assert {"prepare_registers", "mark_candidates", "amplify_and_sample",
            "refine_candidates", "estimate_resources"} <= set(state["timings"])


def test_faithful_pipeline_matches_collapsed(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 2)

    collapsed = _run(quadratic_system, spec)
    faithful = _run(quadratic_system, spec, MarkingMode.FAITHFUL)

    assert faithful["samples"] == collapsed["samples"]
    assert faithful["mark_report"].marked_count == collapsed["mark_report"].marked_count == 2


def test_empty_marked_set_routes_to_no_solution(quadratic_system):
    state = _run(quadratic_system, marking_spec_for(quadratic_system, 3, 1, -1))

    assert state["error"] == RANGE_CHANGE_HINT
    assert state["candidates"] == []
    assert state["refined"] == []
    assert state["resources"] is None


def test_routing_on_marked_count(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 0)
    state = initial_solve_state(quadratic_system, spec, AmplifySpec(), GradientConfig())

    assert MarkingNextStep().get_next_step(state) == "no_solution"


def test_resource_params_follow_the_run(quadratic_system):
    spec = marking_spec_for(quadratic_system, 3, 3, 0)

    state = _run(quadratic_system, spec)

    params = state["resource_params"]
    assert (params.n, params.h, params.N, params.m) == (1, 2, 3, 3)
    assert params.lambda_ == spec.lambda_
    assert params.c == GradientConfig.for_variable_format(FixedFormat(3, 3)).max_iters


@pytest.mark.parametrize(
    "node",
    [
        RegisterPreparer.prepare_registers,
        CandidateMarker.mark_candidates,
        CandidateSampler.amplify_and_sample,
        CandidateRefiner.refine_candidates,
        ResourceReporter.estimate_resources,
        NoSolutionHandler.handle_no_solution,
        MarkingNextStep.get_next_step,
    ],
)
def test_graph_nodes_document_their_state_contract(node):
    doc = inspect.getdoc(node)

    assert doc is not None
    assert "Args:" in doc and "Returns:" in doc
