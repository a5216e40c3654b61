"""
Subcommand implementations. Each returns a result document; failures are
raised as QRootError subclasses and mapped to exit codes by the entry point.
"""

import logging
import time
from typing import Any, Dict

from src.baseline.newton import newton_solve
from src.cli.result_document import new_document, render_decimal, render_exact, render_vector
from src.cli.run_config import RunConfig
from src.errors import ConfigurationError, EmptyBranchError
from src.marking.marked_set import marked_set
from src.marking.marking_spec import MarkingSpec
from src.polysys.polynomial_system import PolynomialSystem, format_polynomial
from src.resources.estimator import ResourceEstimate, ResourceParams, estimate_operations, newton_crossover
from src.workflow.solve_state import SolveState, initial_solve_state
from src.workflow.workflow import WorkflowBuilder

logger = logging.getLogger(__name__)


def _system_section(system: PolynomialSystem) -> Dict[str, Any]:
    return {
        "n": system.n,
        "h": system.h,
        "t": system.t,
        "equations": [format_polynomial(eq) for eq in system.equations],
    }


def _marking_section(spec: MarkingSpec, precision: int) -> Dict[str, Any]:
    return {
        "bits": spec.variable_format.total_bits,
        "int_bits": spec.variable_format.integer_bits,
        "threshold_log2": spec.threshold_log2,
        "lambda": spec.lambda_,
        "tau": render_decimal(spec.tau, precision),
        "result_format": {
            "total_bits": spec.result_format.total_bits,
            "integer_bits": spec.result_format.integer_bits,
        },
    }


def _resources_section(params: ResourceParams, estimate: ResourceEstimate, crossover) -> Dict[str, Any]:
    return {
        "params": {
            "n": params.n, "t": params.t, "h": params.h, "N": params.N,
            "m": params.m, "l": params.l, "lambda": params.lambda_, "c": params.c,
        },
        "search_ops": estimate.search_ops,
        "refine_ops": estimate.refine_ops,
        "total_ops": estimate.total_ops,
        "total_qubits": estimate.total_qubits,
        "newton_ops_per_iter": estimate.newton_ops_per_iter,
        "newton_crossover_n": crossover,
    }


def _candidate_section(state: SolveState, refined, precision: int) -> Dict[str, Any]:
    trace = refined.trace
    return {
        "point": render_vector(refined.candidate, precision),
        "samples": state["sample_counts"].get(refined.candidate, 0),
        "solution": render_vector(refined.solution, precision),
        "solution_exact": [render_exact(v) for v in refined.solution],
        "residuals": render_vector(refined.residuals, precision),
        "max_residual": render_decimal(refined.max_residual, precision),
        "objective": render_decimal(refined.objective, precision),
        "converged": trace.converged,
        "stop_reason": trace.stop_reason,
        "iterations": trace.iterations_used,
        "trace": [
            {
                "point": render_vector(iterate.point, precision),
                "objective": render_decimal(iterate.value, precision),
                "gradient": render_vector(iterate.gradient, precision),
            }
            for iterate in trace.iterates
        ],
    }


def cmd_solve(config: RunConfig) -> Dict[str, Any]:
    """Full pipeline: mark, amplify, sample, de-duplicate, refine, estimate.

    Raises:
        EmptyBranchError: If no grid point is marked (exit code 2).
        SimulationCapError: If the registers exceed the qubit cap (exit code 3).
    """
    start = time.perf_counter()
    system = config.load_system()
    marking_spec = config.marking_spec(system)
    amplify_spec = config.amplify_spec(marking_spec)
    gradient_config = config.gradient_config()

    workflow = WorkflowBuilder(config.marking, config.worker_count).create_workflow()
    state = workflow.invoke(initial_solve_state(system, marking_spec, amplify_spec, gradient_config, config.gradient))
    if state["error"] is not None:
        raise EmptyBranchError(state["error"])

    precision = config.precision
    report, diagnostics = state["mark_report"], state["diagnostics"]
    document = new_document("solve", precision)
    document["system"] = _system_section(system)
    document["marking"] = _marking_section(marking_spec, precision)
    document["search"] = {
        "mode": amplify_spec.mode.value,
        "marking": config.marking.value,
        "seed": amplify_spec.seed,
        "shots": amplify_spec.shots,
        "marked_count": report.marked_count,
        "total_states": report.total_states,
        "success_probability": float(report.success_probability),
        "iterations": diagnostics.iterations,
        "probability_trace": [float(p) for p in diagnostics.probability_trace],
        "final_probability": float(diagnostics.final_probability),
        "draws": diagnostics.draws,
        "discards": diagnostics.discards,
        "trial_counts": diagnostics.trial_counts,
    }
    document["gradient"] = {
        "source": state["gradient_kind"].value,
        "grid_bits": gradient_config.grid_bits,
        "window": render_decimal(gradient_config.window, precision),
        "alpha": None if gradient_config.alpha is None else render_decimal(gradient_config.alpha, precision),
        "max_iters": gradient_config.max_iters,
        "accuracy_bits": gradient_config.accuracy_bits,
    }
    document["candidates"] = [_candidate_section(state, refined, precision) for refined in state["refined"]]
    document["resources"] = _resources_section(
        state["resource_params"], state["resources"], state["newton_crossover"]
    )
    timing = dict(state["timings"])
    timing["total"] = time.perf_counter() - start
    document["timing"] = timing
    return document


def cmd_marked_set(config: RunConfig) -> Dict[str, Any]:
    """Brute-force marked set.

    Raises:
        EmptyBranchError: If no grid point passes every check (exit code 2).
    """
    system = config.load_system()
    spec = config.marking_spec(system)
    points = marked_set(system, spec, config.worker_count)
    logger.info(f"Marked set has {len(points)} of {2 ** (spec.variable_format.total_bits * system.n)} points")
    if not points:
        raise EmptyBranchError()
    document = new_document("marked-set", config.precision)
    document["system"] = _system_section(system)
    document["marking"] = _marking_section(spec, config.precision)
    document["marked_count"] = len(points)
    document["total_states"] = 2 ** (spec.variable_format.total_bits * system.n)
    document["points"] = [render_vector(p, config.precision) for p in points]
    return document


def cmd_estimate(config: RunConfig) -> Dict[str, Any]:
    """Resource estimate for the system under the configured register sizes.

    With --lambda or --threshold-log2, lambda comes from the marking threshold
    exactly as in `solve` (result integer bits minus threshold_log2). With
    neither flag it defaults to h*m.
    """
    system = config.load_system()
    marking_spec = config.marking_spec(system)
    threshold_given = config.lambda_ is not None or config.threshold_log2 is not None
    params = ResourceParams.from_system(
        system,
        marking_spec.variable_format,
        config.accuracy_bits,
        lambda_=marking_spec.lambda_ if threshold_given else None,
        c=config.gradient_config().max_iters,
    )
    document = new_document("estimate", config.precision)
    document["system"] = _system_section(system)
    if threshold_given:
        document["marking"] = _marking_section(marking_spec, config.precision)
    document["resources"] = _resources_section(params, estimate_operations(params), newton_crossover(params))
    return document


def cmd_newton(config: RunConfig) -> Dict[str, Any]:
    """Classical Newton baseline from --x0.

    Raises:
        ConfigurationError: If --x0 is missing or has the wrong length.
        SingularJacobianError, NewtonConvergenceError: On numerical failure (exit code 4).
    """
    system = config.load_system()
    if config.x0 is None:
        raise ConfigurationError("newton needs a starting point: --x0 v0,v1,...")
    if len(config.x0) != system.n:
        raise ConfigurationError(f"--x0 has {len(config.x0)} coordinates but the system has {system.n} variables")
    result = newton_solve(system, config.x0, config.newton_config())
    precision = config.precision
    document = new_document("newton", precision)
    document["system"] = _system_section(system)
    document["newton"] = {
        "x0": render_vector(config.x0, precision),
        "tol_residual": render_decimal(config.tol, max(precision, 15)),
        "damping": render_decimal(config.damping, precision),
        "solution": [repr(v) for v in result.solution],
        "exact_residual": float(result.exact_residual),
        "verified": result.verified,
        "iterations": result.iterations,
        "trace": [
            {"point": [repr(v) for v in iterate.point], "max_residual": iterate.max_residual}
            for iterate in result.trace
        ],
    }
    return document


COMMANDS = {
    "solve": cmd_solve,
    "marked-set": cmd_marked_set,
    "estimate": cmd_estimate,
    "newton": cmd_newton,
}
