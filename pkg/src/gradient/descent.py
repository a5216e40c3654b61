"""
Gradient-descent refinement of a coarse candidate.

Iterates x <- x - alpha * grad F(x) on exact rationals. Iterates are rounded to
the working grid 2^-(l + guard) so the rationals stay bounded, and the
reported solution is rounded to the 2^-l accuracy grid.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.gradient.gradient_config import GradientConfig
from src.gradient.gradient_source import GradientSource, GradientSourceKind
from src.gradient.impl.analytic_gradient import AnalyticGradient
from src.gradient.impl.jordan_gradient import JordanGradient
from src.polysys.polynomial_system import PolynomialSystem, hessian_F, objective_value

logger = logging.getLogger(__name__)

DIVERGENCE_STREAK = 3

Vector = Tuple[Fraction, ...]


@dataclass
class RefineIterate:
    point: Vector
    value: Fraction
    gradient: Vector

    @property
    def gradient_norm(self) -> Fraction:
        return max((abs(g) for g in self.gradient), default=Fraction(0))


@dataclass
class RefineTrace:
    """Per-iteration record of one refinement run.

    Attributes:
        iterates: (point, exact F, gradient estimate) for every visited iterate.
        converged: Whether a stopping rule (gradient norm or step size) fired.
        iterations_used: Descent updates applied.
        stop_reason: "gradient", "step", "max_iters" or "divergence".
        alpha_halved: Whether the divergence guard halved the step size.
    """
    iterates: List[RefineIterate] = field(default_factory=list)
    converged: bool = False
    iterations_used: int = 0
    stop_reason: str = "max_iters"
    alpha_halved: bool = False


def snap(value: Fraction, resolution: Fraction) -> Fraction:
    """Nearest multiple of resolution, ties upward."""
    return floor(value / resolution + Fraction(1, 2)) * resolution


def descent_step(x: Sequence[Fraction], gradient: Sequence[Fraction], alpha: Fraction) -> Vector:
    """x - alpha * gradient."""
    if len(x) != len(gradient):
        raise ValueError(f"point has {len(x)} coordinates but gradient has {len(gradient)}")
    alpha = Fraction(alpha)
    return tuple(Fraction(xj) - alpha * Fraction(gj) for xj, gj in zip(x, gradient))


def automatic_alpha(system: PolynomialSystem, point: Sequence[Fraction]) -> Fraction:
    """1 / ||Hessian of F at point||_2."""
    hessian = np.array([[float(v) for v in row] for row in hessian_F(system, point)])
    norm = float(np.linalg.norm(hessian, 2))
    if norm == 0.0:
        return Fraction(1)
    return Fraction(1.0 / norm)


def gradient_source_for(kind: GradientSourceKind, threads: int = 1, seed: int = 0) -> GradientSource:
    if GradientSourceKind(kind) is GradientSourceKind.QUANTUM:
        return JordanGradient(threads=threads, seed=seed)
    return AnalyticGradient()


def refine(system: PolynomialSystem, x0: Sequence[Fraction], config: GradientConfig,
           gradient_source: Optional[GradientSource] = None) -> Tuple[Vector, RefineTrace]:
    """Descend from x0 until the gradient or the step vanishes, or max_iters updates.

    If F increases on DIVERGENCE_STREAK consecutive updates, alpha is halved
    once; any further increase stops the run with converged=False and the
    last iterate kept.

    Returns:
        Tuple[Vector, RefineTrace]: The solution rounded to the 2^-l grid and
            the iteration record.
    """
    source = gradient_source or AnalyticGradient()
    source.reset()
    x = tuple(snap(Fraction(v), config.working_resolution) for v in x0)
    value = objective_value(system, x)
    trace = RefineTrace()
    streak = 0
    scale = Fraction(1)

    for iteration in range(config.max_iters + 1):
        gradient = source.gradient(system, x, config)
        trace.iterates.append(RefineIterate(x, value, gradient))
        if max(abs(g) for g in gradient) < config.tol_gradnorm:
            trace.converged, trace.stop_reason = True, "gradient"
            break
        if iteration == config.max_iters:
            break

        alpha = (config.alpha if config.alpha is not None else automatic_alpha(system, x)) * scale
        update = [alpha * g for g in gradient]
        if max(abs(u) for u in update) < config.tol_step:
            trace.converged, trace.stop_reason = True, "step"
            break

        candidate = tuple(snap(v, config.working_resolution) for v in descent_step(x, gradient, alpha))
        candidate_value = objective_value(system, candidate)
        if candidate_value > value:
            if trace.alpha_halved and streak >= DIVERGENCE_STREAK:
                logger.warning(f"F increased again after halving alpha; stopping at iteration {iteration}")
                trace.stop_reason = "divergence"
                break
            streak += 1
            if streak >= DIVERGENCE_STREAK and not trace.alpha_halved:
                logger.warning(f"F increased on {streak} consecutive steps; halving alpha")
                scale /= 2
                trace.alpha_halved = True
        elif not trace.alpha_halved:
            streak = 0

        logger.debug(f"Iteration {iteration}: F={float(candidate_value):.6e}, step={float(max(abs(u) for u in update)):.3e}")
        x, value = candidate, candidate_value
        trace.iterations_used += 1

    solution = tuple(snap(v, config.accuracy) for v in x)
    logger.info(
        f"Refinement {'converged' if trace.converged else 'stopped'} ({trace.stop_reason}) after "
        f"{trace.iterations_used} updates at F={float(value):.6e}"
    )
    return solution, trace
