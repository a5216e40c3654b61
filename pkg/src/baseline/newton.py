"""
Classical Newton's method on a polynomial system.

Iterates x <- x - damping * J(x)^-1 f(x) in float arithmetic, solving the
linear system by LU factorization with partial pivoting rather than forming
the inverse. The final iterate is re-evaluated with exact rationals.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from src.errors import ConfigurationError, NewtonConvergenceError, SingularJacobianError
from src.polysys.polynomial_system import PolynomialSystem, jacobian_polynomials, residuals

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class NewtonConfig:
    tol_residual: Fraction = Fraction(1, 10 ** 12)
    max_iters: int = 50
    damping: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "tol_residual", Fraction(self.tol_residual))
        object.__setattr__(self, "damping", Fraction(self.damping))
        if self.tol_residual <= 0:
            raise ConfigurationError(f"tol_residual must be > 0, got {self.tol_residual}")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be >= 1, got {self.max_iters}")
        if not 0 < self.damping <= 1:
            raise ConfigurationError(f"damping must be in (0, 1], got {self.damping}")


@dataclass
class NewtonIterate:
    point: Tuple[float, ...]
    max_residual: float


@dataclass
class NewtonResult:
    """Outcome of a converged Newton run.

    Attributes:
        solution: Final float iterate.
        exact_residual: max_i |f_i| at the solution, evaluated exactly.
        verified: Whether the exact residual is also below tol_residual.
        iterations: Newton updates applied.
        trace: Iterate and float max residual for every visited point.
    """
    solution: Tuple[float, ...]
    exact_residual: Fraction
    verified: bool
    iterations: int
    trace: List[NewtonIterate] = field(default_factory=list)


def _evaluate(system: PolynomialSystem, x: np.ndarray) -> np.ndarray:
    return np.array([eq.evaluate_float(x) for eq in system.equations])


def _jacobian(system: PolynomialSystem, x: np.ndarray) -> np.ndarray:
    return np.array([[entry.evaluate_float(x) for entry in row] for row in jacobian_polynomials(system)])


def newton_solve(system: PolynomialSystem, x0: Sequence[Fraction],
                 config: NewtonConfig = NewtonConfig()) -> NewtonResult:
    """Run Newton's method from x0 until max_i |f_i(x)| < tol_residual.

    Raises:
        SingularJacobianError: If an LU pivot falls below 1e-12 in magnitude.
        NewtonConvergenceError: If max_iters updates do not converge or an
            residual or Jacobian stops being finite. The error carries the trace.
    """
    if len(x0) != system.n:
        raise ValueError(f"starting point has {len(x0)} coordinates but the system has {system.n} variables")
    x = np.array([float(v) for v in x0])
    tolerance = float(config.tol_residual)
    damping = float(config.damping)
    trace: List[NewtonIterate] = []

    for iteration in range(config.max_iters + 1):
        try:
            f = _evaluate(system, x)
        except OverflowError:
            f = np.full(system.n, np.inf)
        if not np.all(np.isfinite(f)):
            raise NewtonConvergenceError(f"residual is not finite at iterate {iteration}", trace)
        max_residual = float(np.max(np.abs(f)))
        trace.append(NewtonIterate(tuple(float(v) for v in x), max_residual))
        logger.debug(f"Newton iterate {iteration}: max residual {max_residual:.3e}")
        if max_residual < tolerance:
            break
        if iteration == config.max_iters:
            raise NewtonConvergenceError(
                f"Newton did not converge in {config.max_iters} iterations "
                f"(last max residual {max_residual:.3e})",
                trace,
            )

        try:
            jacobian = _jacobian(system, x)
        except OverflowError:
            jacobian = np.full((system.n, system.n), np.inf)
        if not np.all(np.isfinite(jacobian)):
            raise NewtonConvergenceError(f"Jacobian is not finite at iterate {iteration}", trace)
        lu, pivots = lu_factor(jacobian, check_finite=False)
        smallest = float(np.min(np.abs(np.diag(lu))))
        if smallest < PIVOT_TOLERANCE:
            raise SingularJacobianError([float(v) for v in x], smallest)
        x = x - damping * lu_solve((lu, pivots), f)

    iterations = len(trace) - 1
    exact_residual = max(abs(r) for r in residuals(system, [Fraction(v) for v in x]))
    verified = exact_residual < config.tol_residual
    if not verified:
        logger.warning(
            f"Float residual converged but the exact residual {float(exact_residual):.3e} "
            f"is above the tolerance"
        )
    logger.info(f"Newton converged in {iterations} iterations to {x.tolist()}")
    return NewtonResult(
        solution=tuple(float(v) for v in x),
        exact_residual=exact_residual,
        verified=verified,
        iterations=iterations,
        trace=trace,
    )
