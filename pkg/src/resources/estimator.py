"""
Operation and qubit counts for the quantum solver, with Newton's method as the
classical comparator.

Every big-O constant is fixed to 1. The numbers rank configurations against
each other; they do not predict wall-clock time.
"""

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import FixedFormat
from src.polysys.polynomial_system import PolynomialSystem, degree_stats

DEFAULT_REFINE_ITERATIONS = 32
CROSSOVER_SCAN_LIMIT = 1 << 20


@dataclass(frozen=True)
class ResourceParams:
    """Inputs of the cost formulas.

    Attributes:
        n: Number of variables (and equations).
        t: Largest term count of any equation.
        h: Largest total degree of any equation.
        N: Bits per variable register.
        m: Integer bits per variable register.
        l: Accuracy bits of the refined solution.
        lambda_: Threshold exponent of the check oracle.
        c: Number of descent iterations.
    """
    n: int
    t: int
    h: int
    N: int
    m: int
    l: int
    lambda_: int
    c: int = DEFAULT_REFINE_ITERATIONS

    def __post_init__(self):
        for name in ("n", "t", "h", "N", "c"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be >= 1, got {getattr(self, name)}")
        for name in ("m", "l", "lambda_"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be >= 0, got {getattr(self, name)}")

    @classmethod
    def from_system(cls, system: PolynomialSystem, variable_format: FixedFormat, accuracy_bits: int,
                    lambda_: Optional[int] = None, c: int = DEFAULT_REFINE_ITERATIONS) -> "ResourceParams":
        """t and h from the system; lambda defaults to h * m."""
        h, t = degree_stats(system)
        m = variable_format.integer_bits
        return cls(
            n=system.n, t=t, h=h, N=variable_format.total_bits, m=m, l=accuracy_bits,
            lambda_=h * m if lambda_ is None else lambda_, c=c,
        )

    def with_n(self, n: int) -> "ResourceParams":
        return ResourceParams(n, self.t, self.h, self.N, self.m, self.l, self.lambda_, self.c)


@dataclass(frozen=True)
class ResourceEstimate:
    search_ops: int
    refine_ops: int
    total_ops: int
    total_qubits: int
    newton_ops_per_iter: int


def amplification_rounds(lambda_: int) -> int:
    """ceil(2^(lambda/2)) in integer arithmetic."""
    if lambda_ == 0:
        return 1
    return isqrt((1 << lambda_) - 1) + 1


def search_cost(params: ResourceParams) -> int:
    return amplification_rounds(params.lambda_) * params.n * params.t * params.h * params.N ** 2


def refine_cost(params: ResourceParams) -> int:
    return params.c * params.n * params.t * params.h * (params.l + params.m) ** 2


def estimate_qubits(params: ResourceParams) -> int:
    """2n(l+m) register qubits, 4h(m+l) + hN oracle store, n controls and one ancilla.

    The gradient phase register of about 2h(m+l) qubits is counted inside the
    4h(m+l) store term.
    """
    n, h, N, m, l = params.n, params.h, params.N, params.m, params.l
    return 2 * n * (l + m) + 4 * h * (m + l) + h * N + n + 1


def newton_cost(params: ResourceParams) -> int:
    """h t n^3 (l+m)^2 per Newton iteration."""
    return params.h * params.t * params.n ** 3 * (params.l + params.m) ** 2


def estimate_operations(params: ResourceParams) -> ResourceEstimate:
    search_ops = search_cost(params)
    refine_ops = refine_cost(params)
    return ResourceEstimate(
        search_ops=search_ops,
        refine_ops=refine_ops,
        total_ops=search_ops + refine_ops,
        total_qubits=estimate_qubits(params),
        newton_ops_per_iter=newton_cost(params),
    )


def newton_crossover(params: ResourceParams) -> Optional[int]:
    """Smallest n at which one Newton iteration costs more than the whole quantum solve.

    All parameters other than n stay fixed. Returns None if no n up to
    CROSSOVER_SCAN_LIMIT qualifies.
    """
    if params.l + params.m == 0:
        return None
    for n in range(1, CROSSOVER_SCAN_LIMIT + 1):
        candidate = params.with_n(n)
        if newton_cost(candidate) > search_cost(candidate) + refine_cost(candidate):
            return n
    return None
