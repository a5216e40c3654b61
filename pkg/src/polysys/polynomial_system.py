"""
Square systems of polynomial equations f_i(x_0, ..., x_{n-1}) = 0.

Right-hand sides are always folded into the polynomials, so downstream code
only ever sees the "= 0" form. All evaluation here is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from src.polysys.polynomial import Polynomial, Scalar


@dataclass(frozen=True)
class PolynomialSystem:
    """n polynomial equations in n variables.

    Attributes:
        equations: The polynomials f_0 ... f_{n-1}.
        gap_variables: Variable indices below n that no equation references.
            Non-empty means the parser raised its index-gap warning.
    """
    equations: Tuple[Polynomial, ...]
    gap_variables: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        if not self.equations:
            raise ValueError("a system needs at least one equation")
        n = len(self.equations)
        for i, equation in enumerate(self.equations):
            if equation.n_vars != n:
                raise ValueError(
                    f"equation {i} has {equation.n_vars} variables but the system has {n} equations; "
                    "only square systems are supported"
                )

    @property
    def n(self) -> int:
        return len(self.equations)

    @property
    def h(self) -> int:
        return max(eq.degree for eq in self.equations)

    @property
    def t(self) -> int:
        return max(eq.term_count for eq in self.equations)

    @property
    def has_index_gap(self) -> bool:
        return bool(self.gap_variables)


def _check_index(system: PolynomialSystem, eq_index: int) -> None:
    if not 0 <= eq_index < system.n:
        raise IndexError(f"equation index {eq_index} out of range for {system.n} equations")


def evaluate(system: PolynomialSystem, eq_index: int, point: Sequence[Scalar]) -> Fraction:
    """Exact value of f_{eq_index} at the point."""
    _check_index(system, eq_index)
    return system.equations[eq_index].evaluate(point)


def residuals(system: PolynomialSystem, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    return tuple(eq.evaluate(point) for eq in system.equations)


def objective_value(system: PolynomialSystem, point: Sequence[Scalar]) -> Fraction:
    """F = sum_i f_i^2 at the point."""
    return sum((r * r for r in residuals(system, point)), Fraction(0))


@lru_cache(maxsize=64)
def jacobian_polynomials(system: PolynomialSystem) -> Tuple[Tuple[Polynomial, ...], ...]:
    """df_i/dx_j as polynomials, row i, column j."""
    return tuple(
        tuple(eq.derivative(j) for j in range(system.n)) for eq in system.equations
    )


@lru_cache(maxsize=64)
def objective(system: PolynomialSystem) -> Polynomial:
    """F = sum_i f_i^2 as an expanded polynomial."""
    total = Polynomial.constant(system.n, 0)
    for eq in system.equations:
        total = total + eq * eq
    return total


@lru_cache(maxsize=64)
def objective_gradient(system: PolynomialSystem) -> Tuple[Polynomial, ...]:
    F = objective(system)
    return tuple(F.derivative(j) for j in range(system.n))


@lru_cache(maxsize=64)
def objective_hessian(system: PolynomialSystem) -> Tuple[Tuple[Polynomial, ...], ...]:
    gradient = objective_gradient(system)
    return tuple(tuple(g.derivative(k) for k in range(system.n)) for g in gradient)


def grad_F(system: PolynomialSystem, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    """Exact gradient of F: dF/dx_j = 2 * sum_i f_i * df_i/dx_j."""
    if len(point) != system.n:
        raise ValueError(f"point has {len(point)} coordinates, expected {system.n}")
    point = [Fraction(x) for x in point]
    values = residuals(system, point)
    jacobian = jacobian_polynomials(system)
    return tuple(
        2 * sum((values[i] * jacobian[i][j].evaluate(point) for i in range(system.n)), Fraction(0))
        for j in range(system.n)
    )


def hessian_F(system: PolynomialSystem, point: Sequence[Scalar]) -> List[List[Fraction]]:
    point = [Fraction(x) for x in point]
    return [[entry.evaluate(point) for entry in row] for row in objective_hessian(system)]


def degree_stats(system: PolynomialSystem) -> Tuple[int, int]:
    """(h, t): max total degree and max term count (constants included)."""
    return system.h, system.t


def format_rational(value: Fraction) -> str:
    """Exact literal for a rational: integer, terminating decimal, or p/q."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    denominator = value.denominator
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    sign = "-" if value < 0 else ""
    whole, fraction = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{fraction:0{digits}d}"


def _format_monomial(exponents: Sequence[int]) -> str:
    factors = []
    for j, e in enumerate(exponents):
        if e == 1:
            factors.append(f"x{j}")
        elif e > 1:
            factors.append(f"x{j}^{e}")
    return "*".join(factors)


def format_polynomial(polynomial: Polynomial) -> str:
    if polynomial.is_zero():
        return "0"
    pieces = []
    for position, term in enumerate(polynomial.terms):
        negative = term.coefficient < 0
        magnitude = abs(term.coefficient)
        monomial = _format_monomial(term.exponents)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def format_system(system: PolynomialSystem) -> str:
    """Canonical text form, one `... = 0` line per equation, parseable by parse_system."""
    return "\n".join(f"{format_polynomial(eq)} = 0" for eq in system.equations) + "\n"
