"""
Exact multivariate polynomials over the rationals.

Coefficients are fractions.Fraction so that every other module can use these
polynomials as a ground-truth oracle without float drift.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Sequence, Tuple, Union

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


def graded_lex_key(exponents: Exponents) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: higher total degree first, then lexicographically larger exponents first."""
    return -sum(exponents), tuple(-e for e in exponents)


@dataclass(frozen=True)
class Term:
    """A single monomial c * x0^e0 * ... * x{n-1}^e{n-1} with nonzero rational c."""
    coefficient: Fraction
    exponents: Exponents

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.coefficient == 0:
            raise ValueError("term coefficient must be nonzero")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"exponents must be non-negative, got {self.exponents}")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        value = self.coefficient
        for x, e in zip(point, self.exponents):
            if e:
                value *= x ** e
        return value


@dataclass(frozen=True)
class Polynomial:
    """A polynomial in n_vars variables, terms kept combined and in graded-lex order."""
    n_vars: int
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        for term in self.terms:
            if len(term.exponents) != self.n_vars:
                raise ValueError(
                    f"term exponents {term.exponents} do not match variable count {self.n_vars}"
                )

    @classmethod
    def from_terms(cls, n_vars: int, terms: Iterable[Tuple[Scalar, Exponents]]) -> "Polynomial":
        """Build a polynomial combining like terms and dropping zero coefficients."""
        collected: Dict[Exponents, Fraction] = {}
        for coefficient, exponents in terms:
            exponents = tuple(exponents)
            collected[exponents] = collected.get(exponents, Fraction(0)) + Fraction(coefficient)
        kept = [Term(c, e) for e, c in collected.items() if c != 0]
        kept.sort(key=lambda t: graded_lex_key(t.exponents))
        return cls(n_vars, tuple(kept))

    @classmethod
    def constant(cls, n_vars: int, value: Scalar) -> "Polynomial":
        return cls.from_terms(n_vars, [(value, (0,) * n_vars)])

    @classmethod
    def variable(cls, n_vars: int, index: int) -> "Polynomial":
        exponents = [0] * n_vars
        exponents[index] = 1
        return cls.from_terms(n_vars, [(1, tuple(exponents))])

    @property
    def degree(self) -> int:
        return max((t.degree for t in self.terms), default=0)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_point(self, point: Sequence) -> None:
        if len(point) != self.n_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n_vars}")

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        self._check_point(point)
        point = [Fraction(x) for x in point]
        return sum((t.evaluate(point) for t in self.terms), Fraction(0))

    def evaluate_float(self, point: Sequence[float]) -> float:
        self._check_point(point)
        total = 0.0
        for term in self.terms:
            value = float(term.coefficient)
            for x, e in zip(point, term.exponents):
                if e:
                    value *= float(x) ** e
            total += value
        return total

    def derivative(self, index: int) -> "Polynomial":
        """Exact partial derivative with respect to variable `index`."""
        if not 0 <= index < self.n_vars:
            raise IndexError(f"variable index {index} out of range for {self.n_vars} variables")
        result = []
        for term in self.terms:
            e = term.exponents[index]
            if e == 0:
                continue
            exponents = list(term.exponents)
            exponents[index] = e - 1
            result.append((term.coefficient * e, tuple(exponents)))
        return Polynomial.from_terms(self.n_vars, result)

    def shifted(self, center: Sequence[Scalar], scale: Scalar) -> "Polynomial":
        """Substitute x_j = center_j + scale * u_j and expand exactly in u."""
        self._check_point(center)
        center = [Fraction(c) for c in center]
        scale = Fraction(scale)
        expanded = []
        for term in self.terms:
            partial: Dict[Exponents, Fraction] = {(0,) * self.n_vars: term.coefficient}
            for j, e in enumerate(term.exponents):
                if e == 0:
                    continue
                grown: Dict[Exponents, Fraction] = {}
                for exponents, coefficient in partial.items():
                    for k in range(e + 1):
                        factor = comb(e, k) * center[j] ** (e - k) * scale ** k
                        if factor == 0:
                            continue
                        new_exponents = list(exponents)
                        new_exponents[j] = k
                        key = tuple(new_exponents)
                        grown[key] = grown.get(key, Fraction(0)) + coefficient * factor
                partial = grown
            expanded.extend((c, e) for e, c in partial.items())
        return Polynomial.from_terms(self.n_vars, expanded)

    def _coerce(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n_vars != self.n_vars:
                raise ValueError("polynomials have different variable counts")
            return other
        return Polynomial.constant(self.n_vars, other)

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = self._coerce(other)
        return Polynomial.from_terms(
            self.n_vars,
            [(t.coefficient, t.exponents) for t in self.terms + other.terms],
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n_vars, tuple(Term(-t.coefficient, t.exponents) for t in self.terms))

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = self._coerce(other)
        products = []
        for a in self.terms:
            for b in other.terms:
                exponents = tuple(x + y for x, y in zip(a.exponents, b.exponents))
                products.append((a.coefficient * b.coefficient, exponents))
        return Polynomial.from_terms(self.n_vars, products)

    __rmul__ = __mul__
