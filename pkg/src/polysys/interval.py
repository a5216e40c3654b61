"""
Closed-interval arithmetic over exact rationals.

Used wherever a guaranteed bound of a polynomial over a box is needed: sizing
result registers, checking the derivative bound s of the gradient oracle, and
bounding the Hessian of F for step sizes and window shrinking.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from src.polysys.polynomial import Polynomial

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Scalar) -> "Interval":
        return cls(value, value)

    @property
    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def contains(self, value: Scalar) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, factor: Scalar) -> "Interval":
        a, b = self.lo * factor, self.hi * factor
        return Interval(min(a, b), max(a, b))

    def __mul__(self, other: "Interval") -> "Interval":
        products = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Interval(min(products), max(products))

    def power(self, k: int) -> "Interval":
        if k == 0:
            return Interval.point(1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 == 0 and self.lo <= 0 <= self.hi:
            return Interval(0, max(a, b))
        return Interval(min(a, b), max(a, b))


def box_around(center: Sequence[Scalar], half_width: Scalar) -> List[Interval]:
    half_width = Fraction(half_width)
    return [Interval(Fraction(c) - half_width, Fraction(c) + half_width) for c in center]


def bound_on_box(polynomial: Polynomial, box: Sequence[Interval]) -> Interval:
    """Enclosure of the polynomial's range over the box (natural interval extension)."""
    if len(box) != polynomial.n_vars:
        raise ValueError(f"box has {len(box)} sides, expected {polynomial.n_vars}")
    total = Interval.point(0)
    for term in polynomial.terms:
        factor = Interval.point(term.coefficient)
        for side, e in zip(box, term.exponents):
            if e:
                factor = factor * side.power(e)
        total = total + factor
    return total


def bound_near(polynomial: Polynomial, center: Sequence[Scalar], half_width: Scalar) -> Interval:
    """Enclosure over center +- half_width, evaluated on the expansion in offsets from the center.

    Much tighter than bound_on_box for small boxes far from the origin, since
    the constant term is exact and only the offset terms are widened.
    """
    half_width = Fraction(half_width)
    local = polynomial.shifted(center, 1)
    return bound_on_box(local, [Interval(-half_width, half_width)] * polynomial.n_vars)
