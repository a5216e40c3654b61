from fractions import Fraction
from pathlib import Path

from src.fixedpoint.fixed_format import FixedFormat, ResultFormat
from src.marking.marking_spec import MarkingSpec
from src.polysys.polynomial import Polynomial
from src.polysys.polynomial_system import PolynomialSystem

SYSTEMS_DIR = Path(__file__).resolve().parents[1] / "systems"

CUBIC_CANDIDATE = (Fraction(11, 4), Fraction(13, 4), Fraction(25, 8))
CUBIC_NON_SOLUTION = (Fraction(13, 4), Fraction(9, 4), Fraction(25, 8))
CUBIC_ROOT = (2.7689, 3.2834, 3.1370)


def marking_spec_for(system, bits, int_bits, threshold_log2):
    variable_format = FixedFormat(total_bits=bits, integer_bits=int_bits)
    result_format = ResultFormat.for_system(system, variable_format)
    return MarkingSpec.from_threshold_log2(threshold_log2, variable_format, result_format)


def raw_point(point, variable_format):
    return tuple(variable_format.grid_index(x) for x in point)


def random_system(rng, n):
    """Square system of degree <= 3 with small rational coefficients."""
    equations = []
    for _ in range(n):
        terms = [(int(rng.integers(-6, 7)), (0,) * n)]
        for _ in range(int(rng.integers(1, 4))):
            exponents = [0] * n
            for _ in range(int(rng.integers(1, 4))):
                exponents[int(rng.integers(0, n))] += 1
            coefficient = Fraction(int(rng.integers(1, 4)), int(rng.choice([1, 2])))
            terms.append((coefficient * int(rng.choice([-1, 1])), tuple(exponents)))
        equations.append(Polynomial.from_terms(n, terms))
    return PolynomialSystem(tuple(equations))
