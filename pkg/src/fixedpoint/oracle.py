"""
Equation oracles U_f: |x>|0> -> |x>|f(x)>.

`exact` mode computes f in rationals and encodes once; `truncating` mode
truncates every intermediate product to the result grid, modelling bounded
width reversible arithmetic. `evaluate_on_grid` is the vectorized exact-mode
oracle over every basis state of the variable registers at once.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import List, Sequence

import numpy as np

from src.errors import FixedPointOverflowError
from src.fixedpoint.fixed_format import BitWord, FixedFormat, encode
from src.polysys.polynomial import Polynomial
from src.polysys.polynomial_system import PolynomialSystem

logger = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 62


class OracleMode(str, Enum):
    EXACT = "exact"
    TRUNCATING = "truncating"


def _check_point(point: Sequence[BitWord], system: PolynomialSystem) -> FixedFormat:
    if len(point) != system.n:
        raise ValueError(f"point has {len(point)} words, expected {system.n}")
    formats = {word.format for word in point}
    if len(formats) != 1:
        raise ValueError("point words must share one variable format")
    return formats.pop()


def _truncated(value: Fraction, result_format: FixedFormat) -> Fraction:
    if not result_format.contains(value):
        raise FixedPointOverflowError(f"intermediate {value} overflows {result_format}")
    return result_format.truncate(value)


def eval_oracle(system: PolynomialSystem, eq_index: int, point: Sequence[BitWord],
                result_format: FixedFormat, mode: OracleMode = OracleMode.EXACT) -> BitWord:
    """Residual word of f_{eq_index} at the decoded point.

    Raises:
        FixedPointOverflowError: If the residual (or, in truncating mode, any
            intermediate product) leaves the result format's range.
    """
    _check_point(point, system)
    if not 0 <= eq_index < system.n:
        raise IndexError(f"equation index {eq_index} out of range for {system.n} equations")
    values = [word.value for word in point]
    equation = system.equations[eq_index]

    if OracleMode(mode) is OracleMode.EXACT:
        return encode(equation.evaluate(values), result_format)

    accumulator = Fraction(0)
    for term in equation.terms:
        product = _truncated(term.coefficient, result_format)
        for x, e in zip(values, term.exponents):
            for _ in range(e):
                product = _truncated(product * x, result_format)
        accumulator += product
    return encode(accumulator, result_format)


def _grid_program(polynomial: Polynomial, variable_format: FixedFormat, result_format: FixedFormat):
    """Integer form of the polynomial on the variable grid.

    With x_j = raw_j / 2^F, f(x) * 2^Fr = numerator(raw) * 2^Fr / Q for integer
    coefficients; returns those coefficients, Q, and a bound on |numerator * 2^Fr|.
    """
    F = variable_format.fractional_bits
    Fr = result_format.fractional_bits
    h = polynomial.degree
    D = 1
    for term in polynomial.terms:
        D = lcm(D, term.coefficient.denominator)
    Q = D * 2 ** (F * h)
    program = []
    bound = 0
    top = 2 ** variable_format.total_bits
    for term in polynomial.terms:
        coefficient = int(term.coefficient * D) * 2 ** (F * (h - term.degree))
        program.append((coefficient, term.exponents))
        bound += abs(coefficient) * top ** term.degree
    return program, Q, bound * 2 ** Fr


def evaluate_on_grid(polynomial: Polynomial, coordinates: Sequence[np.ndarray],
                     variable_format: FixedFormat, result_format: FixedFormat,
                     threads: int = 1) -> np.ndarray:
    """floor(f(x) * 2^Fr) for every grid point, as exact integers.

    `coordinates[j]` holds the raw value of register x_j for each basis index.
    Chunks are evaluated on `threads` workers and concatenated in order, so the
    output does not depend on the thread count.

    Raises:
        FixedPointOverflowError: If any residual leaves the result format range.
    """
    size = len(coordinates[0]) if coordinates else 1
    program, Q, bound = _grid_program(polynomial, variable_format, result_format)
    use_int64 = bound < _INT64_SAFE and Q < _INT64_SAFE
    dtype = np.int64 if use_int64 else object
    if not use_int64:
        logger.debug(f"Grid oracle falls back to exact object arithmetic (bound {bound.bit_length()} bits)")
    shift = 2 ** result_format.fractional_bits
    columns = [np.asarray(c).astype(dtype) for c in coordinates]

    def run(start: int, stop: int) -> np.ndarray:
        numerator = np.zeros(stop - start, dtype=dtype)
        for coefficient, exponents in program:
            product = np.full(stop - start, coefficient, dtype=dtype)
            for column, e in zip(columns, exponents):
                if e:
                    product = product * column[start:stop] ** e
            numerator = numerator + product
        return (numerator * shift) // Q

    threads = max(1, min(threads, size))
    edges = np.linspace(0, size, threads + 1).astype(int)
    if threads == 1:
        result = run(0, size)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts: List[np.ndarray] = list(pool.map(run, edges[:-1], edges[1:]))
        result = np.concatenate(parts)

    low = -(2 ** result_format.total_bits)
    high = 2 ** result_format.total_bits
    if size and (min(result) < low or max(result) >= high):
        raise FixedPointOverflowError(f"grid residual overflows {result_format}")
    return result
