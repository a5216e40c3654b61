"""
Brute-force enumeration of the marked set.

Every grid point x in {0, ..., 2^N - 1}^n is pushed through the exact-mode
oracle of every equation; a point is marked when all n check bits are 0.
This is the classical ground truth the quantum marking passes are tested
against, and the production path of collapsed marking.
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from src.environment_loader import EnvironmentLoader
from src.errors import SimulationCapError
from src.fixedpoint.fixed_format import FixedFormat
from src.fixedpoint.oracle import evaluate_on_grid
from src.marking.check_oracle import check_bits
from src.marking.marking_spec import MarkingSpec
from src.polysys.polynomial_system import PolynomialSystem
from src.statesim.register_layout import RegisterLayout

logger = logging.getLogger(__name__)


def variable_register_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{j}" for j in range(n))


def variable_layout(n: int, variable_format: FixedFormat) -> RegisterLayout:
    """The n variable registers x0 ... x{n-1}, N qubits each."""
    return RegisterLayout(tuple((name, variable_format.total_bits) for name in variable_register_names(n)))


def grid_coordinates(n: int, variable_format: FixedFormat) -> List[np.ndarray]:
    """Raw value of each variable register for every flat variable-basis index."""
    N = variable_format.total_bits
    if N * n > EnvironmentLoader.max_qubits():
        raise SimulationCapError(
            f"enumerating {n} registers of {N} bits needs {N * n} qubits, "
            f"above the cap of {EnvironmentLoader.max_qubits()}"
        )
    index = np.arange(2 ** (N * n), dtype=np.int64)
    mask = 2 ** N - 1
    return [(index >> (N * (n - 1 - j))) & mask for j in range(n)]


def residual_table(system: PolynomialSystem, spec: MarkingSpec, coordinates: Sequence[np.ndarray],
                   threads: int = 1) -> List[np.ndarray]:
    """Signed raw residual words of each equation at the given grid points."""
    return [
        evaluate_on_grid(eq, coordinates, spec.variable_format, spec.result_format, threads=threads)
        for eq in system.equations
    ]


def check_table(system: PolynomialSystem, spec: MarkingSpec, coordinates: Sequence[np.ndarray],
                threads: int = 1) -> np.ndarray:
    """uint8 array of shape (n, points): check bit of every equation at every point."""
    residuals = residual_table(system, spec, coordinates, threads)
    return np.stack([check_bits(r, spec) for r in residuals])


def marked_mask(system: PolynomialSystem, spec: MarkingSpec, threads: int = 1) -> np.ndarray:
    """Boolean mask over all 2^(N*n) variable-basis indices."""
    coordinates = grid_coordinates(system.n, spec.variable_format)
    mask = ~check_table(system, spec, coordinates, threads).any(axis=0)
    logger.debug(f"Marked {int(mask.sum())} of {mask.size} grid points with tau={spec.tau}")
    return mask


def marked_set(system: PolynomialSystem, spec: MarkingSpec, threads: int = 1) -> List[Tuple[Fraction, ...]]:
    """All grid points passing every check oracle, in ascending flat-index order."""
    mask = marked_mask(system, spec, threads)
    return [decode_index(int(k), system.n, spec.variable_format) for k in np.flatnonzero(mask)]


def decode_index(flat_index: int, n: int, variable_format: FixedFormat) -> Tuple[Fraction, ...]:
    N = variable_format.total_bits
    scale = 2 ** variable_format.fractional_bits
    return tuple(
        Fraction((flat_index >> (N * (n - 1 - j))) & (2 ** N - 1), scale) for j in range(n)
    )
