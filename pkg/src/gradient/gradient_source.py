from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple

from src.gradient.gradient_config import GradientConfig
from src.polysys.polynomial_system import PolynomialSystem


class GradientSourceKind(str, Enum):
    ANALYTIC = "analytic"
    QUANTUM = "quantum"


class GradientSource(ABC):
    """Abstract base class for the gradient of F = sum_i f_i^2 used by descent.

    Concrete sources either compute the exact analytic gradient or simulate
    the phase-kickback gradient circuit and read the QFT peaks. Sources may
    keep state between calls of one refinement run (the simulated source
    shrinks its window as the gradient shrinks); `reset` clears that state
    and is called by refine before the first iterate.
    """

    def reset(self) -> None:
        """Forget state carried between iterates."""

    @abstractmethod
    def gradient(self, system: PolynomialSystem, point: Sequence[Fraction],
                 config: GradientConfig) -> Tuple[Fraction, ...]:
        """Estimate dF/dx_j at the point for every j.

        Args:
            system: The polynomial system defining F.
            point: Exact rational coordinates of the current iterate.
            config: Gradient and descent settings.

        Returns:
            Tuple[Fraction, ...]: One exact rational per variable.
        """
        pass
