from fractions import Fraction
from typing import Sequence, Tuple

from src.gradient.gradient_config import GradientConfig
from src.gradient.gradient_source import GradientSource
from src.polysys.polynomial_system import PolynomialSystem, grad_F


class AnalyticGradient(GradientSource):
    """Exact gradient 2 * sum_i f_i * df_i/dx_j from the polynomial model."""

    def gradient(self, system: PolynomialSystem, point: Sequence[Fraction],
                 config: GradientConfig) -> Tuple[Fraction, ...]:
        return grad_F(system, point)
