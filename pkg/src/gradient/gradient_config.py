from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import FixedFormat

DEFAULT_GRID_BITS = 6
DEFAULT_WINDOW = Fraction(1, 8)
DEFAULT_MAX_ITERS = 32
DEFAULT_ACCURACY_BITS = 13
DEFAULT_GUARD_BITS = 8
MAX_GRID_QUBITS = 20


@dataclass(frozen=True)
class GradientConfig:
    """Settings for gradient estimation and descent refinement.

    Attributes:
        grid_bits: g, qubits per variable in the offset grid.
        window: L, the grid spans [-L/2, L/2) per variable with spacing L/2^g.
        s: Derivative bound; None picks the smallest power of two whose half
            exceeds the interval bound of |dF/dx_j| over the window.
        phase_bits: log2 of the phase register size N'; defaults to g.
        alpha: Step size; None uses 1/||Hessian of F||_2 at each iterate.
        max_iters: c, the cap on descent updates.
        tol_gradnorm: Converged when ||gradient||_inf drops below this.
        accuracy_bits: l, the solution is reported on the 2^-l grid.
        guard_bits: Extra working-grid bits below 2^-l for the iterates.
        tol_step: Converged when the update's largest component drops below
            this; defaults to 2^-(l + 4).
    """
    grid_bits: int = DEFAULT_GRID_BITS
    window: Fraction = DEFAULT_WINDOW
    s: Optional[Fraction] = None
    phase_bits: Optional[int] = None
    alpha: Optional[Fraction] = None
    max_iters: int = DEFAULT_MAX_ITERS
    tol_gradnorm: Fraction = Fraction(1, 2 ** DEFAULT_ACCURACY_BITS)
    accuracy_bits: int = DEFAULT_ACCURACY_BITS
    guard_bits: int = DEFAULT_GUARD_BITS
    tol_step: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("window", "s", "alpha", "tol_gradnorm", "tol_step"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, Fraction(value))
        if self.phase_bits is None:
            object.__setattr__(self, "phase_bits", self.grid_bits)
        if self.tol_step is None:
            object.__setattr__(self, "tol_step", Fraction(1, 2 ** (self.accuracy_bits + 4)))

        if self.grid_bits < 1:
            raise ConfigurationError(f"grid_bits must be >= 1, got {self.grid_bits}")
        if self.window <= 0:
            raise ConfigurationError(f"window must be > 0, got {self.window}")
        if self.s is not None and self.s <= 0:
            raise ConfigurationError(f"s must be > 0, got {self.s}")
        if self.alpha is not None and self.alpha <= 0:
            raise ConfigurationError(f"alpha must be > 0, got {self.alpha}")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol_gradnorm <= 0:
            raise ConfigurationError(f"tol_gradnorm must be > 0, got {self.tol_gradnorm}")
        if self.accuracy_bits < 0 or self.guard_bits < 0:
            raise ConfigurationError("accuracy_bits and guard_bits must be >= 0")

    @classmethod
    def for_variable_format(cls, variable_format: FixedFormat, **overrides) -> "GradientConfig":
        """Defaults with the window set to one coarse grid cell, 2^-(N-m)."""
        overrides.setdefault("window", variable_format.resolution)
        return cls(**overrides)

    @property
    def delta(self) -> Fraction:
        return self.window / 2 ** self.grid_bits

    @property
    def working_resolution(self) -> Fraction:
        return Fraction(1, 2 ** (self.accuracy_bits + self.guard_bits))

    @property
    def accuracy(self) -> Fraction:
        return Fraction(1, 2 ** self.accuracy_bits)
