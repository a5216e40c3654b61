"""
Validated command-line configuration.

Every bound checked here names the flag and the bound it violated. Bounds
that depend on the parsed system (the check threshold against the result
register) are checked when the specs are built.
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, ValidationInfo, field_validator, model_validator
from typing_extensions import Annotated

from src.amplify.amplify_spec import DEFAULT_MAX_ITERATIONS, DEFAULT_SHOTS, AmplifyMode, AmplifySpec
from src.baseline.newton import NewtonConfig
from src.environment_loader import EnvironmentLoader
from src.errors import ConfigurationError
from src.fixedpoint.fixed_format import MAX_TOTAL_BITS, FixedFormat, ResultFormat
from src.gradient.gradient_config import (
    DEFAULT_ACCURACY_BITS,
    DEFAULT_GRID_BITS,
    DEFAULT_MAX_ITERS,
    GradientConfig,
)
from src.gradient.gradient_source import GradientSourceKind
from src.marking.marker import MarkingMode
from src.marking.marking_spec import MarkingSpec
from src.polysys.parser import parse_system
from src.polysys.polynomial_system import PolynomialSystem

DEFAULT_BITS = 6
DEFAULT_INT_BITS = 3
DEFAULT_THRESHOLD_LOG2 = 0
DEFAULT_PRECISION = 10
NEWTON_MAX_ITERS = 50


def _to_fraction(value: Any) -> Any:
    if value is None or isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"{value!r} is not a rational number")


def _to_fraction_list(value: Any) -> Any:
    if value is None:
        return None
    if isinstance(value, str):
        value = [part for part in value.replace(" ", "").split(",") if part]
    return [_to_fraction(v) for v in value]


Rational = Annotated[Fraction, BeforeValidator(_to_fraction)]
RationalList = Annotated[List[Fraction], BeforeValidator(_to_fraction_list)]


class RunConfig(BaseModel):
    """Settings shared by the solve, marked-set, estimate and newton commands."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    system_path: Path
    bits: int = DEFAULT_BITS
    int_bits: int = DEFAULT_INT_BITS
    lambda_: Optional[int] = None
    threshold_log2: Optional[int] = None
    result_frac_bits: Optional[int] = None
    amplify: AmplifyMode = AmplifyMode.EXACT_COUNT
    marking: MarkingMode = MarkingMode.COLLAPSED
    shots: int = DEFAULT_SHOTS
    max_trials: int = DEFAULT_MAX_ITERATIONS
    seed: Optional[int] = None
    gradient: GradientSourceKind = GradientSourceKind.ANALYTIC
    grid_bits: int = DEFAULT_GRID_BITS
    window: Optional[Rational] = None
    alpha: Optional[Rational] = None
    max_iters: Optional[int] = None
    accuracy_bits: int = DEFAULT_ACCURACY_BITS
    x0: Optional[RationalList] = None
    tol: Rational = Fraction(1, 10 ** 12)
    damping: Rational = Fraction(1)
    threads: Optional[int] = None
    precision: int = DEFAULT_PRECISION
    output_path: Optional[Path] = None

    @field_validator("bits")
    @classmethod
    def _check_bits(cls, v: int) -> int:
        if not 1 <= v <= MAX_TOTAL_BITS:
            raise ValueError(f"--bits must be in [1, {MAX_TOTAL_BITS}], got {v}")
        return v

    @field_validator("shots", "max_trials", "grid_bits")
    @classmethod
    def _check_positive(cls, v: int, info: ValidationInfo) -> int:
        if v < 1:
            raise ValueError(f"--{info.field_name.replace('_', '-')} must be >= 1, got {v}")
        return v

    @field_validator("max_iters", "threads")
    @classmethod
    def _check_optional_positive(cls, v: Optional[int], info: ValidationInfo) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError(f"--{info.field_name.replace('_', '-')} must be >= 1, got {v}")
        return v

    @field_validator("result_frac_bits", "accuracy_bits", "lambda_")
    @classmethod
    def _check_non_negative(cls, v: Optional[int], info: ValidationInfo) -> Optional[int]:
        if v is not None and v < 0:
            name = "lambda" if info.field_name == "lambda_" else info.field_name.replace("_", "-")
            raise ValueError(f"--{name} must be >= 0, got {v}")
        return v

    @field_validator("window", "alpha", "tol")
    @classmethod
    def _check_positive_rational(cls, v: Optional[Fraction], info: ValidationInfo) -> Optional[Fraction]:
        if v is not None and v <= 0:
            raise ValueError(f"--{info.field_name} must be > 0, got {v}")
        return v

    @field_validator("damping")
    @classmethod
    def _check_damping(cls, v: Fraction) -> Fraction:
        if not 0 < v <= 1:
            raise ValueError(f"--damping must be in (0, 1], got {v}")
        return v

    @field_validator("precision")
    @classmethod
    def _check_precision(cls, v: int) -> int:
        if not 0 <= v <= 60:
            raise ValueError(f"--precision must be in [0, 60], got {v}")
        return v

    @model_validator(mode="after")
    def _check_combinations(self) -> "RunConfig":
        if not 1 <= self.int_bits <= self.bits:
            raise ValueError(f"--int-bits must be in [1, --bits={self.bits}], got {self.int_bits}")
        if self.lambda_ is not None and self.threshold_log2 is not None:
            raise ValueError("--lambda and --threshold-log2 are mutually exclusive")
        return self

    @property
    def worker_count(self) -> int:
        return self.threads if self.threads is not None else max(1, EnvironmentLoader.default_threads())

    @property
    def root_seed(self) -> int:
        return self.seed if self.seed is not None else EnvironmentLoader.default_seed()

    def load_system(self) -> PolynomialSystem:
        try:
            text = self.system_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"cannot read system file {self.system_path}: {e.strerror or e}")
        return parse_system(text)

    def variable_format(self) -> FixedFormat:
        return FixedFormat(total_bits=self.bits, integer_bits=self.int_bits)

    def marking_spec(self, system: PolynomialSystem) -> MarkingSpec:
        variable_format = self.variable_format()
        result_format = ResultFormat.for_system(system, variable_format, self.result_frac_bits)
        if self.lambda_ is not None:
            return MarkingSpec.from_lambda(self.lambda_, variable_format, result_format)
        threshold = self.threshold_log2 if self.threshold_log2 is not None else DEFAULT_THRESHOLD_LOG2
        return MarkingSpec.from_threshold_log2(threshold, variable_format, result_format)

    def amplify_spec(self, marking_spec: MarkingSpec) -> AmplifySpec:
        return AmplifySpec(
            mode=self.amplify,
            lambda_=marking_spec.lambda_,
            max_iterations=self.max_trials,
            shots=self.shots,
            seed=self.root_seed,
        )

    def gradient_config(self) -> GradientConfig:
        overrides = {
            "grid_bits": self.grid_bits,
            "alpha": self.alpha,
            "max_iters": self.max_iters if self.max_iters is not None else DEFAULT_MAX_ITERS,
            "accuracy_bits": self.accuracy_bits,
            "tol_gradnorm": Fraction(1, 2 ** self.accuracy_bits),
        }
        if self.window is not None:
            overrides["window"] = self.window
        return GradientConfig.for_variable_format(self.variable_format(), **overrides)

    def newton_config(self) -> NewtonConfig:
        return NewtonConfig(
            tol_residual=self.tol,
            max_iters=self.max_iters if self.max_iters is not None else NEWTON_MAX_ITERS,
            damping=self.damping,
        )
