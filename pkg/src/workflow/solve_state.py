from fractions import Fraction
from typing import Dict, List, Optional, Tuple, TypedDict

from src.amplify.amplify_spec import AmplifySpec
from src.amplify.search import SearchDiagnostics
from src.gradient.gradient_config import GradientConfig
from src.gradient.gradient_source import GradientSourceKind
from src.marking.marking_spec import MarkingSpec, MarkReport
from src.polysys.polynomial_system import PolynomialSystem
from src.resources.estimator import ResourceEstimate, ResourceParams
from src.statesim.quantum_state import QuantumState


class SolveState(TypedDict):
    system: PolynomialSystem  # The parsed square system
    marking_spec: MarkingSpec  # Variable/result formats and check threshold
    amplify_spec: AmplifySpec  # Amplification mode, shots and seed
    gradient_config: GradientConfig  # Descent and gradient-estimation settings
    gradient_kind: GradientSourceKind  # analytic or simulated gradient
    initial_state: Optional[QuantumState]  # Uniform superposition over the variable registers
    marked_branch: Optional[QuantumState]  # Renormalized marked branch
    mark_report: Optional[MarkReport]
    samples: List[Tuple[Fraction, ...]]  # Post-selected readouts in draw order
    diagnostics: Optional[SearchDiagnostics]
    candidates: List[Tuple[Fraction, ...]]  # Distinct readouts, sorted
    sample_counts: Dict[Tuple[Fraction, ...], int]
    refined: List  # RefinedCandidate per candidate
    resource_params: Optional[ResourceParams]
    resources: Optional[ResourceEstimate]
    newton_crossover: Optional[int]
    timings: Dict[str, float]  # Seconds per stage
    error: Optional[str]  # Set when the pipeline ends without candidates


def initial_solve_state(system: PolynomialSystem, marking_spec: MarkingSpec, amplify_spec: AmplifySpec,
                        gradient_config: GradientConfig,
                        gradient_kind: GradientSourceKind = GradientSourceKind.ANALYTIC) -> SolveState:
    return {
        "system": system,
        "marking_spec": marking_spec,
        "amplify_spec": amplify_spec,
        "gradient_config": gradient_config,
        "gradient_kind": GradientSourceKind(gradient_kind),
        "initial_state": None,
        "marked_branch": None,
        "mark_report": None,
        "samples": [],
        "diagnostics": None,
        "candidates": [],
        "sample_counts": {},
        "refined": [],
        "resource_params": None,
        "resources": None,
        "newton_crossover": None,
        "timings": {},
        "error": None,
    }
