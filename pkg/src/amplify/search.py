import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from src.amplify.amplify_spec import AmplifyMode, AmplifySpec
from src.amplify.grover import amplify, optimal_iterations, sqrt_lambda_iterations
from src.errors import SearchExhaustedError
from src.marking.impl.collapsed_marker import CollapsedMarker
from src.marking.marked_set import decode_index, variable_layout
from src.marking.marker import Marker
from src.marking.marking_spec import MarkingSpec, MarkReport
from src.polysys.polynomial_system import PolynomialSystem
from src.statesim.quantum_state import ZERO_PROBABILITY, QuantumState, init_uniform, measure

Point = Tuple[Fraction, ...]


def derived_seed(seed: int, *stream: int) -> int:
    """Independent, reproducible child seed for one sampling round."""
    return int(np.random.SeedSequence([seed, *stream]).generate_state(1)[0])


@dataclass
class SearchDiagnostics:
    """What happened during one search run.

    Attributes:
        mode: Amplification mode used.
        marked_count: M reported by the marker.
        total_states: T = 2^(N*n).
        iterations: Grover steps applied (0 in repeat mode).
        probability_trace: Marked-branch probability before each step and after the last.
        discards: Samples rejected because the post-selection check failed.
        draws: Total samples drawn, accepted or not.
        trial_counts: Trials per accepted shot in repeat mode.
    """
    mode: AmplifyMode
    marked_count: int
    total_states: int
    iterations: int = 0
    probability_trace: List[float] = field(default_factory=list)
    discards: int = 0
    draws: int = 0
    trial_counts: List[int] = field(default_factory=list)

    @property
    def final_probability(self) -> float:
        return self.probability_trace[-1] if self.probability_trace else 0.0


class SearchRunner:
    """Coarse-solution search: uniform init, marking, amplification, post-selected readout.

    The runner prepares the variable registers in uniform superposition, lets
    the marker identify the marked branch, amplifies it with the configured
    schedule (or skips amplification in repeat-until-success mode) and
    measures. A sample whose check oracles do not all pass is the case where
    the controls would not read |0...0>; it is discarded and redrawn.

    Attributes:
        marker (Marker): Marking strategy; collapsed by default.
        logger (logging.Logger): Logger instance for this class.
    """

    def __init__(self, marker: Optional[Marker] = None, threads: int = 1):
        self.marker = marker or CollapsedMarker(threads)
        self.logger = logging.getLogger(__name__)

    def run(self, system: PolynomialSystem, marking_spec: MarkingSpec,
            amplify_spec: AmplifySpec) -> Tuple[List[Point], SearchDiagnostics]:
        """Run the search and return accepted samples as decoded grid points.

        Raises:
            EmptyBranchError: If no grid point is marked.
            SearchExhaustedError: If too few marked samples appear within the
                configured number of rounds or trials.
        """
        initial = self.prepare(system, marking_spec)
        branch, report = self.mark(initial, system, marking_spec)
        return self.sample(initial, branch, report, system, marking_spec, amplify_spec)

    @staticmethod
    def prepare(system: PolynomialSystem, marking_spec: MarkingSpec) -> QuantumState:
        """Uniform superposition over the n variable registers."""
        layout = variable_layout(system.n, marking_spec.variable_format)
        return init_uniform(layout, layout.names)

    def mark(self, initial: QuantumState, system: PolynomialSystem,
             marking_spec: MarkingSpec) -> Tuple[QuantumState, MarkReport]:
        return self.marker.mark(initial, system, marking_spec)

    def sample(self, initial: QuantumState, branch: QuantumState, report: MarkReport,
               system: PolynomialSystem, marking_spec: MarkingSpec,
               amplify_spec: AmplifySpec) -> Tuple[List[Point], SearchDiagnostics]:
        """Amplify the marked branch (unless in repeat mode) and draw post-selected samples."""
        # the marked branch of the uniform state is supported exactly on the marked set
        mask = branch.probabilities() > ZERO_PROBABILITY

        diagnostics = SearchDiagnostics(
            mode=amplify_spec.mode,
            marked_count=report.marked_count,
            total_states=report.total_states,
        )
        if amplify_spec.mode is AmplifyMode.REPEAT_UNTIL_SUCCESS:
            raw_samples = self._repeat_until_success(initial, mask, amplify_spec, diagnostics)
        else:
            if amplify_spec.mode is AmplifyMode.EXACT_COUNT:
                steps = optimal_iterations(report.marked_count, report.total_states)
            else:
                steps = sqrt_lambda_iterations(amplify_spec.lambda_)
            amplified, trace = amplify(initial, mask, initial, steps)
            diagnostics.iterations = steps
            diagnostics.probability_trace = trace
            self.logger.info(
                f"Amplified {report.marked_count}/{report.total_states} marked states with {steps} "
                f"steps; marked probability {trace[0]:.6g} -> {trace[-1]:.6g}"
            )
            raw_samples = self._post_selected(amplified, mask, amplify_spec, diagnostics)

        points = [decode_index(k, system.n, marking_spec.variable_format) for k in raw_samples]
        return points, diagnostics

    @staticmethod
    def _flat(state: QuantumState, samples: List[Tuple[int, ...]]) -> List[int]:
        return [state.layout.flat_index(dict(zip(state.layout.names, s))) for s in samples]

    def _post_selected(self, state: QuantumState, mask: np.ndarray, spec: AmplifySpec,
                       diagnostics: SearchDiagnostics) -> List[int]:
        accepted: List[int] = []
        for round_index in range(spec.max_iterations):
            needed = spec.shots - len(accepted)
            draws = self._flat(state, measure(state, state.layout.names, needed, derived_seed(spec.seed, round_index)))
            diagnostics.draws += len(draws)
            for k in draws:
                if mask[k]:
                    accepted.append(k)
                else:
                    diagnostics.discards += 1
            if len(accepted) == spec.shots:
                self.logger.debug(f"Post-selection discarded {diagnostics.discards} of {diagnostics.draws} samples")
                return accepted
        raise SearchExhaustedError(
            f"only {len(accepted)} of {spec.shots} samples passed the ancilla check "
            f"after {spec.max_iterations} rounds"
        )

    def _repeat_until_success(self, initial: QuantumState, mask: np.ndarray, spec: AmplifySpec,
                              diagnostics: SearchDiagnostics) -> List[int]:
        diagnostics.probability_trace = [float(np.sum(np.abs(initial.amplitudes[mask]) ** 2))]
        accepted: List[int] = []
        for shot in range(spec.shots):
            trials = self._flat(initial, measure(initial, initial.layout.names, spec.max_iterations,
                                                 derived_seed(spec.seed, shot)))
            hits = [position for position, k in enumerate(trials) if mask[k]]
            if not hits:
                raise SearchExhaustedError(
                    f"shot {shot} found no marked state in {spec.max_iterations} trials"
                )
            first = hits[0]
            accepted.append(trials[first])
            diagnostics.trial_counts.append(first + 1)
            diagnostics.discards += first
            diagnostics.draws += first + 1
        mean = sum(diagnostics.trial_counts) / len(diagnostics.trial_counts)
        self.logger.info(f"Repeat-until-success: {spec.shots} shots, mean {mean:.3f} trials per success")
        return accepted


def run_search(system: PolynomialSystem, marking_spec: MarkingSpec, amplify_spec: AmplifySpec,
               marker: Optional[Marker] = None, threads: int = 1) -> Tuple[List[Point], SearchDiagnostics]:
    return SearchRunner(marker, threads).run(system, marking_spec, amplify_spec)
