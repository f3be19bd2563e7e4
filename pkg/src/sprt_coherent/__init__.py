"""Sequential probability ratio tests on batches of coherent states."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("sprt-coherent")
except PackageNotFoundError:  # pragma: no cover - source checkout
    __version__ = "0.1.0"

from .sprt_core import (
    ErrorBudget, ExhaustedInputError, InvalidBudgetError, SprtTrajectory, SprtVerdict,
    WaldThresholds, run_sprt, sprt_step, total_success, wald_thresholds,
)
from .gaussian_hypotheses import (
    DegenerateModelError, GaussianHypotheses, HorizonStopProbabilities, erf, gaussian_z,
    stop_prob_h0, stop_prob_h0_exact, stop_prob_h1, stop_prob_h1_exact,
)
from .coherent_optics import (
    BeamSplitterSpec, CoherentAmplitude, HomodyneModel, accumulate, accumulation_chain,
    batch_hypotheses, beam_splitter, homodyne_model_for,
)
from .batch_strategy import (
    BatchAnalysis, BatchProblem, CaseClass, SuccessReport, SymmetricDegenerateError, analyze,
    classify_case, l_bounds, l_opt_closed_form, optimize_batch, success_curve,
    success_probability, y_a, y_b,
)
from .unambiguous import (
    DivisibilityError, QubitPair, batched_success_unambiguous, success_unambiguous,
)
from .montecarlo import (
    EstimateWithCI, SimulationConfig, SimulationResult, estimate_first_crossing_prob,
    estimate_horizon_prob, mean_path, run_simulation, sample_batched_trajectory, trajectory_rng,
)
