"""Exact and closed-form distinguishability for single-photon illumination.

The package builds the target-present and target-absent channel outputs for
an entangled signal/idler probe, computes the exact minimum discrimination
error (trace-norm diagonalization, with the optimal measurement) and the
normalized Hilbert-Schmidt overlap with its closed form in the physical
parameters, and verifies monotonicity and the optimality of the maximally
entangled probe numerically.
"""

from .linalg import (
    DEFAULT_TOL,
    EigenDecomposition,
    approx_equal,
    dagger,
    eigh,
    eigvalsh,
    kron,
    max_abs_diff,
    partial_trace,
    trace_norm,
)
from .states import (
    BipartiteState,
    DensityMatrix,
    SchmidtData,
    bell_state,
    density_from_dict,
    density_to_dict,
    effective_rank_k,
    haar_random_state,
    idler_reduction,
    schmidt,
    schmidt_family_state,
    signal_reduction,
    state_from_dict,
    state_to_dict,
)
from .illumination import (
    IlluminationScenario,
    ci_baseline,
    remaining_state_full,
    remaining_state_post_selected,
    returned_state_full,
    returned_state_post_selected,
)
from .discrimination import (
    DiscriminationProblem,
    Povm,
    advantage,
    h01_closed_form,
    h01_direct,
    helstrom_error,
    hs_distinguishability,
    optimal_povm,
    povm_error,
)
from .analysis import (
    MonotonicityReport,
    OptimalityReport,
    SpectrumProbeReport,
    StateFamily,
    SweepRecord,
    bell_family,
    co_monotonicity_violations,
    evaluate_state_metrics,
    fixed_spectrum_family,
    run_sweep,
    spectra_with_effective_rank,
    spectrum_dependence_probe,
    uniform_rank_family,
    verify_bell_optimality,
    verify_monotonicity,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "EigenDecomposition",
    "approx_equal",
    "dagger",
    "eigh",
    "eigvalsh",
    "kron",
    "max_abs_diff",
    "partial_trace",
    "trace_norm",
    "BipartiteState",
    "DensityMatrix",
    "SchmidtData",
    "bell_state",
    "density_from_dict",
    "density_to_dict",
    "effective_rank_k",
    "haar_random_state",
    "idler_reduction",
    "schmidt",
    "schmidt_family_state",
    "signal_reduction",
    "state_from_dict",
    "state_to_dict",
    "IlluminationScenario",
    "ci_baseline",
    "remaining_state_full",
    "remaining_state_post_selected",
    "returned_state_full",
    "returned_state_post_selected",
    "DiscriminationProblem",
    "Povm",
    "advantage",
    "h01_closed_form",
    "h01_direct",
    "helstrom_error",
    "hs_distinguishability",
    "optimal_povm",
    "povm_error",
    "MonotonicityReport",
    "OptimalityReport",
    "SpectrumProbeReport",
    "StateFamily",
    "SweepRecord",
    "bell_family",
    "co_monotonicity_violations",
    "evaluate_state_metrics",
    "fixed_spectrum_family",
    "run_sweep",
    "spectra_with_effective_rank",
    "spectrum_dependence_probe",
    "uniform_rank_family",
    "verify_bell_optimality",
    "verify_monotonicity",
]
