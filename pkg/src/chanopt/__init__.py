"""chanopt: cost-optimal quantum channels.

Given a Hermitian cost matrix on a composite input/output system and a
set of prescribed input -> output state pairs, this package solves for
the cheapest completely positive trace-preserving map (as a Choi state),
decomposes it into elementary transitions, and reports per-transition
cost, support and entanglement diagnostics.
"""

from .choi import (
    ChoiState,
    ElementaryTransition,
    KrausChannel,
    TransitionDiagnostics,
    apply_choi_matrix,
    apply_via_choi,
    channel_to_choi,
    decompose_elementary,
    is_channel,
    maximally_entangled_vector,
    pure_transition,
    transition_diagnostics,
    transition_support,
)
from .costs import (
    CostMatrix,
    CostSpanWarning,
    GeneratorSet,
    cost_from_pure_mixture,
    cost_observable_difference,
    cost_quadratic_generators,
    energy_cost,
    fourier_matrix,
    gate_time_cost,
    generates_full_algebra,
    schwinger_generator_set,
    schwinger_pair,
    spin_generator_set,
)
from .diagnostics import (
    ReportSummary,
    TransitionReport,
    entanglement_entropy,
    full_report,
    report_transition,
    schmidt,
)
from .estimator import OptimalChannelTransport
from .linalg import (
    EigenDecomposition,
    devectorize_hermitian,
    eig_hermitian,
    frobenius_inner,
    kron,
    partial_trace,
    partial_transpose_a,
    psd_project,
    vectorize_hermitian,
)
from .solver import (
    AffineSystem,
    Solution,
    SolverOptions,
    Status,
    TransportProblem,
    VerificationReport,
    build_affine_system,
    feasible_sample,
    solve,
    verify_solution,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSystem",
    "ChoiState",
    "CostMatrix",
    "CostSpanWarning",
    "EigenDecomposition",
    "ElementaryTransition",
    "GeneratorSet",
    "KrausChannel",
    "OptimalChannelTransport",
    "ReportSummary",
    "Solution",
    "SolverOptions",
    "Status",
    "TransitionDiagnostics",
    "TransitionReport",
    "TransportProblem",
    "VerificationReport",
    "apply_choi_matrix",
    "apply_via_choi",
    "build_affine_system",
    "channel_to_choi",
    "cost_from_pure_mixture",
    "cost_observable_difference",
    "cost_quadratic_generators",
    "decompose_elementary",
    "devectorize_hermitian",
    "eig_hermitian",
    "energy_cost",
    "entanglement_entropy",
    "feasible_sample",
    "fourier_matrix",
    "frobenius_inner",
    "full_report",
    "gate_time_cost",
    "generates_full_algebra",
    "is_channel",
    "kron",
    "maximally_entangled_vector",
    "partial_trace",
    "partial_transpose_a",
    "psd_project",
    "pure_transition",
    "report_transition",
    "schmidt",
    "schwinger_generator_set",
    "schwinger_pair",
    "solve",
    "spin_generator_set",
    "transition_diagnostics",
    "transition_support",
    "vectorize_hermitian",
    "verify_solution",
]
