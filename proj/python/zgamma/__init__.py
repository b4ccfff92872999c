# Copyright 2026 zgamma contributors
# SPDX-License-Identifier: Apache-2.0
"""Joint measurement of the two-boson operator a1 + gamma a2^dag.

Thin python surface over the C++ core: network decomposition, outcome
statistics via characteristic functions, noise accounting, heterodyne
application and the truncated-Fock verification suite.
"""

from zgamma._core import (  # noqa: F401
    Coherent,
    CoverageError,
    DomainError,
    GammaParam,
    GaussianSingleMode,
    GridSpec,
    MixingMatrix,
    Moments,
    NoiseBudget,
    NoiseExcessReport,
    NumberDiagonal,
    OutcomeGrid,
    PhaseReport,
    QuadStats,
    RelativeNumberReport,
    Su2Plan,
    ToleranceError,
    TruncationError,
    TruncationSpec,
    Vacuum,
    __version__,
    auto_grid,
    build_mixing_matrix,
    caves_gamma,
    char_fn,
    compose_plan,
    convolution_density,
    decompose,
    empirical_moments,
    feasible_phase,
    h_density,
    heisenberg_check,
    identity_defect_deviation,
    joint_density_oracle,
    laguerre_weighted_sum,
    moment_generating_fn,
    noise_budget,
    noise_excess_check,
    normality_deviation,
    outcome_density,
    predicted_moments,
    prep,
    quad_stats,
    reduce_gamma,
    relative_number_checks,
    sample_outcomes,
    su2_block,
    wigner,
)
