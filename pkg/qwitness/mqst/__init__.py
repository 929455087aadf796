# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Marked-state distinguishing experiments package initializer."""

from ._bounds import (
    BoundValue,
    hybrid_bound,
    indist_bound,
    long_form_bound,
    single_query_distance,
)
from ._distinguish import (
    NAMED_STRATEGIES,
    DistinguishRun,
    Step,
    amplitude_amplification,
    apply_step,
    near_marked_probe,
    random_strategy,
    run_mqst_distinguish,
    state_preparation_unitary,
    superposition_probe,
)
from ._overlap import (
    marginal,
    overlap_after_phase_flip,
    overlap_by_simulation,
    phase_flip_overlap_eigen,
)
from ._search import (
    MAX_SEARCH_WIDTH,
    ScalingRow,
    classical_search_queries,
    grover_iterations,
    grover_query_scaling,
    grover_search,
    grover_success_probability,
)

__all__ = [
    "MAX_SEARCH_WIDTH",
    "NAMED_STRATEGIES",
    "BoundValue",
    "DistinguishRun",
    "ScalingRow",
    "Step",
    "amplitude_amplification",
    "apply_step",
    "classical_search_queries",
    "grover_iterations",
    "grover_query_scaling",
    "grover_search",
    "grover_success_probability",
    "hybrid_bound",
    "indist_bound",
    "long_form_bound",
    "marginal",
    "near_marked_probe",
    "overlap_after_phase_flip",
    "overlap_by_simulation",
    "phase_flip_overlap_eigen",
    "random_strategy",
    "run_mqst_distinguish",
    "single_query_distance",
    "state_preparation_unitary",
    "superposition_probe",
]
