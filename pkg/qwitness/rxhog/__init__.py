# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Rotated heavy-output generation package initializer."""

from ._gates import (
    PrecisionBits,
    build_cph,
    build_crot,
    check_precision,
    controlled_action,
    precision_for_error,
)
from ._prepare import (
    Preparation,
    classical_z_sampler,
    preparation_error_bound,
    prepare_via_oracle,
)
from ._solvers import (
    ClassicalStrategy,
    RxhogRun,
    StrategyKind,
    classical_rxhog_solver,
    coefficient_table,
    draw_distinct,
    expected_distinct_score,
    quantum_rxhog_solver,
    rotated_concentration,
    rotated_probabilities,
    rxhog_score,
)

__all__ = [
    "ClassicalStrategy",
    "PrecisionBits",
    "Preparation",
    "RxhogRun",
    "StrategyKind",
    "build_cph",
    "build_crot",
    "check_precision",
    "classical_rxhog_solver",
    "classical_z_sampler",
    "coefficient_table",
    "controlled_action",
    "draw_distinct",
    "expected_distinct_score",
    "precision_for_error",
    "preparation_error_bound",
    "prepare_via_oracle",
    "quantum_rxhog_solver",
    "rotated_concentration",
    "rotated_probabilities",
    "rxhog_score",
]
