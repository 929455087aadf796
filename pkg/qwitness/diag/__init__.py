# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Hard-state enumeration package initializer."""

from ._counting import (
    avoidance_frequency,
    exponential_count_bound,
    min_hard_state_count,
    random_avoidance_probability,
)
from ._enumerate import count_circuits, enumerate_circuits, gate_placements
from ._statediag import (
    BudgetExhausted,
    EnumerationConfig,
    HardStateRecord,
    avoided_marginals,
    state_diag,
    verify_hard_state,
)

__all__ = [
    "BudgetExhausted",
    "EnumerationConfig",
    "HardStateRecord",
    "avoidance_frequency",
    "avoided_marginals",
    "count_circuits",
    "enumerate_circuits",
    "exponential_count_bound",
    "gate_placements",
    "min_hard_state_count",
    "random_avoidance_probability",
    "state_diag",
    "verify_hard_state",
]
