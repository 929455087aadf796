# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Statevector simulation core."""

from ._circuit import (
    ENUMERABLE_KINDS,
    KIND_RANK,
    Circuit,
    GateKind,
    GateOp,
    apply_circuit,
    apply_controlled_swap,
    apply_matrix,
    apply_op,
    apply_ops,
    arity,
    gate_matrix,
    hadamard_all,
    parse_gate_set,
    random_circuit,
)
from ._measures import (
    fidelity,
    maximally_mixed,
    partial_trace,
    purity,
    trace_distance,
    trace_distance_pure,
)
from ._sampling import (
    haar_random_amplitudes,
    haar_random_state,
    haar_random_unitary,
    measure_qubits,
    outcome_probabilities,
    swap_test,
    swap_test_pass_probability,
)
from ._state import (
    ComplexArray,
    DensityOperator,
    ProductState,
    PureState,
    Unitary,
    check_capacity,
)

__all__ = [
    "ENUMERABLE_KINDS",
    "KIND_RANK",
    "Circuit",
    "ComplexArray",
    "DensityOperator",
    "GateKind",
    "GateOp",
    "ProductState",
    "PureState",
    "Unitary",
    "apply_circuit",
    "apply_controlled_swap",
    "apply_matrix",
    "apply_op",
    "apply_ops",
    "arity",
    "check_capacity",
    "fidelity",
    "gate_matrix",
    "haar_random_amplitudes",
    "haar_random_state",
    "haar_random_unitary",
    "hadamard_all",
    "maximally_mixed",
    "measure_qubits",
    "outcome_probabilities",
    "parse_gate_set",
    "partial_trace",
    "purity",
    "random_circuit",
    "swap_test",
    "swap_test_pass_probability",
    "trace_distance",
    "trace_distance_pure",
]
