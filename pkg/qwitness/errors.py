# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Exceptions raised by the simulation laboratory.

Rejected inputs raise plain ``ValueError``; the classes here cover the
resource and single-use contracts.
"""


class CapacityError(RuntimeError):
    """A register is wider than a configured cap."""

    def __init__(
        self, n_qubits: int, max_qubits: int, cap: str = "statevector cap"
    ) -> None:
        super().__init__(f"{n_qubits} qubits exceeds the {cap} of {max_qubits}")
        self.n_qubits = n_qubits
        self.max_qubits = max_qubits


class OracleConsumedError(RuntimeError):
    """A single-use oracle was called a second time."""


class NoCloningError(RuntimeError):
    """A quantum payload was read after it had been moved."""
