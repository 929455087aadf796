# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Base class and protocol for oracles."""

import logging
import threading
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

from qwitness.sim import ComplexArray


@runtime_checkable
class Oracle(Protocol):
    """Protocol for a black box that counts its own queries."""

    kind: str

    @property
    def queries(self) -> int:
        """Return the number of queries made so far."""

    def reset_queries(self) -> None:
        """Set the query counter back to zero."""


class BaseOracle:
    """Query accounting shared by every oracle family.

    Counters are guarded by a lock so concurrent trials sharing one
    oracle instance never lose an increment.
    """

    kind = "base"

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)
        self._queries = 0
        self._lock = threading.Lock()

    @property
    def queries(self) -> int:
        """Return the number of queries made so far."""
        with self._lock:
            return self._queries

    def reset_queries(self) -> None:
        """Set the query counter back to zero."""
        with self._lock:
            self._queries = 0

    def record_query(self) -> None:
        """Count one query."""
        with self._lock:
            self._queries += 1


def target_rows(
    amplitudes: ComplexArray, targets: Sequence[int]
) -> tuple[ComplexArray, list[int]]:
    """View a register as rows indexed by the ``targets`` subsystem.

    Parameters
    ----------
    amplitudes : ComplexArray
        The flat amplitudes.
    targets : Sequence[int]
        The subsystem, most significant first.

    Returns
    -------
    tuple[ComplexArray, list[int]]
        A ``(2^k, rest)`` matrix and the axis list to undo the view.
    """
    n_qubits = amplitudes.size.bit_length() - 1
    psi = amplitudes.reshape((2,) * n_qubits)
    psi = np.moveaxis(psi, list(targets), list(range(len(targets))))
    return psi.reshape(2 ** len(targets), -1), list(targets)


def from_target_rows(rows: ComplexArray, targets: list[int]) -> ComplexArray:
    """Undo :func:`target_rows`.

    Parameters
    ----------
    rows : ComplexArray
        The ``(2^k, rest)`` matrix.
    targets : list[int]
        The subsystem used to build it.

    Returns
    -------
    ComplexArray
        The flat amplitudes.
    """
    n_qubits = rows.size.bit_length() - 1
    psi = rows.reshape((2,) * n_qubits)
    psi = np.moveaxis(psi, list(range(len(targets))), targets)
    return np.ascontiguousarray(psi).reshape(-1)
