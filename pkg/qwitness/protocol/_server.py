# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""The server: random circuits, measured halves and the hidden coin."""

from dataclasses import dataclass

import numpy as np

from qwitness.sim import (
    Circuit,
    PureState,
    apply_circuit,
    measure_qubits,
    random_circuit,
)

from ._messages import ClassicalBroadcast


@dataclass(frozen=True)
class ServerRecord:
    """The server's private record of one protocol instance.

    ``marked[j]`` is the state left on the second half after ``c_j``
    ran on ``|0>^{2n}`` and the first half read ``m_j``.
    """

    n: int
    kappa: float
    depth: int
    circuits: tuple[Circuit, ...]
    outcomes: tuple[str, ...]
    marked: tuple[PureState, ...]
    outcome_probabilities: tuple[float, ...]
    language_bit: bool


def conditional_half(
    state: PureState, n: int, outcome: str
) -> tuple[PureState, float]:
    """Return the second-half state given the first half reads ``outcome``.

    Parameters
    ----------
    state : PureState
        A ``2n``-qubit state.
    n : int
        Half width.
    outcome : str
        The ``n``-bit outcome.

    Returns
    -------
    tuple[PureState, float]
        The renormalized half and the outcome probability.

    Raises
    ------
    ValueError
        If the outcome has probability zero.
    """
    row = state.amplitudes.reshape(2**n, 2**n)[int(outcome, 2)]
    probability = float(np.vdot(row, row).real)
    if probability <= 0.0:
        raise ValueError(f"outcome {outcome} has probability zero")
    return PureState(row / np.sqrt(probability)), probability


def server_generate(
    n: int,
    depth: int,
    kappa: float,
    rng: np.random.Generator,
    language_bit: bool | None = None,
    gate_set: tuple[str, ...] = ("H", "T", "CNOT"),
) -> ServerRecord:
    """Run ``n`` random circuits on ``2n`` qubits and measure the first half.

    Parameters
    ----------
    n : int
        Marked-state width and number of blocks.
    depth : int
        Gates per circuit.
    kappa : float
        Pass fraction for the channel.
    rng : np.random.Generator
        The server's private stream.
    language_bit : bool | None, optional
        Fix membership of ``n``; by default a fair coin from ``rng``.
    gate_set : tuple[str, ...], optional
        Circuit gate kinds, by default ``H, T, CNOT``.

    Returns
    -------
    ServerRecord
        The record.

    Raises
    ------
    ValueError
        If ``n`` or ``depth`` is below 1.
    """
    if n < 1 or depth < 1:
        raise ValueError(f"need n >= 1 and depth >= 1, got {n}, {depth}")
    circuits, outcomes, marked, probabilities = [], [], [], []
    zero = PureState.zero(2 * n)
    for _ in range(n):
        circuit = random_circuit(2 * n, depth, rng, gate_set)
        state = apply_circuit(zero, circuit)
        outcome, _ = measure_qubits(state, range(n), rng)
        half, probability = conditional_half(state, n, outcome)
        circuits.append(circuit)
        outcomes.append(outcome)
        marked.append(half)
        probabilities.append(probability)
    if language_bit is None:
        language_bit = bool(rng.integers(2))
    return ServerRecord(
        n=n,
        kappa=kappa,
        depth=depth,
        circuits=tuple(circuits),
        outcomes=tuple(outcomes),
        marked=tuple(marked),
        outcome_probabilities=tuple(probabilities),
        language_bit=language_bit,
    )


def broadcast(record: ServerRecord) -> ClassicalBroadcast:
    """Publish the circuit descriptions and outcomes.

    Parameters
    ----------
    record : ServerRecord
        The server's record.

    Returns
    -------
    ClassicalBroadcast
        The public message; it has no field for membership or states.
    """
    return ClassicalBroadcast(
        sender="server",
        receiver="all",
        n=record.n,
        kappa=record.kappa,
        circuits=list(record.circuits),
        outcomes=list(record.outcomes),
    )
