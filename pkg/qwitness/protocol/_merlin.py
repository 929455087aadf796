# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Honest and cheating provers, and transmission noise on their blocks."""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from qwitness.oracles import orthogonal_partner
from qwitness.sim import (
    Circuit,
    ProductState,
    PureState,
    apply_circuit,
    haar_random_state,
    measure_qubits,
)

from ._messages import ClassicalBroadcast, QuantumPayload
from ._server import conditional_half

logger = logging.getLogger(__name__)

DishonestKind = Literal["haar", "vacuum", "permuted"]
"""Cheating strategies; ``random-haar`` and ``wrong-index`` are aliases."""

_ALIASES = {"random-haar": "haar", "wrong-index": "permuted"}


def canonical_strategy(name: str) -> str:
    """Resolve a prover strategy alias.

    Parameters
    ----------
    name : str
        ``honest``, a cheating kind or one of its aliases.

    Returns
    -------
    str
        The canonical name.

    Raises
    ------
    ValueError
        If the name is unknown.
    """
    kind = _ALIASES.get(name, name)
    if kind not in ("honest", "haar", "vacuum", "permuted"):
        raise ValueError(f"Unsupported prover strategy: {name}")
    return kind


@dataclass(frozen=True)
class MerlinFailure:
    """The honest prover ran out of shots."""

    attempts: tuple[int, ...]
    shots_used: int
    shot_budget: int

    @property
    def reason(self) -> str:
        """Return a one-line description."""
        return (
            f"shot budget {self.shot_budget} exhausted after "
            f"{len(self.attempts)} block(s)"
        )


@dataclass(frozen=True)
class MerlinWitness:
    """A witness ready to hand over, with the cost of producing it."""

    payload: QuantumPayload
    attempts: tuple[int, ...]
    shots_used: int


def _reconstruct(
    message: ClassicalBroadcast,
) -> list[tuple[PureState, float]]:
    n = message.n
    zero = PureState.zero(2 * n)
    return [
        conditional_half(apply_circuit(zero, circuit), n, outcome)
        for circuit, outcome in zip(
            message.circuits, message.outcomes, strict=True
        )
    ]


def _with_answer_qubit(blocks: list[PureState]) -> ProductState:
    return ProductState(tuple(blocks) + (PureState.zero(1),))


def _rerun_until(
    circuit: Circuit,
    outcome: str,
    n: int,
    budget: int,
    rng: np.random.Generator,
) -> tuple[PureState | None, int]:
    # c_j is fixed, so every rerun prepares the same 2n-qubit state
    prepared = apply_circuit(PureState.zero(2 * n), circuit)
    for shot in range(1, budget + 1):
        bits, collapsed = measure_qubits(prepared, range(n), rng)
        if bits == outcome:
            return conditional_half(collapsed, n, outcome)[0], shot
    return None, budget


def merlin_honest(
    message: ClassicalBroadcast, shot_budget: int, rng: np.random.Generator
) -> MerlinWitness | MerlinFailure:
    """Rebuild every marked state by rerunning ``c_j`` until ``m_j`` shows.

    Each shot prepares ``c_j |0>``, measures the first ``n`` qubits and
    keeps the second half when the reading is ``m_j``. All blocks share
    the budget.

    Parameters
    ----------
    message : ClassicalBroadcast
        The public broadcast.
    shot_budget : int
        Total shots allowed.
    rng : np.random.Generator
        The prover's stream.

    Returns
    -------
    MerlinWitness | MerlinFailure
        The witness, or the attempts made before the budget ran out.
    """
    attempts: list[int] = []
    blocks = []
    used = 0
    for circuit, outcome in zip(
        message.circuits, message.outcomes, strict=True
    ):
        half, shots = _rerun_until(
            circuit, outcome, message.n, shot_budget - used, rng
        )
        used += shots
        attempts.append(shots)
        if half is None:
            failure = MerlinFailure(tuple(attempts), used, shot_budget)
            logger.info("honest prover failed: %s", failure.reason)
            return failure
        blocks.append(half)
    logger.debug("honest prover used %d shots: %s", used, attempts)
    return MerlinWitness(
        payload=QuantumPayload(_with_answer_qubit(blocks)),
        attempts=tuple(attempts),
        shots_used=used,
    )


def merlin_dishonest(
    strategy: str, message: ClassicalBroadcast, rng: np.random.Generator
) -> MerlinWitness:
    """Build a cheating witness.

    ``haar`` sends Haar-random blocks, ``vacuum`` sends ``|0...0>``
    blocks and ``permuted`` sends the right states in the wrong order.

    Parameters
    ----------
    strategy : str
        ``haar``, ``vacuum`` or ``permuted`` (or an alias).
    message : ClassicalBroadcast
        The public broadcast.
    rng : np.random.Generator
        The prover's stream.

    Returns
    -------
    MerlinWitness
        The witness; no shots are counted.

    Raises
    ------
    ValueError
        If the strategy is unknown.
    """
    kind = canonical_strategy(strategy)
    n = message.n
    if kind == "haar":
        blocks = [haar_random_state(n, rng) for _ in range(n)]
    elif kind == "vacuum":
        blocks = [PureState.zero(n) for _ in range(n)]
    elif kind == "permuted":
        honest = [half for half, _ in _reconstruct(message)]
        # a cyclic shift moves every block when n > 1
        blocks = honest[1:] + honest[:1]
    else:
        raise ValueError(f"{strategy} is not a cheating strategy")
    return MerlinWitness(
        payload=QuantumPayload(_with_answer_qubit(blocks)),
        attempts=(),
        shots_used=0,
    )


def apply_block_noise(
    register: ProductState,
    marked: tuple[PureState, ...],
    delta: float,
    rng: np.random.Generator,
) -> tuple[ProductState, int]:
    """Replace each block by a state orthogonal to its target w.p. ``delta``.

    An exact block then passes its swap test with probability
    ``(1 + (1 - delta)) / 2`` on average.

    Parameters
    ----------
    register : ProductState
        Blocks followed by the answer qubit.
    marked : tuple[PureState, ...]
        The states the blocks are tested against.
    delta : float
        Per-block fidelity loss in ``[0, 1]``.
    rng : np.random.Generator
        The noise stream.

    Returns
    -------
    tuple[ProductState, int]
        The noisy register and how many blocks were hit.

    Raises
    ------
    ValueError
        If ``delta`` is outside ``[0, 1]``.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    if delta == 0.0:
        return register, 0
    *blocks, answer = register.blocks
    hit = 0
    for j, reference in enumerate(marked):
        if rng.random() < delta:
            blocks[j] = orthogonal_partner(reference)
            hit += 1
    return ProductState(tuple(blocks) + (answer,)), hit
