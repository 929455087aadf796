# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Phase-flip oracle about a hidden marked state."""

from typing import Sequence

import numpy as np

from qwitness.sim import ComplexArray, PureState

from ._base import BaseOracle, from_target_rows, target_rows


class MarkedStateOracle(BaseOracle):
    """``V = 1 - 2|psi><psi|`` when active, the identity otherwise.

    Parameters
    ----------
    marked : PureState
        The hidden state.
    active : bool, optional
        Whether the oracle flips the marked phase, by default True.
    """

    kind = "marked"

    def __init__(self, marked: PureState, active: bool = True) -> None:
        super().__init__()
        self.marked = marked
        self.active = active

    @property
    def n(self) -> int:
        """Return the width of the marked state."""
        return self.marked.n_qubits

    def reflect(
        self, amplitudes: ComplexArray, targets: Sequence[int]
    ) -> ComplexArray:
        """Apply the oracle map to raw amplitudes without counting.

        Parameters
        ----------
        amplitudes : ComplexArray
            The flat amplitudes of the whole register.
        targets : Sequence[int]
            The ``n`` qubits holding the marked subsystem.

        Returns
        -------
        ComplexArray
            The new amplitudes.

        Raises
        ------
        ValueError
            If the targets do not span ``n`` distinct qubits.
        """
        targets = list(targets)
        n_qubits = amplitudes.size.bit_length() - 1
        if len(targets) != self.n or len(set(targets)) != self.n:
            raise ValueError(
                f"marked oracle needs {self.n} distinct targets, got {targets}"
            )
        if min(targets) < 0 or max(targets) >= n_qubits:
            raise ValueError(f"targets {targets} outside width {n_qubits}")
        if not self.active:
            return amplitudes
        rows, axes = target_rows(amplitudes, targets)
        psi = self.marked.amplitudes
        overlap = psi.conj() @ rows
        return from_target_rows(rows - 2.0 * np.outer(psi, overlap), axes)


def apply_marked(
    oracle: MarkedStateOracle,
    state: PureState,
    targets: Sequence[int] | None = None,
) -> PureState:
    """Query the marked-state oracle once on a subsystem.

    Parameters
    ----------
    oracle : MarkedStateOracle
        The oracle.
    state : PureState
        The register.
    targets : Sequence[int] | None, optional
        The marked subsystem, by default the first ``n`` qubits.

    Returns
    -------
    PureState
        The output.
    """
    span = range(oracle.n) if targets is None else targets
    amplitudes = oracle.reflect(state.amplitudes, span)
    oracle.record_query()
    return PureState(amplitudes)


def orthogonal_partner(candidate: PureState) -> PureState:
    """Return a fixed unit vector orthogonal to ``candidate``.

    Parameters
    ----------
    candidate : PureState
        The state.

    Returns
    -------
    PureState
        The basis vector least aligned with ``candidate``, with the
        ``candidate`` component projected out.
    """
    psi = candidate.amplitudes
    seed = np.zeros_like(psi)
    seed[int(np.argmin(np.abs(psi)))] = 1.0
    return PureState.from_amplitudes(seed - np.vdot(psi, seed) * psi)


def case_one_acceptance(
    oracle: MarkedStateOracle, candidate: PureState
) -> float:
    """Return the exact acceptance probability of :func:`verify_case_one`.

    Parameters
    ----------
    oracle : MarkedStateOracle
        The oracle; no query is counted.
    candidate : PureState
        The claimed marked state.

    Returns
    -------
    float
        The probability of landing on the flipped branch.
    """
    gamma = orthogonal_partner(candidate).amplitudes
    c = candidate.amplitudes
    probe = (c + gamma) / np.sqrt(2)
    flipped = (c - gamma) / np.sqrt(2)
    out = oracle.reflect(probe, range(oracle.n))
    return float(min(1.0, abs(np.vdot(flipped, out)) ** 2))


def verify_case_one(
    oracle: MarkedStateOracle, candidate: PureState, rng: np.random.Generator
) -> bool:
    """Check a claimed marked state with a single query.

    Prepares ``(|c> + |g>)/sqrt(2)`` for ``g`` orthogonal to the
    candidate, queries once and measures in the
    ``{(c + g)/sqrt(2), (c - g)/sqrt(2)}`` frame.

    Parameters
    ----------
    oracle : MarkedStateOracle
        The oracle.
    candidate : PureState
        The claimed marked state, of width ``n``.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    bool
        True if the measurement lands on the flipped branch.

    Raises
    ------
    ValueError
        If the candidate has the wrong width.
    """
    if candidate.n_qubits != oracle.n:
        raise ValueError(
            f"candidate width {candidate.n_qubits} != oracle width {oracle.n}"
        )
    probability = case_one_acceptance(oracle, candidate)
    oracle.record_query()
    accepted = bool(rng.random() < probability)
    oracle.logger.debug(
        "case-one check p=%.6f accepted=%s", probability, accepted
    )
    return accepted
