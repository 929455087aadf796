# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""The phase-flip overlap identity in its marginal and eigen forms."""

from typing import Sequence

import numpy as np

from qwitness.config import settings
from qwitness.oracles import MarkedStateOracle, target_rows
from qwitness.sim import DensityOperator, PureState, fidelity


def _check_orthonormal(marked: Sequence[PureState]) -> None:
    if not marked:
        raise ValueError("marked set is empty")
    widths = {state.n_qubits for state in marked}
    if len(widths) != 1:
        raise ValueError(f"marked states have mixed widths {sorted(widths)}")
    matrix = np.stack([state.amplitudes for state in marked])
    gram = matrix.conj() @ matrix.T
    if np.max(np.abs(gram - np.eye(len(marked)))) > settings.tolerance:
        raise ValueError("marked states are not mutually orthogonal")


def marginal(state: PureState, targets: Sequence[int]) -> DensityOperator:
    """Return the reduced state on ``targets`` in the given order.

    Parameters
    ----------
    state : PureState
        The joint state.
    targets : Sequence[int]
        Kept qubits; the first is the most significant.

    Returns
    -------
    DensityOperator
        The marginal.
    """
    rows, _ = target_rows(state.amplitudes, list(targets))
    rho = rows @ rows.conj().T
    return DensityOperator((rho + rho.conj().T) / 2)


def overlap_after_phase_flip(
    phi: PureState,
    marked: Sequence[PureState],
    targets: Sequence[int] | None = None,
) -> float:
    """Return ``1 - 2 sum_j F(rho, psi_j)`` for the marginal ``rho``.

    This equals ``<phi|(V ⊗ 1)|phi>`` where ``V`` flips the sign of
    every marked state.

    Parameters
    ----------
    phi : PureState
        The probe.
    marked : Sequence[PureState]
        Mutually orthogonal marked states.
    targets : Sequence[int] | None, optional
        Where the marked subsystem sits, by default the first qubits.

    Returns
    -------
    float
        The overlap.

    Raises
    ------
    ValueError
        If the marked states are not orthonormal.
    """
    _check_orthonormal(marked)
    span = range(marked[0].n_qubits) if targets is None else targets
    rho = marginal(phi, span)
    return 1.0 - 2.0 * sum(fidelity(rho, psi) for psi in marked)


def overlap_by_simulation(
    phi: PureState,
    marked: Sequence[PureState],
    targets: Sequence[int] | None = None,
) -> float:
    """Return ``<phi|(V ⊗ 1)|phi>`` by applying the reflections.

    Parameters
    ----------
    phi : PureState
        The probe.
    marked : Sequence[PureState]
        Mutually orthogonal marked states.
    targets : Sequence[int] | None, optional
        Where the marked subsystem sits, by default the first qubits.

    Returns
    -------
    float
        The real part of the overlap.
    """
    _check_orthonormal(marked)
    span = list(range(marked[0].n_qubits) if targets is None else targets)
    amplitudes = phi.amplitudes
    for psi in marked:
        # orthogonal projectors commute, so the product is 1 - 2 sum P_j
        amplitudes = MarkedStateOracle(psi).reflect(amplitudes, span)
    return float(np.vdot(phi.amplitudes, amplitudes).real)


def phase_flip_overlap_eigen(
    rho: DensityOperator, marked: Sequence[PureState]
) -> float:
    """Return ``1 - 2 sum_j sum_i lambda_i |<eta_i|psi_j>|^2``.

    Parameters
    ----------
    rho : DensityOperator
        The marginal.
    marked : Sequence[PureState]
        Mutually orthogonal marked states.

    Returns
    -------
    float
        The overlap from the spectral decomposition of ``rho``.
    """
    _check_orthonormal(marked)
    eigenvalues, eigenvectors = np.linalg.eigh(rho.matrix)
    total = 0.0
    for psi in marked:
        weights = np.abs(eigenvectors.conj().T @ psi.amplitudes) ** 2
        total += float(eigenvalues @ weights)
    return 1.0 - 2.0 * total
