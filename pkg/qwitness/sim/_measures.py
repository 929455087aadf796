# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Fidelity, trace distance and reduced states."""

from typing import Iterable

import numpy as np
from scipy.linalg import sqrtm

from ._state import DensityOperator, PureState

State = PureState | DensityOperator


def _check_widths(a: State, b: State) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits}")


def fidelity(a: State, b: State) -> float:
    """Return the squared fidelity ``||sqrt(rho) sqrt(sigma)||_1^2``.

    Pure arguments short-cut to ``|<a|b>|^2`` and ``<psi|rho|psi>``.

    Parameters
    ----------
    a : PureState | DensityOperator
        First state.
    b : PureState | DensityOperator
        Second state.

    Returns
    -------
    float
        The fidelity in ``[0, 1]``.
    """
    _check_widths(a, b)
    if isinstance(a, PureState) and isinstance(b, PureState):
        value = abs(a.inner(b)) ** 2
    elif isinstance(a, PureState) and isinstance(b, DensityOperator):
        value = b.expectation(a)
    elif isinstance(a, DensityOperator) and isinstance(b, PureState):
        value = a.expectation(b)
    else:
        rho = a.density() if isinstance(a, PureState) else a
        sigma = b.density() if isinstance(b, PureState) else b
        root = sqrtm(rho.matrix)
        inner = sqrtm(root @ sigma.matrix @ root)
        value = float(np.real(np.trace(inner))) ** 2
    return float(min(1.0, max(0.0, value)))


def trace_distance_pure(a: PureState, b: PureState) -> float:
    """Return ``sqrt(1 - |<a|b>|^2)``, the trace distance of pure states.

    Parameters
    ----------
    a : PureState
        First state.
    b : PureState
        Second state.

    Returns
    -------
    float
        The distance in ``[0, 1]``.
    """
    return float(np.sqrt(max(0.0, 1.0 - fidelity(a, b))))


def trace_distance(a: State, b: State) -> float:
    """Return ``1/2 ||rho - sigma||_1`` for arbitrary states.

    Parameters
    ----------
    a : PureState | DensityOperator
        First state.
    b : PureState | DensityOperator
        Second state.

    Returns
    -------
    float
        The distance in ``[0, 1]``.
    """
    _check_widths(a, b)
    if isinstance(a, PureState) and isinstance(b, PureState):
        return trace_distance_pure(a, b)
    rho = a.density() if isinstance(a, PureState) else a
    sigma = b.density() if isinstance(b, PureState) else b
    eigenvalues = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(min(1.0, 0.5 * np.abs(eigenvalues).sum()))


def partial_trace(state: PureState, keep: Iterable[int]) -> DensityOperator:
    """Return the reduced density operator on ``keep``.

    The kept qubits appear in ascending order in the result.

    Parameters
    ----------
    state : PureState
        The joint state.
    keep : Iterable[int]
        Qubits to keep.

    Returns
    -------
    DensityOperator
        The marginal.

    Raises
    ------
    ValueError
        If ``keep`` is empty or out of range.
    """
    kept = sorted(set(keep))
    n_qubits = state.n_qubits
    if not kept:
        raise ValueError("keep set is empty")
    if kept[0] < 0 or kept[-1] >= n_qubits:
        raise ValueError(f"keep set {kept} outside width {n_qubits}")
    psi = state.amplitudes.reshape((2,) * n_qubits)
    psi = np.moveaxis(psi, kept, list(range(len(kept))))
    block = psi.reshape(2 ** len(kept), -1)
    rho = block @ block.conj().T
    # symmetrize away rounding so the Hermitian check is exact
    return DensityOperator((rho + rho.conj().T) / 2)


def purity(rho: DensityOperator) -> float:
    """Return ``Tr(rho^2)``.

    Parameters
    ----------
    rho : DensityOperator
        The state.

    Returns
    -------
    float
        The purity.
    """
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


def maximally_mixed(n_qubits: int) -> DensityOperator:
    """Return ``I / 2^n``.

    Parameters
    ----------
    n_qubits : int
        The width.

    Returns
    -------
    DensityOperator
        The complete mixture.
    """
    dim = 2**n_qubits
    return DensityOperator(np.eye(dim, dtype=np.complex128) / dim)
