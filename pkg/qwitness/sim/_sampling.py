# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Haar sampling, projective measurement and the swap test."""

from typing import Sequence

import numpy as np
import numpy.typing as npt

from ._circuit import GateKind, GateOp, apply_ops
from ._measures import fidelity
from ._state import ComplexArray, PureState, Unitary, check_capacity


def haar_random_amplitudes(
    n_qubits: int, size: int, rng: np.random.Generator
) -> ComplexArray:
    """Draw ``size`` Haar-random amplitude vectors as rows.

    Parameters
    ----------
    n_qubits : int
        The width.
    size : int
        The number of samples.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    ComplexArray
        A ``(size, 2^n)`` array of unit rows.

    Raises
    ------
    ValueError
        If ``n_qubits < 1``.
    """
    if n_qubits < 1:
        raise ValueError(f"n must be >= 1, got {n_qubits}")
    check_capacity(n_qubits)
    shape = (size, 2**n_qubits)
    vectors = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def haar_random_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Draw one Haar-random pure state.

    Parameters
    ----------
    n_qubits : int
        The width.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    PureState
        The state.
    """
    return PureState(haar_random_amplitudes(n_qubits, 1, rng)[0])


def haar_random_unitary(n_qubits: int, rng: np.random.Generator) -> Unitary:
    """Draw a Haar-random unitary by QR with the phases of R divided out.

    Parameters
    ----------
    n_qubits : int
        The width.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    Unitary
        The unitary.

    Raises
    ------
    ValueError
        If ``n_qubits < 1``.
    """
    if n_qubits < 1:
        raise ValueError(f"n must be >= 1, got {n_qubits}")
    check_capacity(n_qubits)
    dim = 2**n_qubits
    gaussian = (
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    ) / np.sqrt(2)
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diagonal(r)
    return Unitary(q * (diagonal / np.abs(diagonal)))


def outcome_probabilities(
    state: PureState, indices: Sequence[int]
) -> npt.NDArray[np.float64]:
    """Return the Born distribution of measuring ``indices``.

    Parameters
    ----------
    state : PureState
        The state.
    indices : Sequence[int]
        The measured qubits; outcome strings follow this order.

    Returns
    -------
    npt.NDArray[np.float64]
        Probability of each outcome, indexed by its integer value.
    """
    rows = _rows(state, indices)
    return np.sum(np.abs(rows) ** 2, axis=1)


def _rows(state: PureState, indices: Sequence[int]) -> ComplexArray:
    n_qubits = state.n_qubits
    if len(set(indices)) != len(indices) or not indices:
        raise ValueError(f"invalid measured qubits {list(indices)}")
    if min(indices) < 0 or max(indices) >= n_qubits:
        raise ValueError(f"qubits {list(indices)} outside width {n_qubits}")
    psi = state.amplitudes.reshape((2,) * n_qubits)
    psi = np.moveaxis(psi, list(indices), list(range(len(indices))))
    return psi.reshape(2 ** len(indices), -1)


def measure_qubits(
    state: PureState, indices: Sequence[int], rng: np.random.Generator
) -> tuple[str, PureState]:
    """Measure ``indices`` in the computational basis.

    Parameters
    ----------
    state : PureState
        The state.
    indices : Sequence[int]
        The measured qubits.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    tuple[str, PureState]
        The outcome bits (in ``indices`` order) and the renormalized
        post-measurement state of the whole register.
    """
    indices = list(indices)
    n_qubits = state.n_qubits
    rows = _rows(state, indices)
    probabilities = np.sum(np.abs(rows) ** 2, axis=1)
    probabilities = probabilities / probabilities.sum()
    outcome = int(rng.choice(len(probabilities), p=probabilities))
    collapsed = np.zeros_like(rows)
    collapsed[outcome] = rows[outcome] / np.sqrt(probabilities[outcome])
    k = len(indices)
    psi = collapsed.reshape((2,) * n_qubits)
    psi = np.moveaxis(psi, list(range(k)), indices)
    bits = format(outcome, f"0{k}b")
    return bits, PureState.from_amplitudes(psi.reshape(-1))


def swap_test(a: PureState, b: PureState, rng: np.random.Generator) -> int:
    """Run the ancilla-controlled-SWAP test circuit once.

    The ancilla is qubit 0, ``a`` sits on qubits ``1..n`` and ``b`` on
    ``n+1..2n``. The returned bit is 1 when the ancilla reads 0, which
    happens with probability ``(1 + F(a, b)) / 2``.

    Parameters
    ----------
    a : PureState
        First state.
    b : PureState
        Second state.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    int
        1 on a pass, 0 otherwise.

    Raises
    ------
    ValueError
        If the widths differ.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits}")
    n = a.n_qubits
    joint = PureState.zero(1).tensor(a, b)
    hadamard = GateOp(kind=GateKind.H, targets=(0,))
    cswap = GateOp(kind=GateKind.CSWAP, targets=(0, *range(1, 2 * n + 1)))
    joint = apply_ops(joint, (hadamard, cswap, hadamard))
    bits, _ = measure_qubits(joint, [0], rng)
    return 1 if bits == "0" else 0


def swap_test_pass_probability(a: PureState, b: PureState) -> float:
    """Return ``(1 + F(a, b)) / 2``.

    Parameters
    ----------
    a : PureState
        First state.
    b : PureState
        Second state.

    Returns
    -------
    float
        The pass probability.
    """
    return 0.5 * (1.0 + fidelity(a, b))
