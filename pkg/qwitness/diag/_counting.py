# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Closed-form counts of states that avoid a set of densities."""

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from qwitness.sim import PureState, haar_random_amplitudes


def _check(epsilon: float, r: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")


def min_hard_state_count(n: int, epsilon: float, r: int) -> int:
    """Return ``floor((1 - eps)^(1 - 2^n) - r)``, at least 0.

    Parameters
    ----------
    n : int
        Qubit count.
    epsilon : float
        Fidelity threshold in ``(0, 1)``.
    r : int
        Total rank of the avoided set.

    Returns
    -------
    int
        The guaranteed number of mutually far states.

    Raises
    ------
    ValueError
        If ``epsilon`` is outside ``(0, 1)`` or ``r`` is negative.
    """
    _check(epsilon, r)
    exponent = 2**n - 1
    try:
        value = math.floor(math.pow(1.0 - epsilon, -exponent) - r)
    except OverflowError:
        exact = 1 / Fraction(1.0 - epsilon) ** exponent
        value = math.floor(exact - r)
    return max(0, value)


def exponential_count_bound(n: int, epsilon: float) -> float:
    """Return ``exp(eps * (2^n - 1))``, a lower bound of the count base.

    Parameters
    ----------
    n : int
        Qubit count.
    epsilon : float
        Fidelity threshold.

    Returns
    -------
    float
        The bound, ``inf`` on overflow.
    """
    try:
        return math.exp(epsilon * (2**n - 1))
    except OverflowError:
        return math.inf


def random_avoidance_probability(n: int, epsilon: float, r: float) -> float:
    """Return ``max(0, 1 - r (1 - eps)^(2^n - 1))``.

    This lower-bounds the chance that a Haar-random state has fidelity
    below ``epsilon`` with every member of a rank-``r`` set.

    Parameters
    ----------
    n : int
        Qubit count.
    epsilon : float
        Fidelity threshold in ``(0, 1)``.
    r : float
        Total rank of the avoided set.

    Returns
    -------
    float
        The probability bound.
    """
    _check(epsilon, r)
    return max(0.0, 1.0 - r * (1.0 - epsilon) ** (2**n - 1))


def avoidance_frequency(
    references: Sequence[PureState],
    epsilon: float,
    samples: int,
    rng: np.random.Generator,
    batch: int = 10_000,
) -> float:
    """Estimate how often a Haar state is far from every reference.

    Parameters
    ----------
    references : Sequence[PureState]
        Pure references of a common width.
    epsilon : float
        Fidelity threshold.
    samples : int
        Haar draws.
    rng : np.random.Generator
        The random stream.
    batch : int, optional
        Draws per vectorized batch, by default 10000.

    Returns
    -------
    float
        The fraction of draws with fidelity below ``epsilon`` to all.
    """
    n = references[0].n_qubits
    matrix = np.stack([ref.amplitudes for ref in references])
    hits = 0
    remaining = samples
    while remaining:
        size = min(batch, remaining)
        draws = haar_random_amplitudes(n, size, rng)
        overlaps = np.abs(draws @ matrix.conj().T) ** 2
        hits += int(np.sum(np.all(overlaps < epsilon, axis=1)))
        remaining -= size
    return hits / samples
