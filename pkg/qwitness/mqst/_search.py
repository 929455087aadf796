# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Query cost of finding the secret behind a standard oracle."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qwitness.oracles import (
    GroverStandardOracle,
    LanguageTable,
    apply_grover_phase,
)
from qwitness.rng import spawn
from qwitness.sim import PureState, hadamard_all, measure_qubits

logger = logging.getLogger(__name__)

MAX_SEARCH_WIDTH = 12
"""Widest search the scaling table runs."""


@dataclass(frozen=True)
class ScalingRow:
    """Median query counts at one width."""

    n: int
    iterations: int
    quantum_median: float
    classical_median: float
    trials: int


def grover_iterations(n: int) -> int:
    """Return ``floor(pi/4 * sqrt(2^n))``, at least 1.

    Parameters
    ----------
    n : int
        Search width.

    Returns
    -------
    int
        Grover iterations per attempt.
    """
    return max(1, math.floor(math.pi / 4 * math.sqrt(2**n)))


def _reflect_about_zero(state: PureState) -> PureState:
    amplitudes = -state.amplitudes.copy()
    amplitudes[0] += 2.0 * state.amplitudes[0]
    return PureState(amplitudes)


def grover_success_probability(
    oracle: GroverStandardOracle, y: str, iterations: int
) -> float:
    """Return the chance one attempt measures the secret.

    Queries are counted on the oracle.

    Parameters
    ----------
    oracle : GroverStandardOracle
        A conjugated oracle.
    y : str
        A member of the language of length ``n``.
    iterations : int
        Grover iterations.

    Returns
    -------
    float
        ``|<x_n| H^n (D U)^t |0>|^2``.
    """
    state = _amplify(oracle, y, iterations)
    return float(state.probabilities()[int(oracle.secret, 2)])


def _amplify(
    oracle: GroverStandardOracle, y: str, iterations: int
) -> PureState:
    # in the Hadamard frame the marked vector is H|x_n> and the
    # uniform start is |0>, so the diffusion reflects about |0>
    state = PureState.zero(oracle.n)
    for _ in range(iterations):
        state = apply_grover_phase(oracle, state, y)
        state = _reflect_about_zero(state)
    return hadamard_all(state)


def grover_search(
    oracle: GroverStandardOracle,
    y: str,
    rng: np.random.Generator,
    max_attempts: int = 64,
) -> tuple[str | None, int]:
    """Amplify, measure and verify classically until the secret is found.

    Parameters
    ----------
    oracle : GroverStandardOracle
        A conjugated oracle.
    y : str
        A member of the language of length ``n``.
    rng : np.random.Generator
        The measurement stream.
    max_attempts : int, optional
        Attempts before giving up, by default 64.

    Returns
    -------
    tuple[str | None, int]
        The secret (None on give-up) and the queries spent.

    Raises
    ------
    ValueError
        If the oracle is not conjugated.
    """
    if not oracle.conjugated:
        raise ValueError("amplitude amplification needs the conjugated oracle")
    start = oracle.queries
    iterations = grover_iterations(oracle.n)
    for _ in range(max_attempts):
        state = _amplify(oracle, y, iterations)
        candidate, _ = measure_qubits(state, range(oracle.n), rng)
        if oracle.evaluate(candidate, y):
            return candidate, oracle.queries - start
    return None, oracle.queries - start


def classical_search_queries(
    oracle: GroverStandardOracle, y: str, rng: np.random.Generator
) -> int:
    """Probe strings in a random order without repeats until one hits.

    Parameters
    ----------
    oracle : GroverStandardOracle
        The oracle.
    y : str
        A member of the language of length ``n``.
    rng : np.random.Generator
        The probe-order stream.

    Returns
    -------
    int
        Queries spent, at most ``2^n``.
    """
    n = oracle.n
    for spent, x in enumerate(rng.permutation(2**n), start=1):
        if oracle.evaluate(format(int(x), f"0{n}b"), y):
            return spent
    return 2**n  # pragma: no cover


def grover_query_scaling(
    n_values: Iterable[int], trials: int, rng: np.random.Generator
) -> list[ScalingRow]:
    """Measure median query counts of quantum and classical search.

    Every trial draws a fresh secret and language; ``y`` is fixed to a
    member of the language.

    Parameters
    ----------
    n_values : Iterable[int]
        Widths, each at most ``MAX_SEARCH_WIDTH``.
    trials : int
        Trials per width.
    rng : np.random.Generator
        The random stream.

    Returns
    -------
    list[ScalingRow]
        One row per width.

    Raises
    ------
    ValueError
        If a width is outside ``1..MAX_SEARCH_WIDTH``.
    """
    rows = []
    for n in n_values:
        if not 1 <= n <= MAX_SEARCH_WIDTH:
            raise ValueError(
                f"search width must be in [1, {MAX_SEARCH_WIDTH}], got {n}"
            )
        quantum, classical = [], []
        for trial in range(trials):
            trial_rng = spawn(rng, f"grover-{n}-{trial}")
            secret = format(int(trial_rng.integers(2**n)), f"0{n}b")
            language = LanguageTable.generate([n], trial_rng)
            y = min(language.members[n])
            oracle = GroverStandardOracle(secret, language, conjugated=True)
            found, spent = grover_search(oracle, y, trial_rng)
            if found != secret:
                logger.warning("grover search gave up at n=%d", n)
            quantum.append(spent)
            classical.append(classical_search_queries(oracle, y, trial_rng))
        rows.append(
            ScalingRow(
                n=n,
                iterations=grover_iterations(n),
                quantum_median=float(np.median(quantum)),
                classical_median=float(np.median(classical)),
                trials=trials,
            )
        )
        logger.debug(
            "n=%d quantum median %.1f classical median %.1f",
            n,
            rows[-1].quantum_median,
            rows[-1].classical_median,
        )
    return rows
