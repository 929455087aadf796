# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Fidelity law of Haar-random pairs."""

import math

import numpy as np
from scipy import stats

from qwitness.models import ExperimentConfig, ExperimentName
from qwitness.rng import derive_rng
from qwitness.sim import haar_random_amplitudes

from ._base import BaseExperiment, ExperimentOutcome, parallel_map

_CHUNK = 10_000


def fidelity_cdf(x: float | np.ndarray, n: int) -> float | np.ndarray:
    """Return ``P(F < x) = 1 - (1 - x)^(2^n - 1)`` for Haar pairs.

    Parameters
    ----------
    x : float | np.ndarray
        Threshold(s) in ``[0, 1]``.
    n : int
        Qubit count.

    Returns
    -------
    float | np.ndarray
        The probability.
    """
    clipped = np.clip(x, 0.0, 1.0)
    return 1.0 - (1.0 - clipped) ** (2**n - 1)


def haar_pair_fidelities(
    n: int, trials: int, seed: int, workers: int = 1
) -> np.ndarray:
    """Draw ``trials`` Haar pairs and return their fidelities.

    Draws come in chunks of 10000 keyed by chunk index, so the result
    does not depend on ``workers``.

    Parameters
    ----------
    n : int
        Qubit count.
    trials : int
        Number of pairs.
    seed : int
        Master seed.
    workers : int, optional
        Worker threads, by default 1.

    Returns
    -------
    np.ndarray
        The fidelities in trial order.
    """

    def chunk(index: int) -> np.ndarray:
        size = min(_CHUNK, trials - index * _CHUNK)
        rng = derive_rng(seed, index, "fidelity-dist")
        a = haar_random_amplitudes(n, size, rng)
        b = haar_random_amplitudes(n, size, rng)
        return np.abs(np.sum(a.conj() * b, axis=1)) ** 2

    chunks = parallel_map(chunk, range(math.ceil(trials / _CHUNK)), workers)
    return np.concatenate(chunks)


class FidelityDistribution(BaseExperiment):
    """Compare Haar-pair fidelities with the closed-form law."""

    name = ExperimentName.FIDELITY_DIST
    description = "Fidelity distribution of Haar-random state pairs"
    optional = ("n", "trials", "epsilon", "workers", "out")

    def execute(self, config: ExperimentConfig) -> ExperimentOutcome:
        """Run the experiment.

        Parameters
        ----------
        config : ExperimentConfig
            The config.

        Returns
        -------
        ExperimentOutcome
            KS statistic, mean-overlap check and per-pair rows.
        """
        outcome = ExperimentOutcome()
        n, trials = config.n, config.trials
        values = haar_pair_fidelities(
            n, trials, self.seed_of(config), self.workers_of(config)
        )
        result = stats.kstest(values, lambda x: fidelity_cdf(x, n))
        mean = float(values.mean())
        dim = 2**n
        # F is Beta(1, 2^n - 1)
        sigma = math.sqrt((dim - 1) / (dim**2 * (dim + 1)))
        mean_tolerance = 3.0 * sigma / math.sqrt(trials)
        ks_limit = max(0.01, 1.63 / math.sqrt(trials))
        outcome.rows = [
            {"trial": i, "fidelity": float(v)} for i, v in enumerate(values)
        ]
        outcome.aggregates.update(
            {
                "ks_statistic": float(result.statistic),
                "ks_pvalue": float(result.pvalue),
                "mean_fidelity": mean,
                "mean_tolerance": mean_tolerance,
            }
        )
        outcome.bounds["mean_fidelity"] = 1.0 / dim
        outcome.check(
            "fidelity-law",
            "Haar pairs follow P(F < x) = 1 - (1 - x)^(2^n - 1)",
            result.statistic < ks_limit,
            f"KS {result.statistic:.5f} vs limit {ks_limit:.5f}",
        )
        outcome.check(
            "mean-overlap",
            "mean Haar fidelity is 1/2^n",
            abs(mean - 1.0 / dim) <= mean_tolerance,
            f"mean {mean:.6f} vs {1.0 / dim:.6f} +- {mean_tolerance:.2g}",
        )
        if config.epsilon is not None:
            empirical = float(np.mean(values < config.epsilon))
            outcome.aggregates["p_below_epsilon"] = empirical
            outcome.bounds["p_below_epsilon"] = float(
                fidelity_cdf(config.epsilon, n)
            )
        if ks_limit > 0.01:
            outcome.notes.append(
                f"KS limit widened to the 1% critical value at {trials} pairs"
            )
        return outcome
