# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Query scaling of search behind the standard oracle."""

from qwitness.config import settings
from qwitness.errors import CapacityError
from qwitness.models import ExperimentConfig, ExperimentName
from qwitness.mqst import (
    MAX_SEARCH_WIDTH,
    ScalingRow,
    grover_query_scaling,
    grover_success_probability,
)
from qwitness.oracles import GroverStandardOracle, LanguageTable
from qwitness.rng import derive_rng

from ._base import BaseExperiment, ExperimentOutcome, parallel_map

_QUANTUM_RATIO = (1.5, 2.5)
_CLASSICAL_RATIO = (3.0, 5.0)
_DEFAULT_N_MAX = 12


def _ratios(values: list[float]) -> list[float]:
    return [b / a for a, b in zip(values, values[1:]) if a > 0]


def _n_max(config: ExperimentConfig) -> int:
    if config.n_max is None:
        return max(config.n, _DEFAULT_N_MAX)
    return config.n_max


class GroverScaling(BaseExperiment):
    """Median queries of amplitude amplification and of random guessing."""

    name = ExperimentName.GROVER
    description = "Quantum and classical query scaling behind the oracle"
    optional = ("n", "n_max", "trials", "workers", "out")

    def check_widths(self, config: ExperimentConfig) -> None:
        """Reject widths above the search cap or an empty width range.

        Parameters
        ----------
        config : ExperimentConfig
            The validated config.

        Raises
        ------
        CapacityError
            If ``n`` or ``n_max`` is above the search cap.
        ValueError
            If ``n_max`` is below ``n``.
        """
        cap = min(MAX_SEARCH_WIDTH, settings.max_qubits)
        n_max = _n_max(config)
        for width in (config.n, n_max):
            if width > cap:
                raise CapacityError(width, cap, "search cap")
        if n_max < config.n:
            raise ValueError(
                f"n_max must be at least n={config.n}, got {n_max}"
            )

    def execute(self, config: ExperimentConfig) -> ExperimentOutcome:
        """Run the experiment.

        Widths run from ``config.n`` to ``config.n_max`` (12 by default,
        never below ``n``) in steps of two; each width draws from its own
        stream.

        Parameters
        ----------
        config : ExperimentConfig
            The config.

        Returns
        -------
        ExperimentOutcome
            Medians per width and the growth-ratio checks.
        """
        outcome = ExperimentOutcome()
        seed = self.seed_of(config)
        widths = list(range(config.n, _n_max(config) + 1, 2))

        def one_width(n: int) -> ScalingRow:
            rows = grover_query_scaling(
                [n], config.trials, derive_rng(seed, n, "grover")
            )
            return rows[0]

        rows = parallel_map(one_width, widths, self.workers_of(config))
        outcome.rows = [
            {
                "n": row.n,
                "iterations": row.iterations,
                "quantum_median": row.quantum_median,
                "classical_median": row.classical_median,
                "trials": row.trials,
            }
            for row in rows
        ]
        quantum = _ratios([row.quantum_median for row in rows])
        classical = _ratios([row.classical_median for row in rows])
        if quantum:
            outcome.aggregates["min_quantum_ratio"] = min(quantum)
            outcome.aggregates["max_quantum_ratio"] = max(quantum)
            outcome.aggregates["min_classical_ratio"] = min(classical)
            outcome.aggregates["max_classical_ratio"] = max(classical)
            outcome.bounds["quantum_ratio"] = 2.0
            outcome.bounds["classical_ratio"] = 4.0
            low, high = _QUANTUM_RATIO
            outcome.check(
                "quantum-scaling",
                "median quantum queries double per two extra qubits",
                all(low <= r <= high for r in quantum),
                f"ratios {[round(r, 3) for r in quantum]}",
            )
            low, high = _CLASSICAL_RATIO
            outcome.check(
                "classical-scaling",
                "median classical queries quadruple per two extra qubits",
                all(low <= r <= high for r in classical),
                f"ratios {[round(r, 3) for r in classical]}",
            )
        else:
            outcome.notes.append(
                "a single width was run; growth ratios need n_max >= n + 2"
            )
        success = self._two_qubit_success(seed)
        outcome.aggregates["n2_success_probability"] = success
        outcome.check(
            "two-qubit-search",
            "one iteration finds the secret among four items with certainty",
            abs(success - 1.0) < 1e-10,
            f"success probability {success:.12f}",
        )
        return outcome

    @staticmethod
    def _two_qubit_success(seed: int) -> float:
        rng = derive_rng(seed, 0, "grover-n2")
        secret = format(int(rng.integers(4)), "02b")
        language = LanguageTable.generate([2], rng)
        y = min(language.members[2])
        oracle = GroverStandardOracle(secret, language, conjugated=True)
        return grover_success_probability(oracle, y, 1)
