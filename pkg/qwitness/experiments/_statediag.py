# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Hard-state enumeration with its certificates and counting formulas."""

import math

from qwitness.diag import (
    BudgetExhausted,
    EnumerationConfig,
    HardStateRecord,
    avoidance_frequency,
    exponential_count_bound,
    min_hard_state_count,
    random_avoidance_probability,
    state_diag,
    verify_hard_state,
)
from qwitness.models import ExperimentConfig, ExperimentName
from qwitness.rng import derive_rng
from qwitness.sim import fidelity, haar_random_state

from ._base import BaseExperiment, ExperimentOutcome

_DEFAULT_EPSILON = 0.99
_AVOIDANCE_REFERENCES = 4
_AVOIDANCE_SAMPLES = 100_000


class StateDiagonalization(BaseExperiment):
    """Find hard states by enumeration and re-certify them."""

    name = ExperimentName.STATE_DIAG
    description = "Deterministic enumeration of states far from short circuits"
    required = ()
    optional = (
        "n",
        "f",
        "epsilon",
        "index",
        "budget",
        "gate_set",
        "seed",
        "out",
    )

    def execute(self, config: ExperimentConfig) -> ExperimentOutcome:
        """Run the experiment.

        Every index up to ``config.index`` is searched so that the
        returned states can be compared pairwise. With a seed, the
        avoidance-probability formula is also checked by sampling.

        Parameters
        ----------
        config : ExperimentConfig
            The config.

        Returns
        -------
        ExperimentOutcome
            The records, certificates and counting checks.
        """
        outcome = ExperimentOutcome()
        epsilon = config.epsilon or _DEFAULT_EPSILON
        records: list[HardStateRecord] = []
        for index in range(config.index + 1):
            cfg = EnumerationConfig(
                n=config.n,
                f=config.f,
                epsilon=epsilon,
                index=index,
                budget=config.budget,
                **({"gate_set": config.gate_set} if config.gate_set else {}),
            )
            result = state_diag(cfg)
            if isinstance(result, BudgetExhausted):
                outcome.rows.append(
                    {
                        "index": index,
                        "found": False,
                        "examined": result.examined,
                        "hard_states_seen": result.found,
                    }
                )
                outcome.notes.append(
                    f"budget of {config.budget} circuits exhausted at "
                    f"index {index}; the search does not halt within it"
                )
                break
            records.append(result)
            outcome.rows.append({"found": True, **result.to_dict()})
        outcome.aggregates["found"] = float(len(records))
        if records:
            last = records[-1]
            outcome.aggregates["avoided_width"] = float(last.avoided_width)
            outcome.aggregates["max_certificate"] = max(
                r.certificate for r in records
            )
            outcome.check(
                "certificate",
                "a returned state has fidelity below epsilon with every "
                "short-circuit marginal",
                all(r.certificate < epsilon for r in records)
                and all(verify_hard_state(r) for r in records),
                f"max certificate {outcome.aggregates['max_certificate']:.6f}",
            )
            pairwise = max(
                (
                    fidelity(a.state, b.state)
                    for i, a in enumerate(records)
                    for b in records[i + 1 :]
                ),
                default=0.0,
            )
            outcome.aggregates["max_pairwise_fidelity"] = pairwise
            outcome.check(
                "distinct-indices",
                "states for different indices have pairwise fidelity "
                "below epsilon",
                pairwise < epsilon,
                f"max pairwise fidelity {pairwise:.6f}",
            )
            if epsilon < 1.0:
                rank = last.avoided_count
                outcome.bounds["min_hard_state_count"] = float(
                    min_hard_state_count(config.n, epsilon, rank)
                )
                outcome.bounds["random_avoidance_probability"] = (
                    random_avoidance_probability(config.n, epsilon, rank)
                )
        self._check_exponential_form(outcome)
        if config.seed is not None:
            self._check_avoidance(outcome, config.n, config.seed)
        return outcome

    @staticmethod
    def _check_exponential_form(outcome: ExperimentOutcome) -> None:
        worst = math.inf
        for n in range(1, 5):
            for step in range(1, 91):
                epsilon = step / 100
                base = (1.0 - epsilon) ** (1 - 2**n)
                gap = base - exponential_count_bound(n, epsilon)
                worst = min(worst, gap)
        outcome.check(
            "exponential-form",
            "(1 - eps)^(1 - 2^n) >= exp(eps (2^n - 1)) for n <= 4 "
            "and eps in (0, 0.9]",
            worst >= -1e-9,
            f"smallest gap {worst:.3g}",
        )

    @staticmethod
    def _check_avoidance(
        outcome: ExperimentOutcome, n: int, seed: int
    ) -> None:
        epsilon = 0.5
        rng = derive_rng(seed, 0, "avoidance")
        references = [
            haar_random_state(n, rng) for _ in range(_AVOIDANCE_REFERENCES)
        ]
        frequency = avoidance_frequency(
            references, epsilon, _AVOIDANCE_SAMPLES, rng
        )
        formula = random_avoidance_probability(
            n, epsilon, _AVOIDANCE_REFERENCES
        )
        sigma = math.sqrt(
            max(frequency * (1 - frequency), 1e-12) / _AVOIDANCE_SAMPLES
        )
        outcome.aggregates["avoidance_frequency"] = frequency
        outcome.bounds["avoidance_probability"] = formula
        outcome.check(
            "avoidance-lower-bound",
            "1 - r (1 - eps)^(2^n - 1) lower-bounds the Haar avoidance "
            "frequency",
            frequency >= formula - 3.0 * sigma,
            f"frequency {frequency:.4f} vs bound {formula:.4f}",
        )
