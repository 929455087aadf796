# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Completeness and soundness of the witness protocol."""

import asyncio
import math
from pathlib import Path

import numpy as np

from qwitness.models import ExperimentConfig, ExperimentName
from qwitness.protocol import (
    ProtocolTranscript,
    run_transcripts,
    transcript_problems,
)
from qwitness.rng import derive_rng

from ._base import BaseExperiment, ExperimentOutcome

_HAAR_ACCEPT_LIMIT = 0.25
_MIN_GAP = 0.5


def _row(
    batch: str, trial: int, transcript: ProtocolTranscript
) -> dict[str, object]:
    stats = transcript.statistics
    return {
        "batch": batch,
        "trial": trial,
        "merlin": transcript.header.merlin_kind,
        "language_bit": stats.language_bit,
        "outcome": transcript.outcome,
        "failure": transcript.failure or "",
        "passes": stats.passes,
        "threshold": stats.threshold,
        "accept_probability": stats.accept_probability,
        "shots_used": stats.shots_used,
        "noisy_blocks": stats.noisy_blocks,
        "messages": len(transcript.messages),
    }


def _accept_rate(transcripts: list[ProtocolTranscript]) -> float:
    return float(np.mean([t.accepted for t in transcripts]))


def _exact_accept(transcripts: list[ProtocolTranscript]) -> float:
    values = [
        t.statistics.accept_probability or 0.0 for t in transcripts
    ]
    return float(np.mean(values))


def write_transcripts(
    path: Path, batches: dict[str, list[ProtocolTranscript]]
) -> None:
    """Write every transcript as JSON lines, batch by batch.

    Parameters
    ----------
    path : Path
        The output file.
    batches : dict[str, list[ProtocolTranscript]]
        Transcripts keyed by batch name.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        for transcripts in batches.values():
            for transcript in transcripts:
                handle.write(transcript.to_jsonl())


class WitnessProtocol(BaseExperiment):
    """Run the four-party protocol for members, non-members and cheaters."""

    name = ExperimentName.PROTOCOL
    description = "Server, prover, verifier and channel oracle transcripts"
    optional = ("n", "trials", "kappa", "depth", "merlin", "noise", "out")

    def execute(self, config: ExperimentConfig) -> ExperimentOutcome:
        """Run the experiment.

        Batches: ``member`` runs the chosen prover on instances in the
        language, ``nonmember`` the same prover outside it, and with an
        honest prover a ``haar`` baseline of random witnesses is added.

        Parameters
        ----------
        config : ExperimentConfig
            The config.

        Returns
        -------
        ExperimentOutcome
            One row per transcript plus acceptance checks.
        """
        outcome = ExperimentOutcome()
        seed = self.seed_of(config)
        batches = asyncio.run(self._batches(config, seed))
        for batch, transcripts in batches.items():
            outcome.rows.extend(
                _row(batch, t, transcript)
                for t, transcript in enumerate(transcripts)
            )
        member = batches["member"]
        nonmember = batches["nonmember"]
        failures = [t for t in member if t.failure]
        outcome.aggregates.update(
            {
                "member_accept_rate": _accept_rate(member),
                "member_accept_probability": _exact_accept(member),
                "nonmember_reject_rate": 1.0 - _accept_rate(nonmember),
                "prover_failures": float(len(failures)),
            }
        )
        if failures:
            outcome.notes.append(
                f"{len(failures)} member runs ended without a witness: "
                f"{failures[0].failure}"
            )
        outcome.check(
            "nonmember-reject",
            "no witness makes the verifier accept outside the language",
            outcome.aggregates["nonmember_reject_rate"] == 1.0,
            f"reject rate {outcome.aggregates['nonmember_reject_rate']:.3f}",
        )
        if config.merlin == "honest":
            self._honest_checks(outcome, config, member, batches["haar"])
        problems = [
            problem
            for transcripts in batches.values()
            for transcript in transcripts
            for problem in transcript_problems(transcript)
        ]
        outcome.aggregates["transcript_problems"] = float(len(problems))
        outcome.check(
            "transcript-shape",
            "every transcript carries exactly the expected messages",
            not problems,
            problems[0] if problems else "",
        )
        if config.out:
            path = Path(f"{config.out}.transcripts.jsonl")
            write_transcripts(path, batches)
            outcome.notes.append(f"transcripts written to {path}")
        return outcome

    @staticmethod
    async def _batches(
        config: ExperimentConfig, seed: int
    ) -> dict[str, list[ProtocolTranscript]]:
        common = {
            "n": config.n,
            "depth": config.depth,
            "kappa": config.kappa,
            "trials": config.trials,
        }
        batches = {
            "member": await run_transcripts(
                merlin_kind=config.merlin,
                seed=int(derive_rng(seed, 0, "member").integers(2**63)),
                language_bit=True,
                noise=config.noise,
                **common,
            ),
            "nonmember": await run_transcripts(
                merlin_kind=config.merlin,
                seed=int(derive_rng(seed, 0, "nonmember").integers(2**63)),
                language_bit=False,
                noise=config.noise,
                **common,
            ),
        }
        if config.merlin == "honest":
            batches["haar"] = await run_transcripts(
                merlin_kind="haar",
                seed=int(derive_rng(seed, 0, "haar").integers(2**63)),
                language_bit=True,
                **common,
            )
        return batches

    @staticmethod
    def _honest_checks(
        outcome: ExperimentOutcome,
        config: ExperimentConfig,
        member: list[ProtocolTranscript],
        haar: list[ProtocolTranscript],
    ) -> None:
        completed = [t for t in member if not t.failure]
        honest = _exact_accept(completed) if completed else 0.0
        baseline = _exact_accept(haar)
        outcome.aggregates["haar_accept_rate"] = _accept_rate(haar)
        outcome.aggregates["haar_accept_probability"] = baseline
        outcome.aggregates["gap"] = honest - baseline
        if config.noise == 0.0:
            rate = _accept_rate(completed) if completed else 0.0
            outcome.check(
                "honest-complete",
                "an honest witness is always accepted for members",
                rate == 1.0,
                f"accept rate {rate:.3f} over {len(completed)} runs",
            )
        else:
            blocks = config.n
            passes = [
                t.statistics.passes / blocks
                for t in completed
                if t.statistics.passes is not None
            ]
            expected = 1.0 - config.noise / 2.0
            mean = float(np.mean(passes)) if passes else 0.0
            sigma = math.sqrt(
                max(expected * (1 - expected), 1e-12)
                / max(1, len(passes) * blocks)
            )
            outcome.aggregates["block_pass_rate"] = mean
            outcome.bounds["block_pass_rate"] = expected
            outcome.check(
                "noisy-pass-rate",
                "a block with fidelity 1 - delta passes w.p. 1 - delta/2",
                abs(mean - expected) <= 3.0 * sigma,
                f"pass rate {mean:.4f} vs {expected:.4f} +- {3 * sigma:.3g}",
            )
        if config.n >= 3:
            outcome.check(
                "haar-soundness",
                "random witnesses are accepted with probability below 1/4",
                baseline < _HAAR_ACCEPT_LIMIT,
                f"accept probability {baseline:.4f}",
            )
        outcome.check(
            "completeness-gap",
            "honest and random witnesses are separated by at least 1/2",
            honest - baseline >= _MIN_GAP,
            f"gap {honest - baseline:.4f}",
        )
