# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Rotated heavy-output scoring and the solvers that compete on it."""

# pylint: disable=too-many-arguments
import logging
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qwitness.oracles import BitStringOracle, bit_oracle_query, format_query
from qwitness.rng import spawn
from qwitness.sim import PureState, Unitary, hadamard_all

from ._gates import check_precision
from ._prepare import classical_z_sampler, prepare_via_oracle

logger = logging.getLogger(__name__)

_EXPECTATION_DRAWS = 4096
_EXPECTATION_BATCH = 256

StrategyKind = Literal["z-sampler", "phase-probe", "table-only"]
"""Classical solver families."""


def _target_state(target: Unitary | PureState) -> PureState:
    if isinstance(target, Unitary):
        return target.column(0)
    return target


def rotated_probabilities(
    target: Unitary | PureState, rotate: bool = True
) -> npt.NDArray[np.float64]:
    """Return ``|<z| H^n U |0>|^2`` for every ``z``.

    Parameters
    ----------
    target : Unitary | PureState
        ``U`` or the state ``U|0>``.
    rotate : bool, optional
        Apply ``H`` on every qubit first, by default True. Without it
        the plain output distribution is scored.

    Returns
    -------
    npt.NDArray[np.float64]
        The distribution.
    """
    state = _target_state(target)
    if rotate:
        state = hadamard_all(state)
    return state.probabilities()


def _indices(samples: Sequence[str], n: int) -> list[int]:
    if len(set(samples)) != len(samples):
        raise ValueError("samples must be pairwise distinct")
    for z in samples:
        if len(z) != n or set(z) - {"0", "1"}:
            raise ValueError(f"{z!r} is not an {n}-bit string")
    return [int(z, 2) for z in samples]


def rxhog_score(
    target: Unitary | PureState, samples: Sequence[str], rotate: bool = True
) -> float:
    """Return the mean rotated output probability of distinct samples.

    Parameters
    ----------
    target : Unitary | PureState
        ``U`` or ``U|0>``.
    samples : Sequence[str]
        Distinct ``n``-bit strings.
    rotate : bool, optional
        Score in the Hadamard basis, by default True.

    Returns
    -------
    float
        ``mean_j |<z_j| H^n U |0>|^2``.

    Raises
    ------
    ValueError
        If the samples repeat, are malformed or empty.
    """
    if not samples:
        raise ValueError("no samples to score")
    probabilities = rotated_probabilities(target, rotate)
    n = _target_state(target).n_qubits
    return float(np.mean(probabilities[_indices(samples, n)]))


@dataclass(frozen=True)
class RxhogRun:
    """One solver run: its distinct samples and how they scored.

    ``expected_score`` is the expected mean score of the ``k`` distinct
    samples the solver draws from its own law; deterministic solvers
    report their score there.
    """

    strategy: str
    n: int
    k: int
    bits: int
    samples: tuple[str, ...]
    score: float
    expected_score: float
    queries: int
    extra: dict[str, float] = field(default_factory=dict)

    def row(self) -> dict[str, float | int | str]:
        """Return the CSV row of the run."""
        return {
            "n": self.n,
            "k": self.k,
            "p": self.bits,
            "strategy": self.strategy,
            "score": self.score,
            "expected_score": self.expected_score,
            "queries": self.queries,
            **self.extra,
        }


def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= 2**n:
        raise ValueError(f"k must be in [1, 2^{n}], got {k}")


def draw_distinct(
    probabilities: npt.NDArray[np.float64], k: int, rng: np.random.Generator
) -> list[int]:
    """Draw ``k`` distinct outcomes, resampling repeats.

    After ``100 k`` draws the remaining outcomes are drawn without
    replacement from the law restricted to unseen outcomes.

    Parameters
    ----------
    probabilities : npt.NDArray[np.float64]
        The law.
    k : int
        How many outcomes.
    rng : np.random.Generator
        The stream.

    Returns
    -------
    list[int]
        Distinct outcomes in draw order.
    """
    law = np.clip(probabilities, 0.0, None)
    law = law / law.sum()
    seen: list[int] = []
    for _ in range(100 * k):
        if len(seen) == k:
            return seen
        z = int(rng.choice(law.size, p=law))
        if z not in seen:
            seen.append(z)
    unseen = np.setdiff1d(np.arange(law.size), seen)
    rest = law[unseen]
    rest = rest / rest.sum() if rest.sum() > 0 else None
    extra = rng.choice(unseen, size=k - len(seen), replace=False, p=rest)
    logger.debug("resampling cap reached, %d drawn by elimination", len(extra))
    return seen + [int(z) for z in extra]


def expected_distinct_score(
    probabilities: npt.NDArray[np.float64],
    truth: npt.NDArray[np.float64],
    k: int,
    rng: np.random.Generator,
) -> float:
    """Return the expected mean of ``truth`` over ``k`` distinct draws.

    The draws follow :func:`draw_distinct`, a successive sample without
    replacement from ``probabilities``. One draw and a support of at
    most ``k`` outcomes have closed forms. Otherwise the inclusion
    probabilities are estimated from Gumbel top-``k`` keys, which share
    the law of successive sampling.

    Parameters
    ----------
    probabilities : npt.NDArray[np.float64]
        The sampling law.
    truth : npt.NDArray[np.float64]
        The score of each outcome.
    k : int
        How many distinct outcomes a run outputs.
    rng : np.random.Generator
        Stream for the estimate.

    Returns
    -------
    float
        ``E[mean_j truth(z_j)]``.
    """
    law = np.clip(probabilities, 0.0, None)
    law = law / law.sum()
    if k == 1:
        return float(np.dot(law, truth))
    support = np.flatnonzero(law > 0)
    if support.size <= k:
        # the support is exhausted, the rest is uniform over zero-law outcomes
        missing = k - support.size
        rest = truth[law <= 0]
        tail = missing * float(np.mean(rest)) if missing else 0.0
        return (float(np.sum(truth[support])) + tail) / k
    logs = np.log(law[support])
    inclusion = np.zeros(law.size)
    for start in range(0, _EXPECTATION_DRAWS, _EXPECTATION_BATCH):
        rows = min(_EXPECTATION_BATCH, _EXPECTATION_DRAWS - start)
        keys = logs + rng.gumbel(size=(rows, support.size))
        top = np.argpartition(-keys, k - 1, axis=1)[:, :k]
        np.add.at(inclusion, support[top].ravel(), 1.0)
    return float(np.dot(inclusion / _EXPECTATION_DRAWS, truth)) / k


def quantum_rxhog_solver(
    oracle: BitStringOracle,
    k: int,
    bits: int,
    rng: np.random.Generator,
) -> RxhogRun:
    """Prepare the reference from the oracle, rotate and sample.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle of ``U|0>``.
    k : int
        Distinct samples to output.
    bits : int
        Digits read per angle.
    rng : np.random.Generator
        Measurement stream.

    Returns
    -------
    RxhogRun
        The run, scored against the true reference.

    Raises
    ------
    ValueError
        If ``k`` exceeds ``2^n``.
    """
    n = oracle.n
    _check_k(k, n)
    preparation = prepare_via_oracle(oracle, bits)
    law = rotated_probabilities(preparation.state)
    truth = rotated_probabilities(oracle.reference)
    samples = [
        format(z, f"0{n}b") for z in draw_distinct(law, k, rng)
    ]
    expected = expected_distinct_score(law, truth, k, spawn(rng, "expected"))
    return RxhogRun(
        strategy="quantum",
        n=n,
        k=k,
        bits=preparation.bits,
        samples=tuple(samples),
        score=rxhog_score(oracle.reference, samples),
        expected_score=expected,
        queries=preparation.queries,
        extra={"ancilla_residual": preparation.ancilla_residual},
    )


class ClassicalStrategy(BaseModel):
    """A classical solver and its phase-query budget.

    ``probe_count`` strings (the largest magnitudes first) get their
    phases read, ``bits`` queries each.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: StrategyKind = Field(..., description="Solver family")
    probe_count: int = Field(0, description="Size of the probed set", ge=0)
    query_budget: int = Field(0, description="Phase queries allowed", ge=0)
    adaptive: bool = Field(
        False, description="Spread probes across the k outputs"
    )

    @model_validator(mode="after")
    def _check_budget(self) -> "ClassicalStrategy":
        if self.probe_count > self.query_budget:
            raise ValueError(
                f"probed set of {self.probe_count} exceeds "
                f"budget {self.query_budget}"
            )
        return self


def coefficient_table(oracle: BitStringOracle) -> npt.NDArray[np.float64]:
    """Return the moduli ``|<b|psi>|`` of the reference state.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle.

    Returns
    -------
    npt.NDArray[np.float64]
        One modulus per basis string.
    """
    return np.abs(oracle.reference.amplitudes)


def _probe_phase(oracle: BitStringOracle, b: str, bits: int) -> float:
    fraction = 0.0
    for position in range(bits):
        reply = bit_oracle_query(oracle, format_query(b, position))
        fraction += int(reply[-1]) / 2 ** (position + 1)
    return fraction


def _known_component_scores(
    table: npt.NDArray[np.float64], phases: dict[int, float]
) -> npt.NDArray[np.float64]:
    eta = np.zeros(table.size, dtype=np.complex128)
    for index, fraction in phases.items():
        eta[index] = table[index] * np.exp(2j * np.pi * fraction)
    weight = float(np.vdot(eta, eta).real)
    if weight == 0.0:
        return np.zeros(table.size)
    rotated = hadamard_all(PureState.from_amplitudes(eta))
    return weight * rotated.probabilities()


def rotated_concentration(
    table: npt.NDArray[np.float64], probed: Sequence[int]
) -> tuple[float, float]:
    """Return the largest rotated weight of the known part and its ceiling.

    The known part is ``eta = sum_{b in S} psi_b |b>``. Every rotated
    amplitude ``<z|H^n|eta>`` is at most ``sum_{b in S} |psi_b| / 2^{n/2}``
    by the triangle inequality, whatever the phases.

    Parameters
    ----------
    table : npt.NDArray[np.float64]
        Moduli of the reference.
    probed : Sequence[int]
        Indices in ``S``.

    Returns
    -------
    tuple[float, float]
        ``max_z |<z|H^n|eta>|^2`` with zero phases on ``S`` and the
        ceiling ``(sum_S |psi_b|)^2 / 2^n``.
    """
    scores = _known_component_scores(table, dict.fromkeys(probed, 0.0))
    ceiling = float(np.sum(table[list(probed)])) ** 2 / table.size
    return float(scores.max()), ceiling


def _top_unseen(
    scores: npt.NDArray[np.float64], chosen: list[int], count: int
) -> list[int]:
    order = np.lexsort((np.arange(scores.size), -scores))
    picked = [int(z) for z in order if int(z) not in chosen]
    return picked[:count]


def classical_rxhog_solver(
    strategy: ClassicalStrategy,
    oracle: BitStringOracle,
    table: npt.NDArray[np.float64],
    k: int,
    rng: np.random.Generator,
    bits: int = 32,
) -> RxhogRun:
    """Run a classical solver that knows the moduli and may read phases.

    ``z-sampler`` outputs ``k`` distinct computational-basis samples.
    ``table-only`` ranks rotated strings by the all-zero-phase guess
    built from the moduli. ``phase-probe`` reads the phases of the
    ``probe_count`` largest moduli, builds the known component
    ``eta`` and outputs the strings where ``|<z|H^n|eta>|^2`` is
    largest; the adaptive variant probes in ``k`` rounds and picks one
    string after each round.

    Parameters
    ----------
    strategy : ClassicalStrategy
        The solver.
    oracle : BitStringOracle
        The oracle of ``U|0>``.
    table : npt.NDArray[np.float64]
        The moduli ``|<b|psi>|``.
    k : int
        Distinct strings to output.
    rng : np.random.Generator
        Stream for the sampler.
    bits : int, optional
        Digits read per phase, by default 32.

    Returns
    -------
    RxhogRun
        The run.

    Raises
    ------
    ValueError
        If ``k`` is out of range or the probes exceed the budget.
    """
    n = oracle.n
    _check_k(k, n)
    bits = check_precision(bits)
    truth = rotated_probabilities(oracle.reference)
    start = oracle.queries
    if strategy.kind == "z-sampler":
        chosen = _z_samples(oracle, k, rng, bits)
        expected = expected_distinct_score(
            table**2, truth, k, spawn(rng, "expected")
        )
    elif strategy.kind == "table-only":
        guess = dict.fromkeys(range(table.size), 0.0)
        chosen = _top_unseen(_known_component_scores(table, guess), [], k)
        expected = float(np.mean(truth[chosen]))
    else:
        if strategy.probe_count * bits > strategy.query_budget:
            raise ValueError(
                f"{strategy.probe_count} probes of {bits} digits exceed "
                f"budget {strategy.query_budget}"
            )
        chosen = _phase_probe(strategy, oracle, table, k, bits)
        expected = float(np.mean(truth[chosen]))
    samples = [format(z, f"0{n}b") for z in chosen]
    queries = oracle.queries - start
    return RxhogRun(
        strategy=strategy.kind + ("-adaptive" if strategy.adaptive else ""),
        n=n,
        k=k,
        bits=bits,
        samples=tuple(samples),
        score=rxhog_score(oracle.reference, samples),
        expected_score=expected,
        queries=queries,
        extra={"probed": float(strategy.probe_count)},
    )


def _z_samples(
    oracle: BitStringOracle, k: int, rng: np.random.Generator, bits: int
) -> list[int]:
    seen: list[int] = []
    for _ in range(100 * k):
        if len(seen) == k:
            return seen
        z = int(classical_z_sampler(oracle, rng, bits), 2)
        if z not in seen:
            seen.append(z)
    # the cap is only reached on near-basis references
    law = coefficient_table(oracle) ** 2
    return seen + _top_unseen(law, seen, k - len(seen))


def _phase_probe(
    strategy: ClassicalStrategy,
    oracle: BitStringOracle,
    table: npt.NDArray[np.float64],
    k: int,
    bits: int,
) -> list[int]:
    n = oracle.n
    order = [int(i) for i in np.lexsort((np.arange(table.size), -table))]
    probes = order[: strategy.probe_count]
    phases: dict[int, float] = {}
    if not strategy.adaptive:
        for index in probes:
            phases[index] = _probe_phase(oracle, format(index, f"0{n}b"), bits)
        return _top_unseen(_known_component_scores(table, phases), [], k)
    chosen: list[int] = []
    rounds = np.array_split(np.array(probes, dtype=int), k)
    for batch in rounds:
        for index in batch:
            phases[int(index)] = _probe_phase(
                oracle, format(int(index), f"0{n}b"), bits
            )
        chosen += _top_unseen(
            _known_component_scores(table, phases), chosen, 1
        )
    return chosen
