# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for rotated heavy-output scoring and its solvers."""

# pylint: disable=missing-function-docstring,missing-param-doc
import numpy as np
import pytest
from pydantic import ValidationError

from qwitness.oracles import BitStringOracle
from qwitness.rng import derive_rng
from qwitness.rxhog import (
    ClassicalStrategy,
    classical_rxhog_solver,
    coefficient_table,
    draw_distinct,
    expected_distinct_score,
    quantum_rxhog_solver,
    rotated_concentration,
    rotated_probabilities,
    rxhog_score,
)
from qwitness.sim import PureState, haar_random_state, haar_random_unitary


def _oracle(n: int, seed: int = 0) -> BitStringOracle:
    reference = haar_random_state(n, derive_rng(seed, n, "rxhog"))
    return BitStringOracle(reference, p_max=32)


def test_rotated_probabilities_of_zero_state() -> None:
    assert np.allclose(rotated_probabilities(PureState.zero(2)), 0.25)
    plain = rotated_probabilities(PureState.zero(2), rotate=False)
    assert np.allclose(plain, [1, 0, 0, 0])


def test_unitary_target_uses_first_column() -> None:
    unitary = haar_random_unitary(3, derive_rng(4))
    assert np.allclose(
        rotated_probabilities(unitary),
        rotated_probabilities(unitary.column(0)),
    )


def test_score_is_mean_of_probabilities() -> None:
    assert rxhog_score(PureState.zero(2), ["00", "11"]) == pytest.approx(0.25)
    plus = PureState.from_amplitudes([1.0, 1.0])
    assert rxhog_score(plus, ["0"]) == pytest.approx(1.0)
    assert rxhog_score(plus, ["1"]) == pytest.approx(0.0, abs=1e-12)


def test_score_rejects_bad_samples() -> None:
    state = PureState.zero(2)
    with pytest.raises(ValueError, match="distinct"):
        rxhog_score(state, ["01", "01"])
    with pytest.raises(ValueError, match="2-bit"):
        rxhog_score(state, ["011"])
    with pytest.raises(ValueError, match="2-bit"):
        rxhog_score(state, ["0a"])
    with pytest.raises(ValueError, match="no samples"):
        rxhog_score(state, [])


def test_draw_distinct(rng: np.random.Generator) -> None:
    law = np.array([0.4, 0.3, 0.2, 0.1])
    drawn = draw_distinct(law, 4, rng)
    assert sorted(drawn) == [0, 1, 2, 3]
    # a point mass falls back to elimination after the resampling cap
    point = draw_distinct(np.array([1.0, 0.0, 0.0, 0.0]), 3, rng)
    assert point[0] == 0
    assert len(set(point)) == 3


def test_quantum_solver() -> None:
    oracle = _oracle(4)
    run = quantum_rxhog_solver(oracle, 3, 32, derive_rng(0, 0, "solver"))
    truth = rotated_probabilities(oracle.reference)
    assert run.strategy == "quantum"
    assert len(set(run.samples)) == 3
    assert run.queries == 2 * 32 * 5
    single = quantum_rxhog_solver(oracle, 1, 32, derive_rng(0, 1, "solver"))
    assert single.expected_score == pytest.approx(
        float(np.sum(truth**2)), abs=1e-6
    )
    assert run.expected_score < single.expected_score
    assert run.extra["ancilla_residual"] <= 1e-10
    row = run.row()
    assert row["p"] == 32
    assert row["strategy"] == "quantum"
    assert "ancilla_residual" in row
    with pytest.raises(ValueError, match="k must be"):
        quantum_rxhog_solver(oracle, 17, 32, derive_rng(0))


def test_expected_score_of_two_distinct_draws(rng: np.random.Generator) -> None:
    law = np.array([0.4, 0.25, 0.15, 0.1, 0.05, 0.03, 0.015, 0.005])
    truth = np.linspace(1.0, 0.0, law.size)
    exact = 0.0
    for a, p_a in enumerate(law):
        for b, p_b in enumerate(law):
            if a != b:
                exact += p_a * p_b / (1 - p_a) * (truth[a] + truth[b]) / 2
    estimate = expected_distinct_score(law, truth, 2, rng)
    assert estimate == pytest.approx(exact, abs=0.02)
    assert expected_distinct_score(law, truth, 1, rng) == pytest.approx(
        float(np.dot(law, truth))
    )


def test_expected_score_matches_sampled_mean(rng: np.random.Generator) -> None:
    law = rotated_probabilities(haar_random_state(5, derive_rng(3)))
    truth = law
    scores = [
        float(np.mean(truth[draw_distinct(law, 10, rng)]))
        for _ in range(2000)
    ]
    estimate = expected_distinct_score(law, truth, 10, rng)
    sigma = float(np.std(scores)) / np.sqrt(len(scores))
    assert estimate == pytest.approx(np.mean(scores), abs=4 * sigma + 2e-3)
    assert estimate < float(np.dot(law, truth))


def test_support_exhaustion_spreads_over_zero_law(
    rng: np.random.Generator,
) -> None:
    law = np.array([0.7, 0.3, 0.0, 0.0])
    truth = np.array([0.4, 0.3, 0.2, 0.1])
    assert expected_distinct_score(law, truth, 3, rng) == pytest.approx(
        (0.4 + 0.3 + 0.15) / 3
    )


def test_full_support_scores_uniform() -> None:
    n = 4
    oracle = _oracle(n, 6)
    table = coefficient_table(oracle)
    quantum = quantum_rxhog_solver(oracle, 2**n, 20, derive_rng(6))
    sampler = classical_rxhog_solver(
        ClassicalStrategy(kind="z-sampler"),
        oracle,
        table,
        2**n,
        derive_rng(6),
        bits=20,
    )
    for run in (quantum, sampler):
        assert len(run.samples) == 2**n
        assert run.score == pytest.approx(1 / 2**n)
        assert run.expected_score == pytest.approx(1 / 2**n)


def test_quantum_beats_z_sampler_on_average() -> None:
    rng = derive_rng(5, 0, "advantage")
    quantum, classical = [], []
    sampler = ClassicalStrategy(kind="z-sampler")
    for trial in range(100):
        oracle = _oracle(4, trial)
        table = coefficient_table(oracle)
        quantum.append(
            quantum_rxhog_solver(oracle, 1, 20, rng).expected_score
        )
        classical.append(
            classical_rxhog_solver(
                sampler, oracle, table, 1, rng, bits=20
            ).expected_score
        )
    assert np.mean(quantum) == pytest.approx(2 / 17, rel=0.15)
    assert 1.5 <= np.mean(quantum) / np.mean(classical) <= 2.5


def test_classical_strategy_validation() -> None:
    with pytest.raises(ValidationError):
        ClassicalStrategy(kind="phase-probe", probe_count=5, query_budget=4)
    with pytest.raises(ValidationError):
        ClassicalStrategy(kind="oracle-free")
    oracle = _oracle(3)
    strategy = ClassicalStrategy(
        kind="phase-probe", probe_count=2, query_budget=10
    )
    with pytest.raises(ValueError, match="exceed budget"):
        classical_rxhog_solver(
            strategy, oracle, coefficient_table(oracle), 1, derive_rng(0)
        )


def test_table_only_makes_no_queries() -> None:
    oracle = _oracle(3)
    strategy = ClassicalStrategy(kind="table-only")
    run = classical_rxhog_solver(
        strategy, oracle, coefficient_table(oracle), 2, derive_rng(0)
    )
    assert run.queries == 0
    assert run.strategy == "table-only"
    assert len(set(run.samples)) == 2
    assert run.expected_score == pytest.approx(run.score)


def test_full_phase_probe_finds_heaviest_string() -> None:
    oracle = _oracle(3)
    strategy = ClassicalStrategy(
        kind="phase-probe", probe_count=8, query_budget=8 * 32
    )
    run = classical_rxhog_solver(
        strategy, oracle, coefficient_table(oracle), 1, derive_rng(0)
    )
    truth = rotated_probabilities(oracle.reference)
    assert run.queries == 8 * 32
    assert run.samples == (format(int(np.argmax(truth)), "03b"),)
    assert run.expected_score == pytest.approx(truth.max(), abs=1e-8)


def test_adaptive_phase_probe() -> None:
    oracle = _oracle(3)
    strategy = ClassicalStrategy(
        kind="phase-probe", probe_count=4, query_budget=4 * 8, adaptive=True
    )
    run = classical_rxhog_solver(
        strategy, oracle, coefficient_table(oracle), 2, derive_rng(0), bits=8
    )
    assert run.strategy == "phase-probe-adaptive"
    assert len(set(run.samples)) == 2
    assert run.queries == 4 * 8
    assert run.extra["probed"] == 4.0


@pytest.mark.parametrize("probe_count", [0, 1, 2, 6])
def test_bounded_probes_stay_under_ceiling(probe_count: int) -> None:
    n = 6
    ceiling = 2 * (1 / 2**n + n**4 / 2 ** (2 * n))
    strategies = [
        ClassicalStrategy(kind="table-only"),
        ClassicalStrategy(kind="z-sampler"),
        ClassicalStrategy(
            kind="phase-probe",
            probe_count=probe_count,
            query_budget=probe_count * 16,
        ),
    ]
    for seed in range(5):
        oracle = _oracle(n, seed)
        table = coefficient_table(oracle)
        for strategy in strategies:
            run = classical_rxhog_solver(
                strategy, oracle, table, 1, derive_rng(seed), bits=16
            )
            assert run.expected_score <= ceiling


def test_rotated_concentration() -> None:
    oracle = _oracle(4)
    table = coefficient_table(oracle)
    for probed in ([0], [0, 3, 5], list(range(16))):
        best, ceiling = rotated_concentration(table, probed)
        assert best <= ceiling + 1e-12
    _, full = rotated_concentration(table, list(range(16)))
    assert full == pytest.approx(float(np.sum(table)) ** 2 / 16)
    single, bound = rotated_concentration(table, [2])
    assert single == pytest.approx(bound)
