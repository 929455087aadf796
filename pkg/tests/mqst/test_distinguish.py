# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for query strategies against a phase-flip oracle."""

# pylint: disable=missing-function-docstring,missing-param-doc
import math

import numpy as np
import pytest

from qwitness.mqst import (
    NAMED_STRATEGIES,
    amplitude_amplification,
    near_marked_probe,
    random_strategy,
    run_mqst_distinguish,
    single_query_distance,
    state_preparation_unitary,
    superposition_probe,
)
from qwitness.oracles import MarkedStateOracle
from qwitness.rng import derive_rng
from qwitness.sim import (
    Circuit,
    PureState,
    apply_circuit,
    fidelity,
    haar_random_state,
    random_circuit,
    trace_distance_pure,
)


def test_inactive_oracle_gives_identical_branches(
    rng: np.random.Generator,
) -> None:
    oracle = MarkedStateOracle(haar_random_state(3, rng), active=False)
    run = run_mqst_distinguish(random_strategy(3, 4, 10, rng), oracle)
    assert run.measured_distance == pytest.approx(0.0, abs=1e-7)
    assert not run.violated
    assert oracle.queries == 4


def test_zero_query_strategy(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(2, rng))
    run = run_mqst_distinguish(random_strategy(2, 0, 5, rng), oracle)
    assert run.k == 0
    assert run.epsilon == 0.0
    assert run.bound == 0.0
    assert run.measured_distance == pytest.approx(0.0, abs=1e-7)


def test_random_strategies_respect_hybrid_bound(
    rng: np.random.Generator,
) -> None:
    for trial in range(100):
        oracle = MarkedStateOracle(haar_random_state(4, rng))
        k = 1 + trial % 8
        run = run_mqst_distinguish(random_strategy(4, k, 12, rng), oracle)
        assert run.measured_distance <= run.hybrid + 1e-9
        assert 0.0 <= run.epsilon <= 1.0
        row = run.row()
        assert row["k"] == k
        assert row["violated"] == run.violated


@pytest.mark.slow
def test_random_strategies_never_violate_bound() -> None:
    rng = derive_rng(6, 0, "indistinguishability")
    violations = 0
    for trial in range(1000):
        oracle = MarkedStateOracle(haar_random_state(6, rng))
        k = 1 + trial % 8
        run = run_mqst_distinguish(random_strategy(6, k, 20, rng), oracle)
        violations += run.violated
    assert violations == 0


def test_marked_subsystem_placement(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(2, rng))
    strategy = random_strategy(3, 2, 10, rng)
    run = run_mqst_distinguish(strategy, oracle, targets=[2, 0])
    assert run.traced_distance([0, 1]) <= run.measured_distance + 1e-9
    assert run.traced_distance(range(3)) == pytest.approx(
        run.measured_distance, abs=1e-7
    )


def test_final_circuit_keeps_branch_distance(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(3, rng))
    for k in (1, 3):
        run = run_mqst_distinguish(random_strategy(3, k, 12, rng), oracle)
        final = random_circuit(3, 25, rng)
        appended = trace_distance_pure(
            apply_circuit(run.final_identity, final),
            apply_circuit(run.final_flipped, final),
        )
        assert appended <= run.measured_distance + 1e-9
        assert appended == pytest.approx(run.measured_distance, abs=1e-9)


def test_superposition_probe_is_perfect(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    run = run_mqst_distinguish(
        superposition_probe(psi), MarkedStateOracle(psi), name="probe"
    )
    assert run.k == 1
    assert run.epsilon == pytest.approx(0.5)
    assert run.measured_distance == pytest.approx(1.0, abs=1e-7)
    assert run.clamped_bound == 1.0
    assert not run.violated


@pytest.mark.parametrize("k", [1, 2, 3])
def test_near_marked_probe(k: int) -> None:
    rng = derive_rng(1, k, "near")
    psi = haar_random_state(3, rng)
    run = run_mqst_distinguish(
        near_marked_probe(psi, 0.01, k), MarkedStateOracle(psi)
    )
    assert run.epsilon == pytest.approx(0.01)
    # an even number of reflections undoes itself
    expected = single_query_distance(0.01) if k % 2 else 0.0
    assert run.measured_distance == pytest.approx(expected, abs=1e-7)


def test_amplitude_amplification_rotates(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    theta, k = 0.05, 4
    run = run_mqst_distinguish(
        amplitude_amplification(psi, theta, k), MarkedStateOracle(psi)
    )
    assert run.epsilon == pytest.approx(math.sin(theta) ** 2)
    assert run.measured_distance == pytest.approx(
        math.sin(2 * k * theta), abs=1e-7
    )
    assert run.measured_distance <= run.hybrid
    with pytest.raises(ValueError, match="k >= 1"):
        amplitude_amplification(psi, theta, 0)


def test_named_strategies() -> None:
    assert set(NAMED_STRATEGIES) == {
        "superposition-probe",
        "near-marked-probe",
        "amplitude-amplification",
    }


@pytest.mark.parametrize("bits", ["000", "010", None])
def test_state_preparation_unitary(
    bits: str | None, rng: np.random.Generator
) -> None:
    target = (
        haar_random_state(3, rng)
        if bits is None
        else PureState.from_bitstring(bits)
    )
    unitary = state_preparation_unitary(target)
    assert fidelity(unitary.column(0), target) == pytest.approx(1.0)
    assert np.allclose(unitary.column(0).amplitudes, target.amplitudes)


def test_malformed_strategies(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(1, rng))
    with pytest.raises(ValueError, match="at least one step"):
        run_mqst_distinguish([], oracle)
    with pytest.raises(ValueError, match="mixed widths"):
        run_mqst_distinguish([Circuit(width=1), Circuit(width=2)], oracle)
