# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the marked-state oracle and its one-query check."""

# pylint: disable=missing-function-docstring,missing-param-doc
import threading

import numpy as np
import pytest

from qwitness.oracles import (
    MarkedStateOracle,
    apply_marked,
    case_one_acceptance,
    orthogonal_partner,
    verify_case_one,
)
from qwitness.sim import PureState, fidelity, haar_random_state


def test_marked_state_gets_sign(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    oracle = MarkedStateOracle(psi)
    out = apply_marked(oracle, psi)
    assert np.allclose(out.amplitudes, -psi.amplitudes, atol=1e-10)
    assert oracle.queries == 1


def test_orthogonal_state_is_unchanged(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    other = orthogonal_partner(psi)
    assert abs(psi.inner(other)) < 1e-10
    out = apply_marked(MarkedStateOracle(psi), other)
    assert np.allclose(out.amplitudes, other.amplitudes, atol=1e-10)


def test_inactive_oracle_is_identity(rng: np.random.Generator) -> None:
    psi = haar_random_state(2, rng)
    oracle = MarkedStateOracle(psi, active=False)
    out = apply_marked(oracle, psi)
    assert np.allclose(out.amplitudes, psi.amplitudes)
    assert oracle.queries == 1


def test_oracle_is_an_involution(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(2, rng))
    state = haar_random_state(2, rng)
    twice = apply_marked(oracle, apply_marked(oracle, state))
    assert np.allclose(twice.amplitudes, state.amplitudes, atol=1e-10)


def test_subsystem_query_leaves_other_qubits(
    rng: np.random.Generator,
) -> None:
    psi = haar_random_state(1, rng)
    oracle = MarkedStateOracle(psi)
    joint = PureState.from_bitstring("1").tensor(psi)
    out = apply_marked(oracle, joint, targets=[1])
    assert np.allclose(out.amplitudes, -joint.amplitudes, atol=1e-10)


def test_bad_targets_are_rejected(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(2, rng))
    state = haar_random_state(3, rng)
    with pytest.raises(ValueError, match="distinct"):
        apply_marked(oracle, state, targets=[0, 0])
    with pytest.raises(ValueError, match="outside"):
        apply_marked(oracle, state, targets=[2, 3])
    assert oracle.queries == 0


def test_case_one_check(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    active = MarkedStateOracle(psi)
    assert case_one_acceptance(active, psi) == pytest.approx(1.0)
    assert all(verify_case_one(active, psi, rng) for _ in range(20))
    assert active.queries == 20
    inactive = MarkedStateOracle(psi, active=False)
    assert case_one_acceptance(inactive, psi) == pytest.approx(0.0, abs=1e-12)
    assert not any(verify_case_one(inactive, psi, rng) for _ in range(20))


def test_case_one_half_fidelity_candidate(rng: np.random.Generator) -> None:
    psi = haar_random_state(3, rng)
    partner = orthogonal_partner(psi)
    candidate = PureState.from_amplitudes(
        psi.amplitudes + partner.amplitudes
    )
    assert fidelity(candidate, psi) == pytest.approx(0.5)
    probability = case_one_acceptance(MarkedStateOracle(psi), candidate)
    assert 0.0 < probability < 1.0


def test_case_one_width_mismatch(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(2, rng))
    with pytest.raises(ValueError, match="width"):
        verify_case_one(oracle, haar_random_state(3, rng), rng)


def test_query_count_is_thread_safe(rng: np.random.Generator) -> None:
    oracle = MarkedStateOracle(haar_random_state(1, rng))

    def work() -> None:
        for _ in range(250):
            oracle.record_query()

    threads = [threading.Thread(target=work) for _ in range(4)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert oracle.queries == 1000
    oracle.reset_queries()
    assert oracle.queries == 0
