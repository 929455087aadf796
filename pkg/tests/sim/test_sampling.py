# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for Haar sampling, measurement and the swap test."""

# pylint: disable=missing-function-docstring,missing-param-doc
import math

import numpy as np
import pytest

from qwitness.rng import derive_rng
from qwitness.sim import (
    PureState,
    fidelity,
    haar_random_amplitudes,
    haar_random_state,
    haar_random_unitary,
    measure_qubits,
    outcome_probabilities,
    swap_test,
    swap_test_pass_probability,
)

BELL = PureState.from_amplitudes([1.0, 0.0, 0.0, 1.0])


def test_haar_state_is_normalized(rng: np.random.Generator) -> None:
    for n in (1, 3, 5):
        state = haar_random_state(n, rng)
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-10
    with pytest.raises(ValueError):
        haar_random_state(0, rng)


def test_haar_mean_overlap(rng: np.random.Generator) -> None:
    size = 20_000
    a = haar_random_amplitudes(3, size, rng)
    b = haar_random_amplitudes(3, size, rng)
    values = np.abs(np.sum(a.conj() * b, axis=1)) ** 2
    sigma = math.sqrt(7 / (64 * 9) / size)
    assert abs(values.mean() - 1 / 8) < 4 * sigma


def test_haar_unitary_is_unitary(rng: np.random.Generator) -> None:
    unitary = haar_random_unitary(3, rng)
    assert np.allclose(unitary.matrix.conj().T @ unitary.matrix, np.eye(8))


def test_measure_basis_state(rng: np.random.Generator) -> None:
    bits, post = measure_qubits(PureState.zero(1), [0], rng)
    assert bits == "0"
    assert np.allclose(post.amplitudes, [1, 0])


def test_measure_bell_collapses(rng: np.random.Generator) -> None:
    seen = set()
    for _ in range(40):
        bits, post = measure_qubits(BELL, [0], rng)
        seen.add(bits)
        expected = PureState.from_bitstring(bits * 2)
        assert fidelity(post, expected) == pytest.approx(1.0)
    assert seen == {"0", "1"}


def test_measurement_follows_born_rule() -> None:
    rng = derive_rng(11, 0, "born")
    state = haar_random_state(4, rng)
    exact = outcome_probabilities(state, range(4))
    shots = 10_000
    counts = np.zeros(16)
    for _ in range(shots):
        bits, _ = measure_qubits(state, range(4), rng)
        counts[int(bits, 2)] += 1
    sigma = np.sqrt(exact * (1 - exact) / shots)
    assert np.all(np.abs(counts / shots - exact) <= 4 * sigma + 1e-3)


def test_outcome_order_follows_indices() -> None:
    state = PureState.from_bitstring("01")
    assert outcome_probabilities(state, [1, 0])[2] == pytest.approx(1.0)


@pytest.mark.parametrize("overlap", [0.0, 0.25, 0.5, 1.0])
def test_swap_test_law(overlap: float) -> None:
    rng = derive_rng(5, int(overlap * 100), "swap")
    a = PureState.zero(1)
    b = PureState(
        np.array([math.sqrt(overlap), math.sqrt(1 - overlap)], complex)
    )
    expected = (1 + overlap) / 2
    assert swap_test_pass_probability(a, b) == pytest.approx(expected)
    shots = 4000
    passes = sum(swap_test(a, b, rng) for _ in range(shots))
    sigma = math.sqrt(max(expected * (1 - expected), 1e-9) / shots)
    assert abs(passes / shots - expected) <= 3 * sigma + 1e-9


def test_swap_test_identical_always_passes(rng: np.random.Generator) -> None:
    a = haar_random_state(2, rng)
    assert all(swap_test(a, a, rng) == 1 for _ in range(50))


def test_swap_test_rejects_mismatch(rng: np.random.Generator) -> None:
    with pytest.raises(ValueError):
        swap_test(PureState.zero(1), PureState.zero(2), rng)
