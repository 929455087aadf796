# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for preparing a state from its description oracle."""

# pylint: disable=missing-function-docstring,missing-param-doc
import numpy as np
import pytest

from qwitness.oracles import BitStringOracle
from qwitness.rng import derive_rng
from qwitness.rxhog import (
    classical_z_sampler,
    preparation_error_bound,
    prepare_via_oracle,
)
from qwitness.sim import PureState, fidelity, haar_random_state


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8])
def test_preparation_fidelity(n: int) -> None:
    reference = haar_random_state(n, derive_rng(n, 0, "prepare"))
    oracle = BitStringOracle(reference, p_max=32)
    preparation = prepare_via_oracle(oracle, 32)
    assert fidelity(preparation.state, reference) >= 1 - 1e-6
    assert preparation.ancilla_residual <= 1e-10
    assert preparation.queries == 2 * 32 * (n + 1)
    assert oracle.queries == preparation.queries


def test_low_precision_loses_fidelity() -> None:
    reference = haar_random_state(3, derive_rng(3, 0, "coarse"))
    coarse = prepare_via_oracle(BitStringOracle(reference, p_max=2), 2)
    fine = prepare_via_oracle(BitStringOracle(reference, p_max=24), 24)
    assert fidelity(coarse.state, reference) < fidelity(fine.state, reference)
    assert 1 - fidelity(fine.state, reference) <= preparation_error_bound(
        3, 24
    )


def test_basis_reference_is_exact() -> None:
    reference = PureState.from_bitstring("101")
    preparation = prepare_via_oracle(BitStringOracle(reference, p_max=8), 8)
    assert fidelity(preparation.state, reference) == pytest.approx(1.0)


def test_precision_must_be_available() -> None:
    oracle = BitStringOracle(PureState.zero(2), p_max=8)
    with pytest.raises(ValueError, match="exposes 8 digits"):
        prepare_via_oracle(oracle, 16)


def test_error_bound() -> None:
    assert preparation_error_bound(8, 32) == pytest.approx(512 * 2.0**-32)
    assert preparation_error_bound(8, 2) == 1.0


def test_z_sampler_on_basis_state() -> None:
    oracle = BitStringOracle(PureState.from_bitstring("10"), p_max=64)
    rng = derive_rng(1, 0, "z")
    assert {classical_z_sampler(oracle, rng) for _ in range(50)} == {"10"}


def test_z_sampler_follows_born_rule() -> None:
    rng = derive_rng(2, 0, "z")
    reference = haar_random_state(2, rng)
    oracle = BitStringOracle(reference, p_max=32)
    shots = 4000
    counts = np.zeros(4)
    for _ in range(shots):
        counts[int(classical_z_sampler(oracle, rng), 2)] += 1
    exact = reference.probabilities()
    sigma = np.sqrt(exact * (1 - exact) / shots)
    assert np.all(np.abs(counts / shots - exact) <= 4 * sigma + 1e-3)
    # digits are read lazily, far fewer than the cap per level
    assert oracle.queries < shots * 2 * 8


def test_z_sampler_digit_cap() -> None:
    oracle = BitStringOracle(haar_random_state(3, derive_rng(3)), p_max=64)
    rng = derive_rng(3, 1, "z")
    for _ in range(20):
        before = oracle.queries
        bits = classical_z_sampler(oracle, rng, bits=2)
        assert len(bits) == 3
        assert oracle.queries - before <= 3 * 2
