# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the single-use swap-test channel and its emulation."""

# pylint: disable=missing-function-docstring,missing-param-doc
import math

import numpy as np
import pytest

from qwitness.errors import OracleConsumedError
from qwitness.oracles import (
    ChannelOracle,
    MarkedStateOracle,
    apply_channel,
    emulate_channel_with_marked_oracle,
    orthogonal_partner,
    pass_count_tail,
)
from qwitness.rng import derive_rng
from qwitness.sim import PureState, ProductState, haar_random_state

PLUS = PureState.from_amplitudes([1.0, 1.0])


def _channel(
    n: int, language_bit: bool, shot: int = 0, **kwargs: bool
) -> ChannelOracle:
    rng = derive_rng(1, 0, "marked")
    marked = [haar_random_state(n, rng) for _ in range(n)]
    return ChannelOracle(
        marked,
        kappa=5 / 6,
        language_bit=language_bit,
        rng=derive_rng(1, shot, "channel"),
        **kwargs,
    )


def test_pass_count_tail() -> None:
    assert pass_count_tail([0.5] * 6, 5) == pytest.approx(7 / 64)
    assert pass_count_tail([1.0, 1.0, 1.0], 3) == pytest.approx(1.0)
    assert pass_count_tail([0.2, 0.7], 0) == pytest.approx(1.0)


def test_threshold_is_ceiling() -> None:
    assert _channel(6, True).threshold == 5
    assert _channel(3, True).threshold == 3
    assert _channel(1, True).threshold == 1


def test_orthogonal_blocks_flip_probability() -> None:
    oracle = _channel(6, True)
    blocks = [orthogonal_partner(state) for state in oracle.marked]
    assert oracle.flip_probability(blocks) == pytest.approx(7 / 64)
    assert oracle.flip_probability(oracle.marked) == pytest.approx(1.0)
    assert not oracle.consumed


def test_exact_copies_always_flip() -> None:
    oracle = _channel(2, True, classical_reply=False)
    register = ProductState((*oracle.marked, PureState.zero(1)))
    reply = apply_channel(oracle, register)
    assert reply.passes == 2
    assert reply.flipped
    assert reply.qubit is not None
    assert reply.qubit.matrix[1, 1].real == pytest.approx(1.0)
    assert oracle.consumed
    assert oracle.queries == 1


def test_dense_register_matches_blockwise() -> None:
    oracle = _channel(2, True)
    dense = oracle.marked[0].tensor(oracle.marked[1], PureState.zero(1))
    reply = apply_channel(oracle, dense)
    assert reply.passes == 2
    assert reply.bit == 1


def test_outside_language_is_identity() -> None:
    oracle = _channel(2, False, classical_reply=False)
    register = ProductState((*oracle.marked, PLUS))
    reply = apply_channel(oracle, register)
    assert not reply.flipped
    assert reply.qubit is not None
    assert np.allclose(reply.qubit.matrix, PLUS.density().matrix)
    assert _channel(2, False).flip_probability(oracle.marked) == 0.0


def test_second_use_is_refused() -> None:
    oracle = _channel(2, True)
    register = ProductState((*oracle.marked, PureState.zero(1)))
    apply_channel(oracle, register)
    with pytest.raises(OracleConsumedError):
        apply_channel(oracle, register)


def test_width_and_parameter_checks() -> None:
    oracle = _channel(2, True)
    with pytest.raises(ValueError, match="needs 5 qubits"):
        apply_channel(oracle, PureState.zero(4))
    assert not oracle.consumed
    with pytest.raises(ValueError, match="kappa"):
        ChannelOracle(oracle.marked, 0.0, True, derive_rng(0))
    with pytest.raises(ValueError, match="n marked states"):
        ChannelOracle([PureState.zero(2)], 0.5, True, derive_rng(0))


def test_flip_rate_matches_exact_probability() -> None:
    rng = derive_rng(8, 0, "blocks")
    blocks = [haar_random_state(2, rng) for _ in range(2)]
    shots = 2000
    expected = _channel(2, True).flip_probability(blocks)
    flips = 0
    for shot in range(shots):
        oracle = _channel(2, True, shot)
        reply = apply_channel(oracle, ProductState((*blocks, PLUS)))
        flips += reply.flipped
    sigma = math.sqrt(expected * (1 - expected) / shots)
    assert abs(flips / shots - expected) <= 4 * sigma + 1e-3


def _leak(psi: PureState) -> float:
    # V|0..0> differs from |0..0> by the weight of psi on the zero string
    return float(abs(psi.amplitudes[0]) ** 2)


def test_emulation_flips_on_the_marked_state() -> None:
    rng = derive_rng(2, 0, "emulation")
    psi = haar_random_state(4, rng)
    reply = emulate_channel_with_marked_oracle(
        MarkedStateOracle(psi), psi.tensor(PureState.zero(1)), rng
    )
    assert reply.qubit is not None
    assert reply.qubit.matrix[1, 1].real == pytest.approx(
        1.0 - _leak(psi), abs=1e-10
    )
    inactive = emulate_channel_with_marked_oracle(
        MarkedStateOracle(psi, active=False),
        psi.tensor(PureState.zero(1)),
        rng,
    )
    assert inactive.qubit is not None
    assert inactive.qubit.matrix[0, 0].real == pytest.approx(1.0)


def test_emulation_width_mismatch() -> None:
    oracle = MarkedStateOracle(PureState.zero(2))
    with pytest.raises(ValueError, match="emulation needs 3"):
        emulate_channel_with_marked_oracle(
            oracle, PureState.zero(2), derive_rng(0)
        )


def _orthogonal_to(psi: PureState, rng: np.random.Generator) -> PureState:
    seed = haar_random_state(psi.n_qubits, rng).amplitudes
    overlap = np.vdot(psi.amplitudes, seed)
    return PureState.from_amplitudes(seed - overlap * psi.amplitudes)


def test_emulation_agrees_with_channel_action() -> None:
    # n = 3: the marked oracle spans n^2 = 9 qubits
    rng = derive_rng(10, 0, "agreement")
    psi = haar_random_state(9, rng)
    oracle = MarkedStateOracle(psi)
    distances = []
    for trial in range(100):
        answer = int(rng.integers(2))
        if trial % 2 == 0:
            block, ideal = psi, 1 - answer
        else:
            block, ideal = _orthogonal_to(psi, rng), answer
        sigma = block.tensor(PureState.basis(1, answer))
        reply = emulate_channel_with_marked_oracle(oracle, sigma, rng)
        assert reply.qubit is not None
        distances.append(abs(reply.qubit.matrix[1, 1].real - ideal))
    assert max(distances) < 0.1
    assert max(distances) == pytest.approx(_leak(psi), abs=1e-9)
    assert oracle.queries == 100
