# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for circuit enumeration."""

# pylint: disable=missing-function-docstring,missing-param-doc
import itertools

import pytest

from qwitness.diag import count_circuits, enumerate_circuits, gate_placements
from qwitness.sim import GateKind


def test_placements_skip_wide_gates() -> None:
    assert len(gate_placements(["H", "T", "CNOT"], 1)) == 2
    placements = gate_placements(["H", "T", "CNOT"], 2)
    assert len(placements) == 6
    assert [op.kind for op in placements[:2]] == [GateKind.H, GateKind.H]


@pytest.mark.parametrize(("width", "length"), [(1, 3), (2, 2), (3, 1)])
def test_count_matches_enumeration(width: int, length: int) -> None:
    gate_set = ["H", "T", "CNOT"]
    emitted = list(enumerate_circuits(gate_set, width, length, length))
    assert len(emitted) == count_circuits(gate_set, width, length)
    assert len(set(emitted)) == len(emitted)


def test_order_is_by_length_then_placement() -> None:
    circuits = list(enumerate_circuits(["H", "T"], 1, 2))
    assert [len(c) for c in circuits] == [0, 1, 1, 2, 2, 2, 2]
    assert circuits[1].ops[0].kind is GateKind.H
    assert circuits[2].ops[0].kind is GateKind.T


def test_unbounded_stream() -> None:
    stream = enumerate_circuits(["H"], 1, None, min_len=2)
    lengths = [len(c) for c in itertools.islice(stream, 3)]
    assert lengths == [2, 3, 4]


def test_invalid_range() -> None:
    with pytest.raises(ValueError, match="invalid length"):
        list(enumerate_circuits(["H"], 1, -1))
    with pytest.raises(ValueError, match="invalid length"):
        list(enumerate_circuits(["H"], 1, 2, min_len=-1))
