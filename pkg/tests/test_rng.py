# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the keyed random streams."""

# pylint: disable=missing-function-docstring,missing-param-doc
import numpy as np
import pytest

from qwitness.rng import derive_rng, spawn


def _draw(rng: np.random.Generator) -> list[int]:
    return rng.integers(0, 2**32, size=4).tolist()


def test_same_keys_same_stream() -> None:
    assert _draw(derive_rng(3, 1, "a")) == _draw(derive_rng(3, 1, "a"))


@pytest.mark.parametrize(
    "other", [(4, 1, "a"), (3, 2, "a"), (3, 1, "b"), (3, 1, "")]
)
def test_any_key_changes_the_stream(other: tuple[int, int, str]) -> None:
    assert _draw(derive_rng(3, 1, "a")) != _draw(derive_rng(*other))


def test_streams_do_not_depend_on_call_order() -> None:
    first = derive_rng(9, 0, "x")
    _draw(derive_rng(9, 1, "x"))
    assert _draw(first) == _draw(derive_rng(9, 0, "x"))


def test_seed_is_a_64_bit_word() -> None:
    assert _draw(derive_rng(2**64 + 5)) == _draw(derive_rng(5))


def test_negative_keys_are_rejected() -> None:
    with pytest.raises(ValueError):
        derive_rng(-1)
    with pytest.raises(ValueError):
        derive_rng(1, -1)


def test_spawn() -> None:
    first = spawn(derive_rng(1), "child")
    second = spawn(derive_rng(1), "child")
    assert _draw(first) == _draw(second)
    parent = derive_rng(1)
    assert _draw(spawn(parent, "child")) != _draw(spawn(parent, "child"))
