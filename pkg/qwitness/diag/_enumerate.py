# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Exhaustive circuit listing in length-then-lexicographic order."""

import itertools
from math import perm
from typing import Iterable, Iterator

from qwitness.sim import Circuit, GateKind, GateOp, arity, parse_gate_set


def gate_placements(
    gate_set: Iterable[str | GateKind], width: int
) -> tuple[GateOp, ...]:
    """Return every single gate of the set on a ``width``-qubit register.

    Parameters
    ----------
    gate_set : Iterable[str | GateKind]
        Allowed kinds.
    width : int
        The register width.

    Returns
    -------
    tuple[GateOp, ...]
        Placements sorted by kind rank, then target tuple.
    """
    ops = [
        GateOp(kind=kind, targets=targets)
        for kind in parse_gate_set(gate_set)
        if arity(kind) <= width
        for targets in itertools.permutations(range(width), arity(kind))
    ]
    return tuple(sorted(ops, key=GateOp.sort_key))


def count_circuits(
    gate_set: Iterable[str | GateKind], width: int, length: int
) -> int:
    """Return the number of circuits of exactly ``length`` gates.

    Parameters
    ----------
    gate_set : Iterable[str | GateKind]
        Allowed kinds.
    width : int
        The register width.
    length : int
        The gate count.

    Returns
    -------
    int
        ``(sum over kinds of width! / (width - arity)!) ** length``.
    """
    kinds = [k for k in parse_gate_set(gate_set) if arity(k) <= width]
    return sum(perm(width, arity(k)) for k in kinds) ** length


def enumerate_circuits(
    gate_set: Iterable[str | GateKind],
    width: int,
    max_len: int | None,
    min_len: int = 0,
) -> Iterator[Circuit]:
    """Yield circuits by length, then lexicographically by placement.

    Parameters
    ----------
    gate_set : Iterable[str | GateKind]
        Allowed kinds.
    width : int
        The register width.
    max_len : int | None
        Longest length emitted; None streams without end.
    min_len : int, optional
        Shortest length emitted, by default 0.

    Yields
    ------
    Circuit
        Each circuit exactly once.

    Raises
    ------
    ValueError
        If the length range is invalid.
    """
    if min_len < 0 or (max_len is not None and max_len < 0):
        raise ValueError(f"invalid length range [{min_len}, {max_len}]")
    placements = gate_placements(gate_set, width)
    lengths = (
        itertools.count(min_len)
        if max_len is None
        else range(min_len, max_len + 1)
    )
    for length in lengths:
        if length and not placements:
            return
        for ops in itertools.product(placements, repeat=length):
            yield Circuit(width=width, ops=ops)
