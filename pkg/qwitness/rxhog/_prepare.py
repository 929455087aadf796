# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Preparing a state from its bit-string oracle, and sampling it classically.

The quantum routine grows the state one qubit at a time. For every
level it writes the digits of each branch angle into an ancilla string
register with coherent oracle queries, rotates the new qubit by the
angle those digits encode, and erases the digits again with the same
queries. A final pass does the same with the phase digits.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from qwitness.oracles import (
    BitStringOracle,
    SymbolState,
    bit_oracle_query,
    bit_oracle_query_quantum,
    format_query,
    parse_query,
)
from qwitness.sim import PureState, check_capacity

from ._gates import build_cph, build_crot, check_precision, controlled_action

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preparation:
    """Output of :func:`prepare_via_oracle`."""

    state: PureState
    bits: int
    queries: int
    ancilla_residual: float


def preparation_error_bound(n: int, bits: int) -> float:
    """Return the tested infidelity ceiling ``64 n 2^-bits``.

    Parameters
    ----------
    n : int
        Reference width.
    bits : int
        Digits per angle.

    Returns
    -------
    float
        The ceiling, capped at 1.
    """
    return min(1.0, 64.0 * n * 2.0**-bits)


def _write_digits(
    oracle: BitStringOracle,
    amplitudes: dict[str, complex],
    bits: int,
) -> dict[str, str]:
    """Run one coherent query per digit on ``sum_b beta_b |b SEP j SEP 0>``.

    Returns the digits each branch received.
    """
    digits = {prefix: "" for prefix in amplitudes}
    for position in range(bits):
        register = SymbolState(
            {format_query(b, position): a for b, a in amplitudes.items()}
        )
        answered = bit_oracle_query_quantum(oracle, register)
        for symbols in answered.amplitudes:
            parsed = parse_query(symbols)
            if parsed is None:  # pragma: no cover
                raise RuntimeError(f"oracle returned a non-query {symbols}")
            prefix, _, answer = parsed
            digits[prefix] += str(answer)
    return digits


def _erase_digits(
    oracle: BitStringOracle,
    amplitudes: dict[str, complex],
    digits: dict[str, str],
) -> float:
    """Query again on the written digits and return the weight left nonzero.

    The oracle is a permutation of strings, so it acts on the ancilla
    register branch by branch whatever the other qubits hold; the
    branch weights ``|beta_b|^2`` are all that is needed.
    """
    residual = 0.0
    bits = len(next(iter(digits.values())))
    for position in range(bits):
        register = SymbolState(
            {
                format_query(b, position, int(digits[b][position])): a
                for b, a in amplitudes.items()
            }
        )
        erased = bit_oracle_query_quantum(oracle, register)
        for symbols, amplitude in erased.amplitudes.items():
            parsed = parse_query(symbols)
            if parsed is not None and parsed[2] != 0:
                residual += abs(amplitude) ** 2
    return residual


def prepare_via_oracle(oracle: BitStringOracle, bits: int) -> Preparation:
    """Prepare the oracle's reference state from angle and phase digits.

    Uses ``2 bits`` queries per level and ``2 bits`` for the phases,
    ``2 bits (n + 1)`` in total.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle; queries are counted on it.
    bits : int
        Digits read per angle, at most the oracle's ``p_max``.

    Returns
    -------
    Preparation
        The state, the query count and the ancilla weight left behind.

    Raises
    ------
    ValueError
        If ``bits`` exceeds the digits the oracle exposes.
    """
    bits = check_precision(bits)
    if bits > oracle.p_max:
        raise ValueError(f"oracle exposes {oracle.p_max} digits, need {bits}")
    n = oracle.n
    check_capacity(n)
    crot, cph = build_crot(bits), build_cph(bits)
    start = oracle.queries
    residual = 0.0
    branches: dict[str, complex] = {"": 1.0 + 0j}
    for _ in range(n):
        live = {b: a for b, a in branches.items() if a != 0}
        digits = _write_digits(oracle, live, bits)
        grown: dict[str, complex] = {}
        for prefix, amplitude in branches.items():
            control = digits.get(prefix, "0" * bits)
            column = controlled_action(crot, control)[:, 0]
            grown[prefix + "0"] = amplitude * column[0]
            grown[prefix + "1"] = amplitude * column[1]
        residual += _erase_digits(oracle, live, digits)
        branches = grown
    live = {b: a for b, a in branches.items() if a != 0}
    digits = _write_digits(oracle, live, bits)
    for prefix in live:
        branches[prefix] *= controlled_action(cph, digits[prefix])[0, 0]
    residual += _erase_digits(oracle, live, digits)
    amplitudes = np.array(
        [branches[format(i, f"0{n}b")] for i in range(2**n)],
        dtype=np.complex128,
    )
    queries = oracle.queries - start
    logger.debug(
        "prepared %d qubits with %d queries, residual %.3g",
        n,
        queries,
        residual,
    )
    return Preparation(
        state=PureState.from_amplitudes(amplitudes),
        bits=bits,
        queries=queries,
        ancilla_residual=residual,
    )


def _branch_one_probability(alpha: float) -> float:
    return math.sin(math.pi * min(alpha, 1.0) / 2) ** 2


def classical_z_sampler(
    oracle: BitStringOracle,
    rng: np.random.Generator,
    bits: int | None = None,
) -> str:
    """Sample a computational-basis string with classical queries only.

    At each level a uniform ``u`` is compared against
    ``sin^2(pi alpha / 2)``; digits of ``alpha`` are read one query at
    a time until the comparison is decided or ``bits`` digits are in.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle.
    rng : np.random.Generator
        The stream.
    bits : int | None, optional
        Digit cap, by default the oracle's ``p_max``.

    Returns
    -------
    str
        The sampled ``n``-bit string.
    """
    cap = oracle.p_max if bits is None else check_precision(bits)
    prefix = ""
    for _ in range(oracle.n):
        u = rng.random()
        low, choice = 0.0, None
        for position in range(cap):
            reply = bit_oracle_query(oracle, format_query(prefix, position))
            low += int(reply[-1]) / 2 ** (position + 1)
            high = low + 2.0 ** -(position + 1)
            if u < _branch_one_probability(low):
                choice = "1"
                break
            if u >= _branch_one_probability(high):
                choice = "0"
                break
        if choice is None:
            choice = "1" if u < _branch_one_probability(low) else "0"
        prefix += choice
    return prefix
