# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Classical oracle exposing the binary expansions of a state's angles.

Queries act on strings over ``{0, 1, SEP}`` of the form
``b_1..b_k SEP p SEP a``: for ``k < n`` the answer bit ``a`` is XORed
with bit ``p`` of the conditional branch angle ``alpha_{b_1..b_k}``, and
for ``k = n`` with bit ``p`` of the phase fraction ``phi_b``. Every
other string is returned unchanged.
"""

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np
import numpy.typing as npt

from qwitness.config import settings
from qwitness.sim import PureState

from ._base import BaseOracle

SEP = "□"
"""Separator symbol of the query alphabet."""

_QUERY = re.compile(rf"^([01]*){SEP}([01]+){SEP}([01])$")


def binary_digit(value: float, position: int, p_max: int = 64) -> int:
    """Return digit ``position`` (0-based) of ``value`` in ``[0, 1]``.

    ``1`` is read as ``0.111...``; digits at or past ``p_max`` are 0.

    Parameters
    ----------
    value : float
        The fraction.
    position : int
        The digit index, 0 for the ``1/2`` place.
    p_max : int, optional
        Number of digits kept, by default 64.

    Returns
    -------
    int
        The digit.
    """
    if position >= p_max or value <= 0.0:
        return 0
    if value >= 1.0:
        return 1
    return math.floor(value * 2 ** (position + 1)) & 1


def truncate_fraction(value: float, bits: int) -> float:
    """Return ``value`` cut to ``bits`` binary digits.

    Parameters
    ----------
    value : float
        A fraction in ``[0, 1]``.
    bits : int
        Digits kept.

    Returns
    -------
    float
        The truncated fraction, read digit by digit.
    """
    return sum(
        binary_digit(value, j) / 2 ** (j + 1) for j in range(bits)
    )


def parse_query(symbols: str) -> tuple[str, int, int] | None:
    """Split a query string into ``(prefix, position, answer bit)``.

    Parameters
    ----------
    symbols : str
        The string.

    Returns
    -------
    tuple[str, int, int] | None
        The parts, or None if the string is not a query.
    """
    match = _QUERY.match(symbols)
    if match is None:
        return None
    prefix, position, answer = match.groups()
    return prefix, int(position, 2), int(answer)


def format_query(prefix: str, position: int, answer: int = 0) -> str:
    """Build the query string for ``prefix`` and digit ``position``.

    Parameters
    ----------
    prefix : str
        The bits ``b_1..b_k``.
    position : int
        The digit index.
    answer : int, optional
        The answer bit, by default 0.

    Returns
    -------
    str
        ``prefix SEP bin(position) SEP answer``.
    """
    return f"{prefix}{SEP}{position:b}{SEP}{answer}"


class BitStringOracle(BaseOracle):
    """The classical description oracle of a reference state.

    Parameters
    ----------
    reference : PureState
        The state whose angles are exposed.
    p_max : int | None, optional
        Digits available per angle, by default ``settings.p_max``.
    """

    kind = "bitstring"

    def __init__(self, reference: PureState, p_max: int | None = None) -> None:
        super().__init__()
        self.reference = reference
        self.p_max = settings.p_max if p_max is None else p_max
        if not 1 <= self.p_max <= 64:
            raise ValueError(f"p_max must be in [1, 64], got {self.p_max}")
        self._alpha: dict[str, float] = {}

    @property
    def n(self) -> int:
        """Return the reference width."""
        return self.reference.n_qubits

    @cached_property
    def _marginals(self) -> list[npt.NDArray[np.float64]]:
        # _marginals[k][int(prefix, 2)] = P(prefix) for |prefix| = k
        probabilities = self.reference.probabilities()
        return [
            probabilities.reshape(2**k, -1).sum(axis=1)
            for k in range(self.n + 1)
        ]

    @cached_property
    def phases(self) -> npt.NDArray[np.float64]:
        """Return ``arg(<b|psi>) / 2pi mod 1`` for every ``b``."""
        angles = np.angle(self.reference.amplitudes) / (2 * np.pi)
        fractions = np.mod(angles, 1.0)
        # values that round up to 1.0 wrap to 0
        fractions[fractions >= 1.0] = 0.0
        return fractions

    def prefix_probability(self, prefix: str) -> float:
        """Return the Born probability that the first bits read ``prefix``.

        Parameters
        ----------
        prefix : str
            The bits ``b_1..b_k``.

        Returns
        -------
        float
            ``P(prefix)``.
        """
        index = int(prefix, 2) if prefix else 0
        return float(self._marginals[len(prefix)][index])

    def alpha(self, prefix: str) -> float:
        """Return the conditional branch angle of ``prefix`` in ``[0, 1]``.

        ``alpha = 2 arcsin(sqrt(P(prefix + "1") / P(prefix))) / pi``,
        and 0 when ``P(prefix) = 0``.

        Parameters
        ----------
        prefix : str
            The bits ``b_1..b_k`` with ``k < n``.

        Returns
        -------
        float
            The angle as a fraction.
        """
        cached = self._alpha.get(prefix)
        if cached is not None:
            return cached
        total = self.prefix_probability(prefix)
        if total <= 0.0:
            value = 0.0
        else:
            ratio = self.prefix_probability(prefix + "1") / total
            ratio = min(1.0, max(0.0, ratio))
            value = 2.0 * math.asin(math.sqrt(ratio)) / math.pi
        self._alpha[prefix] = value
        return value

    def phase(self, bits: str) -> float:
        """Return the phase fraction of basis string ``bits``.

        Parameters
        ----------
        bits : str
            A full ``n``-bit string.

        Returns
        -------
        float
            ``phi_b`` in ``[0, 1)``.
        """
        return float(self.phases[int(bits, 2)])

    def answer_bit(self, prefix: str, position: int) -> int:
        """Return the digit a query on ``prefix`` would XOR in.

        Parameters
        ----------
        prefix : str
            The bits ``b_1..b_k`` with ``k <= n``.
        position : int
            The digit index.

        Returns
        -------
        int
            The digit, or 0 if ``prefix`` is longer than ``n``.
        """
        if len(prefix) < self.n:
            return binary_digit(self.alpha(prefix), position, self.p_max)
        if len(prefix) == self.n:
            return binary_digit(self.phase(prefix), position, self.p_max)
        return 0

    def evaluate(self, symbols: str) -> str:
        """Apply the oracle function without counting a query.

        Parameters
        ----------
        symbols : str
            The input string.

        Returns
        -------
        str
            The output string.
        """
        parsed = parse_query(symbols)
        if parsed is None:
            return symbols
        prefix, position, answer = parsed
        if len(prefix) > self.n:
            return symbols
        flipped = answer ^ self.answer_bit(prefix, position)
        return symbols[:-1] + str(flipped)


def bit_oracle_query(oracle: BitStringOracle, symbols: str) -> str:
    """Query the bit-string oracle on one classical string.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle.
    symbols : str
        The input string.

    Returns
    -------
    str
        The output string.
    """
    oracle.record_query()
    return oracle.evaluate(symbols)


@dataclass(frozen=True)
class SymbolState:
    """A superposition of strings over ``{0, 1, SEP}``.

    All strings share one length and one set of separator positions.
    """

    amplitudes: Mapping[str, complex]

    def __post_init__(self) -> None:
        amplitudes = {s: complex(a) for s, a in self.amplitudes.items() if a}
        if not amplitudes:
            raise ValueError("symbol state has no support")
        layouts = {
            tuple(i for i, c in enumerate(s) if c == SEP) + (len(s),)
            for s in amplitudes
        }
        if len(layouts) != 1:
            raise ValueError("separator positions must be classical")
        if any(set(s) - {"0", "1", SEP} for s in amplitudes):
            raise ValueError("symbols must be 0, 1 or the separator")
        norm_sq = sum(abs(a) ** 2 for a in amplitudes.values())
        if abs(norm_sq - 1.0) > settings.tolerance:
            raise ValueError(f"symbol state is not normalized: {norm_sq}")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(cls, symbols: str) -> "SymbolState":
        """Return the basis state of one string.

        Parameters
        ----------
        symbols : str
            The string.

        Returns
        -------
        SymbolState
            The state.
        """
        return cls({symbols: 1.0})

    def overlap(self, other: "SymbolState") -> complex:
        """Return ``<self|other>``.

        Parameters
        ----------
        other : SymbolState
            The ket.

        Returns
        -------
        complex
            The inner product.
        """
        return sum(
            (a.conjugate() * other.amplitudes.get(s, 0.0))
            for s, a in self.amplitudes.items()
        ) + 0j


def bit_oracle_query_quantum(
    oracle: BitStringOracle, register: SymbolState
) -> SymbolState:
    """Apply the oracle coherently to every string in the superposition.

    The oracle permutes strings, so amplitudes are moved, never merged.

    Parameters
    ----------
    oracle : BitStringOracle
        The oracle.
    register : SymbolState
        The input superposition.

    Returns
    -------
    SymbolState
        The output superposition.
    """
    oracle.record_query()
    return SymbolState(
        {oracle.evaluate(s): a for s, a in register.amplitudes.items()}
    )
