# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Random languages holding half of the strings of each length."""

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np


@dataclass(frozen=True)
class LanguageTable:
    """Membership sets ``L ∩ {0,1}^n`` for a finite list of lengths."""

    members: Mapping[int, frozenset[str]]

    def __post_init__(self) -> None:
        for n, strings in self.members.items():
            if len(strings) != 2**n // 2:
                raise ValueError(
                    f"length {n} needs {2**n // 2} strings, got {len(strings)}"
                )
            if any(len(s) != n or set(s) - {"0", "1"} for s in strings):
                raise ValueError(f"malformed member of length {n}")

    @classmethod
    def generate(
        cls, lengths: Iterable[int], rng: np.random.Generator
    ) -> "LanguageTable":
        """Choose ``floor(2^n / 2)`` strings without replacement per length.

        Parameters
        ----------
        lengths : Iterable[int]
            The string lengths.
        rng : np.random.Generator
            The random stream.

        Returns
        -------
        LanguageTable
            The table.
        """
        members = {}
        for n in sorted(set(lengths)):
            picked = rng.choice(2**n, size=2**n // 2, replace=False)
            members[n] = frozenset(format(int(x), f"0{n}b") for x in picked)
        return cls(members)

    def contains(self, bits: str) -> bool:
        """Return whether ``bits`` is in the language.

        Parameters
        ----------
        bits : str
            The string.

        Returns
        -------
        bool
            Membership.

        Raises
        ------
        ValueError
            If the table has no entry for the string's length.
        """
        if len(bits) not in self.members:
            raise ValueError(f"no membership data for length {len(bits)}")
        return bits in self.members[len(bits)]

    def indicator(self, n: int) -> np.ndarray:
        """Return a boolean vector over ``{0,1}^n`` in index order.

        Parameters
        ----------
        n : int
            The length.

        Returns
        -------
        np.ndarray
            ``mask[x]`` is True when ``format(x, "0nb")`` is a member.
        """
        mask = np.zeros(2**n, dtype=bool)
        for s in self.members[n]:
            mask[int(s, 2)] = True
        return mask
