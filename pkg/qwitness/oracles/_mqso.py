# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Marked-state oracle whose sign depends on language membership."""

import numpy as np

from qwitness.sim import PureState

from ._base import BaseOracle
from ._language import LanguageTable


class MqsoOracle(BaseOracle):
    """``U_n`` on ``2n`` qubits: ``|psi>|x> -> (-1)^{L(x)} |psi>|x>``.

    Components orthogonal to ``psi`` on the first factor are left
    alone.

    Parameters
    ----------
    marked : PureState
        The marked state ``psi_n``.
    language : LanguageTable
        Membership data including length ``n``.
    """

    kind = "mqso"

    def __init__(self, marked: PureState, language: LanguageTable) -> None:
        super().__init__()
        self.marked = marked
        self.language = language
        self.member_mask = language.indicator(marked.n_qubits)

    @property
    def n(self) -> int:
        """Return the marked width."""
        return self.marked.n_qubits


def apply_mqso(oracle: MqsoOracle, state: PureState) -> PureState:
    """Query the language-conditioned marked oracle once.

    Parameters
    ----------
    oracle : MqsoOracle
        The oracle.
    state : PureState
        A ``2n``-qubit register; the marked factor is the first half.

    Returns
    -------
    PureState
        The output.

    Raises
    ------
    ValueError
        If the width is not ``2n``.
    """
    n = oracle.n
    if state.n_qubits != 2 * n:
        raise ValueError(f"MQSO acts on {2 * n} qubits, got {state.n_qubits}")
    rows = state.amplitudes.reshape(2**n, 2**n)
    psi = oracle.marked.amplitudes
    # <psi| on the first factor, kept only for members x of L
    overlap = (psi.conj() @ rows) * oracle.member_mask
    oracle.record_query()
    return PureState((rows - 2.0 * np.outer(psi, overlap)).reshape(-1))
