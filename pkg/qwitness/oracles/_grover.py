# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Standard oracle hiding a secret string behind a language."""

import numpy as np

from qwitness.sim import PureState, hadamard_all

from ._base import BaseOracle
from ._language import LanguageTable


class GroverStandardOracle(BaseOracle):
    """``O_n`` on ``2n+1`` qubits, or its Hadamard conjugate ``U_n``.

    ``O_n`` flips the last qubit on basis strings ``|x_n>|y>|b>`` with
    ``y`` in ``L``. ``U_n`` applies ``H`` to the first ``n`` qubits
    before and after.

    Parameters
    ----------
    secret : str
        The hidden string ``x_n``.
    language : LanguageTable
        Membership data including length ``n``.
    conjugated : bool, optional
        Whether to conjugate by Hadamards, by default False.
    """

    kind = "grover"

    def __init__(
        self, secret: str, language: LanguageTable, conjugated: bool = False
    ) -> None:
        super().__init__()
        if not secret or set(secret) - {"0", "1"}:
            raise ValueError(f"secret must be a bitstring, got {secret!r}")
        self.secret = secret
        self.language = language
        self.conjugated = conjugated
        self.member_mask = language.indicator(len(secret))

    @property
    def n(self) -> int:
        """Return the secret length."""
        return len(self.secret)

    def evaluate(self, x: str, y: str) -> bool:
        """Return the classical predicate ``x == x_n and y in L``.

        Parameters
        ----------
        x : str
            First-register string.
        y : str
            Second-register string.

        Returns
        -------
        bool
            Whether the target bit would flip.
        """
        self.record_query()
        return x == self.secret and self.language.contains(y)


def _flip_target(oracle: GroverStandardOracle, state: PureState) -> PureState:
    n = oracle.n
    tensor = state.amplitudes.reshape(2**n, 2**n, 2).copy()
    row = int(oracle.secret, 2)
    members = oracle.member_mask
    tensor[row, members] = tensor[row, members][:, ::-1]
    return PureState(tensor.reshape(-1))


def apply_grover(oracle: GroverStandardOracle, state: PureState) -> PureState:
    """Query the standard oracle once.

    Parameters
    ----------
    oracle : GroverStandardOracle
        The oracle.
    state : PureState
        A ``2n+1``-qubit register.

    Returns
    -------
    PureState
        The output.

    Raises
    ------
    ValueError
        If the width is not ``2n+1``.
    """
    n = oracle.n
    if state.n_qubits != 2 * n + 1:
        raise ValueError(
            f"standard oracle acts on {2 * n + 1} qubits, got {state.n_qubits}"
        )
    first = range(n)
    if oracle.conjugated:
        state = hadamard_all(state, first)
    state = _flip_target(oracle, state)
    if oracle.conjugated:
        state = hadamard_all(state, first)
    oracle.record_query()
    return state


def apply_grover_phase(
    oracle: GroverStandardOracle, state: PureState, y: str
) -> PureState:
    """Query with the middle register fixed to ``|y>`` and target ``|->``.

    Phase kickback turns the bit flip into a sign on the first
    register, so only the ``n`` searched qubits are simulated.

    Parameters
    ----------
    oracle : GroverStandardOracle
        The oracle.
    state : PureState
        The ``n``-qubit search register.
    y : str
        The fixed middle string.

    Returns
    -------
    PureState
        The output.

    Raises
    ------
    ValueError
        If the width is not ``n``.
    """
    n = oracle.n
    if state.n_qubits != n or len(y) != n:
        raise ValueError(f"phase query needs n = {n} qubits and |y| = {n}")
    oracle.record_query()
    if not oracle.language.contains(y):
        return state
    marked = np.zeros(2**n, dtype=np.complex128)
    marked[int(oracle.secret, 2)] = 1.0
    if oracle.conjugated:
        marked = hadamard_all(PureState(marked)).amplitudes
    psi = state.amplitudes
    return PureState(psi - 2.0 * np.vdot(marked, psi) * marked)
