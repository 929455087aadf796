# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Single-use swap-test channel and its emulation from a marked oracle."""

import math
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qwitness.errors import OracleConsumedError
from qwitness.sim import (
    DensityOperator,
    GateKind,
    GateOp,
    ProductState,
    PureState,
    apply_ops,
    fidelity,
    measure_qubits,
    partial_trace,
    swap_test,
)

from ._base import BaseOracle
from ._marked import MarkedStateOracle, apply_marked


@dataclass(frozen=True)
class ChannelReply:
    """What the channel hands back.

    ``bit`` is set in the classical-reply mode, ``qubit`` otherwise.
    """

    passes: int
    threshold: int
    flipped: bool
    bit: int | None = None
    qubit: DensityOperator | None = None


def pass_count_tail(
    pass_probabilities: Sequence[float], threshold: int
) -> float:
    """Return ``P(at least threshold successes)`` for independent trials.

    Parameters
    ----------
    pass_probabilities : Sequence[float]
        Success probability of each trial.
    threshold : int
        Minimum number of successes.

    Returns
    -------
    float
        The Poisson-binomial tail.
    """
    distribution = np.zeros(len(pass_probabilities) + 1)
    distribution[0] = 1.0
    for q in pass_probabilities:
        distribution[1:] = distribution[1:] * (1 - q) + distribution[:-1] * q
        distribution[0] *= 1 - q
    return float(distribution[threshold:].sum())


class ChannelOracle(BaseOracle):
    """Swap tests against ``n`` held marked states, usable once.

    Parameters
    ----------
    marked : Sequence[PureState]
        ``n`` states of ``n`` qubits each.
    kappa : float
        Fraction of tests that must pass, in ``(0, 1]``.
    language_bit : bool
        Whether ``n`` is in the language.
    rng : np.random.Generator
        The stream driving swap-test outcomes.
    classical_reply : bool, optional
        Measure and return a bit instead of the final qubit,
        by default True.
    """

    kind = "channel"

    def __init__(
        self,
        marked: Sequence[PureState],
        kappa: float,
        language_bit: bool,
        rng: np.random.Generator,
        classical_reply: bool = True,
    ) -> None:
        super().__init__()
        marked = tuple(marked)
        n = len(marked)
        if n < 1 or any(state.n_qubits != n for state in marked):
            raise ValueError("channel needs n marked states of n qubits each")
        if not 0.0 < kappa <= 1.0:
            raise ValueError(f"kappa must be in (0, 1], got {kappa}")
        self.marked = marked
        self.kappa = kappa
        self.language_bit = language_bit
        self.classical_reply = classical_reply
        self._rng = rng
        self._consumed = False
        self._consume_lock = threading.Lock()

    @property
    def n(self) -> int:
        """Return the number of marked blocks."""
        return len(self.marked)

    @property
    def threshold(self) -> int:
        """Return ``ceil(kappa * n)``."""
        return max(1, min(self.n, math.ceil(self.kappa * self.n - 1e-12)))

    @property
    def consumed(self) -> bool:
        """Return whether the oracle has been used."""
        return self._consumed

    def consume(self) -> np.random.Generator:
        """Mark the oracle as used and hand out its stream.

        Returns
        -------
        np.random.Generator
            The swap-test stream.

        Raises
        ------
        OracleConsumedError
            If the oracle was already used.
        """
        with self._consume_lock:
            if self._consumed:
                raise OracleConsumedError("channel oracle was already used")
            self._consumed = True
        self.record_query()
        return self._rng

    def flip_probability(self, blocks: Sequence[PureState]) -> float:
        """Return the exact flip probability for product-state inputs.

        Does not consume the oracle.

        Parameters
        ----------
        blocks : Sequence[PureState]
            The ``n`` input blocks, answer qubit excluded.

        Returns
        -------
        float
            ``P(flip)``; zero when ``n`` is outside the language.
        """
        if not self.language_bit:
            return 0.0
        probabilities = [
            0.5 * (1.0 + fidelity(block, ref))
            for block, ref in zip(blocks, self.marked, strict=True)
        ]
        return pass_count_tail(probabilities, self.threshold)


def _drop_trailing(
    amplitudes: np.ndarray, keep: int, bits: str
) -> np.ndarray:
    # the trailing qubits were just measured, so the register factorizes
    return amplitudes.reshape(2**keep, -1)[:, int(bits, 2)]


def _swap_test_joint(
    amplitudes: np.ndarray,
    block: Sequence[int],
    reference: PureState,
    rng: np.random.Generator,
) -> tuple[int, np.ndarray]:
    width = amplitudes.size.bit_length() - 1
    n = reference.n_qubits
    joint = PureState(amplitudes).tensor(reference, PureState.zero(1))
    ancilla = width + n
    hadamard = GateOp(kind=GateKind.H, targets=(ancilla,))
    cswap = GateOp(
        kind=GateKind.CSWAP,
        targets=(ancilla, *block, *range(width, width + n)),
    )
    joint = apply_ops(joint, (hadamard, cswap, hadamard))
    outcome, joint = measure_qubits(joint, [ancilla], rng)
    # the used reference is never touched again; measuring it leaves
    # the statistics of later tests unchanged and keeps the width fixed
    ref_bits, joint = measure_qubits(
        joint, list(range(width, width + n)), rng
    )
    rest = _drop_trailing(joint.amplitudes, width, ref_bits + outcome)
    return (1 if outcome == "0" else 0), rest / np.linalg.norm(rest)


def apply_channel(
    oracle: ChannelOracle, register: PureState | ProductState
) -> ChannelReply:
    """Run the channel once on an ``n^2 + 1``-qubit register.

    Block ``j`` occupies qubits ``j*n .. j*n + n - 1`` and the answer
    qubit is the last one. Registers given as ``n`` blocks of ``n``
    qubits plus a one-qubit answer block are processed block-wise;
    anything else is contracted into one dense state first.

    Parameters
    ----------
    oracle : ChannelOracle
        The oracle.
    register : PureState | ProductState
        The input.

    Returns
    -------
    ChannelReply
        The pass count, whether the answer was flipped, and the bit
        or qubit handed back.

    Raises
    ------
    ValueError
        If the register width is not ``n^2 + 1``.
    """
    n = oracle.n
    if register.n_qubits != n * n + 1:
        raise ValueError(
            f"channel input needs {n * n + 1} qubits, got {register.n_qubits}"
        )
    rng = oracle.consume()
    blockwise = isinstance(register, ProductState) and (
        register.widths == (n,) * n + (1,)
    )
    if isinstance(register, ProductState) and blockwise:
        results = [
            swap_test(block, ref, rng)
            for block, ref in zip(register.blocks, oracle.marked)
        ]
        remainder = register.blocks[-1]
    else:
        if isinstance(register, ProductState):
            register = register.to_pure()
        amplitudes = register.amplitudes
        results = []
        for j, ref in enumerate(oracle.marked):
            passed, amplitudes = _swap_test_joint(
                amplitudes, range(j * n, j * n + n), ref, rng
            )
            results.append(passed)
        remainder = PureState(amplitudes)
    passes = sum(results)
    flipped = oracle.language_bit and passes >= oracle.threshold
    oracle.logger.debug(
        "channel passes=%d threshold=%d flipped=%s",
        passes,
        oracle.threshold,
        flipped,
    )
    if oracle.classical_reply:
        # the answer qubit is replaced by |0> before the conditional X
        return ChannelReply(
            passes=passes,
            threshold=oracle.threshold,
            flipped=flipped,
            bit=int(flipped),
        )
    answer = remainder.n_qubits - 1
    if flipped:
        remainder = apply_ops(
            remainder, [GateOp(kind=GateKind.X, targets=(answer,))]
        )
    qubit = partial_trace(remainder, [answer])
    return ChannelReply(
        passes=passes, threshold=oracle.threshold, flipped=flipped, qubit=qubit
    )


def emulate_channel_with_marked_oracle(
    oracle: MarkedStateOracle,
    sigma: PureState,
    rng: np.random.Generator,
) -> ChannelReply:
    """Emulate the channel with one query to a marked-state oracle.

    The register is ``sigma`` (marked part ``A`` then answer qubit
    ``a``), an ancilla block ``Z`` in ``|0..0>`` and a flag ``f`` in
    ``|+>``. The steps are: swap ``A`` and ``Z`` when ``f = 1``, query
    the oracle on ``A``, swap back, apply ``H`` to ``f``, copy ``f``
    onto ``a`` with a CNOT, and return ``a``.

    ``Z`` only ever holds ``|0..0>`` or ``V|0..0>``, so the state is
    kept as two branch vectors over ``(A, a, f)`` tagged by those two
    ``Z`` states and contracted with their Gram matrix at the end.

    Parameters
    ----------
    oracle : MarkedStateOracle
        The oracle over ``m`` qubits.
    sigma : PureState
        The ``m + 1``-qubit input.
    rng : np.random.Generator
        Stream for the returned bit.

    Returns
    -------
    ChannelReply
        The answer qubit, and a bit sampled from it. ``passes`` and
        ``threshold`` are 0.

    Raises
    ------
    ValueError
        If ``sigma`` is not ``m + 1`` qubits wide.
    """
    m = oracle.n
    if sigma.n_qubits != m + 1:
        raise ValueError(
            f"emulation needs {m + 1} input qubits, got {sigma.n_qubits}"
        )
    zero = PureState.zero(m)
    # steps 1-4: branch f=0 saw V on A, branch f=1 had A parked in Z
    branch_v = apply_marked(oracle, sigma, range(m))
    parked = PureState(oracle.reflect(zero.amplitudes, range(m)))
    gram = zero.inner(parked)
    flag_zero, flag_one = PureState.zero(1), PureState.basis(1, 1)
    vectors = [
        branch_v.tensor(flag_zero).amplitudes / np.sqrt(2),
        sigma.tensor(flag_one).amplitudes / np.sqrt(2),
    ]
    # steps 5-6 act on (A, a, f) only
    steps = (
        GateOp(kind=GateKind.H, targets=(m + 1,)),
        GateOp(kind=GateKind.CNOT, targets=(m + 1, m)),
    )
    evolved = []
    for vector in vectors:
        norm = np.linalg.norm(vector)
        image = apply_ops(PureState(vector / norm), steps).amplitudes * norm
        rows = np.moveaxis(image.reshape((2,) * (m + 2)), m, 0)
        evolved.append(rows.reshape(2, -1))
    overlaps = np.array([[1.0, gram], [np.conj(gram), 1.0]])
    rho = np.zeros((2, 2), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            # coefficient of |v_i><v_j| after tracing Z is <z_j|z_i>
            rho += overlaps[j, i] * evolved[i] @ evolved[j].conj().T
    rho = (rho + rho.conj().T) / 2
    rho /= np.trace(rho).real
    qubit = DensityOperator(rho)
    probability_one = float(min(1.0, max(0.0, rho[1, 1].real)))
    bit = int(rng.random() < probability_one)
    return ChannelReply(
        passes=0,
        threshold=0,
        flipped=bool(bit),
        bit=bit,
        qubit=qubit,
    )
