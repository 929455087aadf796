# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Query strategies against a phase-flip oracle and their two branches."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from qwitness.oracles import MarkedStateOracle, apply_marked, orthogonal_partner
from qwitness.sim import (
    Circuit,
    PureState,
    Unitary,
    apply_circuit,
    fidelity,
    random_circuit,
    trace_distance,
    trace_distance_pure,
)

from ._bounds import hybrid_bound, indist_bound
from ._overlap import marginal

logger = logging.getLogger(__name__)

Step = Circuit | Unitary
"""One strategy step: a gate circuit or a dense unitary."""


@dataclass(frozen=True)
class DistinguishRun:
    """Outcome of running a strategy with and without the phase flips.

    ``epsilon`` is the largest measured marked fidelity of the
    identity-branch prefix states, the quantity the bound is stated in.
    ``epsilon_flipped`` is the same over the flipped branch.
    """

    name: str
    k: int
    epsilon: float
    epsilon_flipped: float
    measured_distance: float
    bound: float
    clamped_bound: float
    hybrid: float
    violated: bool
    final_identity: PureState = field(repr=False)
    final_flipped: PureState = field(repr=False)

    def row(self) -> dict[str, float | int | str | bool]:
        """Return the CSV record of this run.

        Returns
        -------
        dict[str, float | int | str | bool]
            ``k, epsilon, distance, bound, violated`` and extras.
        """
        return {
            "strategy": self.name,
            "k": self.k,
            "epsilon": self.epsilon,
            "epsilon_flipped": self.epsilon_flipped,
            "distance": self.measured_distance,
            "bound": self.bound,
            "clamped_bound": self.clamped_bound,
            "hybrid_bound": self.hybrid,
            "violated": self.violated,
        }

    def traced_distance(self, keep: Iterable[int]) -> float:
        """Return the branch distance after tracing out all but ``keep``.

        Parameters
        ----------
        keep : Iterable[int]
            Qubits kept.

        Returns
        -------
        float
            The trace distance of the marginals.
        """
        keep = list(keep)
        return trace_distance(
            marginal(self.final_identity, keep),
            marginal(self.final_flipped, keep),
        )


def apply_step(state: PureState, step: Step) -> PureState:
    """Apply a strategy step.

    Parameters
    ----------
    state : PureState
        The register.
    step : Circuit | Unitary
        The step.

    Returns
    -------
    PureState
        The image.
    """
    if isinstance(step, Unitary):
        return step.apply(state)
    return apply_circuit(state, step)


def _width(step: Step) -> int:
    return step.n_qubits if isinstance(step, Unitary) else step.width


def run_mqst_distinguish(
    strategy: Sequence[Step],
    oracle: MarkedStateOracle,
    targets: Sequence[int] | None = None,
    name: str = "custom",
) -> DistinguishRun:
    """Run ``T_{k+1} U T_k ... U T_1 |0>`` with ``U = 1`` and ``U = V``.

    The identity branch never queries; the flipped branch queries the
    oracle ``k`` times, so an inactive oracle gives identical branches.

    Parameters
    ----------
    strategy : Sequence[Circuit | Unitary]
        The ``k + 1`` steps on a common register.
    oracle : MarkedStateOracle
        The oracle used in the flipped branch.
    targets : Sequence[int] | None, optional
        Where the marked subsystem sits, by default the first qubits.
    name : str, optional
        Label for reports, by default "custom".

    Returns
    -------
    DistinguishRun
        Measured epsilon, distance and bounds.

    Raises
    ------
    ValueError
        If the strategy is empty or the steps have different widths.
    """
    if not strategy:
        raise ValueError("a strategy needs at least one step")
    widths = {_width(step) for step in strategy}
    if len(widths) != 1:
        raise ValueError(f"strategy steps have mixed widths {sorted(widths)}")
    width = widths.pop()
    span = list(range(oracle.n) if targets is None else targets)
    k = len(strategy) - 1
    identity = PureState.zero(width)
    flipped = identity
    epsilon = 0.0
    epsilon_flipped = 0.0
    for step in strategy[:k]:
        identity = apply_step(identity, step)
        flipped = apply_step(flipped, step)
        epsilon = max(
            epsilon, fidelity(marginal(identity, span), oracle.marked)
        )
        epsilon_flipped = max(
            epsilon_flipped, fidelity(marginal(flipped, span), oracle.marked)
        )
        flipped = apply_marked(oracle, flipped, span)
    identity = apply_step(identity, strategy[k])
    flipped = apply_step(flipped, strategy[k])
    distance = trace_distance_pure(identity, flipped)
    bound = indist_bound(k, epsilon)
    violated = distance > bound.clamped + 1e-8
    if violated:
        logger.warning(
            "strategy %s: distance %.6f exceeds bound %.6f (k=%d, eps=%.3g)",
            name,
            distance,
            bound.clamped,
            k,
            epsilon,
        )
    return DistinguishRun(
        name=name,
        k=k,
        epsilon=epsilon,
        epsilon_flipped=epsilon_flipped,
        measured_distance=distance,
        bound=bound.raw,
        clamped_bound=bound.clamped,
        hybrid=hybrid_bound(k, epsilon),
        violated=violated,
        final_identity=identity,
        final_flipped=flipped,
    )


def random_strategy(
    width: int,
    k: int,
    depth: int,
    rng: np.random.Generator,
    gate_set: Iterable[str] = ("H", "T", "CNOT"),
) -> list[Circuit]:
    """Draw ``k + 1`` random circuits of ``depth`` gates.

    Parameters
    ----------
    width : int
        Register width.
    k : int
        Number of queries.
    depth : int
        Gates per step.
    rng : np.random.Generator
        The random stream.
    gate_set : Iterable[str], optional
        Allowed kinds, by default ``H, T, CNOT``.

    Returns
    -------
    list[Circuit]
        The steps.
    """
    kinds = tuple(gate_set)
    return [random_circuit(width, depth, rng, kinds) for _ in range(k + 1)]


def state_preparation_unitary(target: PureState) -> Unitary:
    """Return a unitary whose first column is ``target``.

    A Householder reflection sends ``|0>`` to ``target`` up to its
    leading phase, which is then restored.

    Parameters
    ----------
    target : PureState
        The state to prepare from ``|0...0>``.

    Returns
    -------
    Unitary
        The unitary.
    """
    v = target.amplitudes
    lead = v[0]
    phase = lead / abs(lead) if abs(lead) > 0 else 1.0 + 0j
    a = v / phase
    e0 = np.zeros_like(v)
    e0[0] = 1.0
    u = e0 - a
    norm = np.linalg.norm(u)
    reflection = np.eye(v.size, dtype=np.complex128)
    if norm > 1e-14:
        u = u / norm
        reflection -= 2.0 * np.outer(u, u.conj())
    return Unitary(phase * reflection)


def _identity_step(width: int) -> Circuit:
    return Circuit(width=width)


def superposition_probe(marked: PureState) -> list[Step]:
    """Prepare ``(|psi> + |g>)/sqrt(2)`` and query once.

    Parameters
    ----------
    marked : PureState
        The marked state.

    Returns
    -------
    list[Circuit | Unitary]
        Two steps, ``k = 1``.
    """
    gamma = orthogonal_partner(marked)
    probe = PureState.from_amplitudes(marked.amplitudes + gamma.amplitudes)
    return [state_preparation_unitary(probe), _identity_step(marked.n_qubits)]


def near_marked_probe(
    marked: PureState, overlap_squared: float, k: int
) -> list[Step]:
    """Prepare a state of fidelity ``overlap_squared`` and query ``k`` times.

    Parameters
    ----------
    marked : PureState
        The marked state.
    overlap_squared : float
        ``|<psi|phi>|^2`` of the probe.
    k : int
        Number of queries.

    Returns
    -------
    list[Circuit | Unitary]
        ``k + 1`` steps.
    """
    gamma = orthogonal_partner(marked)
    probe = PureState.from_amplitudes(
        np.sqrt(overlap_squared) * marked.amplitudes
        + np.sqrt(1.0 - overlap_squared) * gamma.amplitudes
    )
    width = marked.n_qubits
    return [state_preparation_unitary(probe)] + [
        _identity_step(width) for _ in range(k)
    ]


def amplitude_amplification(
    marked: PureState, theta: float, k: int
) -> list[Step]:
    """Grover iterations from a start state at angle ``theta`` to ``psi``.

    The steps between queries reflect about the start state, which the
    identity branch never leaves, so that branch keeps fidelity
    ``sin^2(theta)`` while the flipped branch rotates by ``2 theta``
    per query.

    Parameters
    ----------
    marked : PureState
        The marked state.
    theta : float
        Start angle.
    k : int
        Number of queries.

    Returns
    -------
    list[Circuit | Unitary]
        ``k + 1`` steps.

    Raises
    ------
    ValueError
        If ``k < 1``.
    """
    if k < 1:
        raise ValueError(f"amplitude amplification needs k >= 1, got {k}")
    gamma = orthogonal_partner(marked)
    start = PureState.from_amplitudes(
        np.sin(theta) * marked.amplitudes + np.cos(theta) * gamma.amplitudes
    )
    phi = start.amplitudes
    diffusion = Unitary(2.0 * np.outer(phi, phi.conj()) - np.eye(phi.size))
    width = marked.n_qubits
    return (
        [state_preparation_unitary(start)]
        + [diffusion] * (k - 1)
        + [_identity_step(width)]
    )


NAMED_STRATEGIES: dict[str, Callable[..., list[Step]]] = {
    "superposition-probe": superposition_probe,
    "near-marked-probe": near_marked_probe,
    "amplitude-amplification": amplitude_amplification,
}
"""Hand-built adversarial strategies by name."""
