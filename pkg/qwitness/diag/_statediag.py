# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Deterministic search for states far from every short-circuit marginal."""

# pylint: disable=too-few-public-methods
import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from qwitness.config import settings
from qwitness.sim import (
    Circuit,
    DensityOperator,
    PureState,
    apply_circuit,
    arity,
    fidelity,
    parse_gate_set,
    partial_trace,
)

from ._enumerate import enumerate_circuits

logger = logging.getLogger(__name__)


class EnumerationConfig(BaseModel):
    """Inputs of one hard-state search."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., description="Target qubit count", ge=1)
    f: int = Field(..., description="Preparable gate budget", ge=0)
    epsilon: float = Field(
        ..., description="Fidelity threshold", gt=0.0, le=1.0
    )
    gate_set: tuple[str, ...] = Field(
        default_factory=lambda: tuple(settings.default_gate_set),
        description="Gate kinds",
    )
    index: int = Field(0, description="Which hard state to return", ge=0)
    budget: int = Field(
        10_000, description="Long circuits examined at most", ge=1
    )

    @field_validator("gate_set", mode="before")
    @classmethod
    def _normalize_gate_set(cls, value: Any) -> tuple[str, ...]:
        if isinstance(value, str):
            value = value.split(",")
        return tuple(str(kind) for kind in parse_gate_set(value))

    @property
    def avoided_width(self) -> int:
        """Return the register width of the avoided-set circuits.

        ``c * f`` with ``c`` the largest gate arity, capped at ``3n``
        and never below ``n``.
        """
        c = max(arity(kind) for kind in parse_gate_set(self.gate_set))
        return max(self.n, min(c * self.f, 3 * self.n))


@dataclass(frozen=True)
class HardStateRecord:
    """A returned hard state with its witness circuit and certificate."""

    index: int
    witness_circuit: Circuit
    state: PureState
    certificate: float
    avoided_count: int
    avoided_width: int
    examined: int
    config: EnumerationConfig

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-ready dict.

        Returns
        -------
        dict[str, Any]
            Index, circuit ops, interleaved amplitudes, certificate and
            the config echo.
        """
        return {
            "index": self.index,
            "circuit": self.witness_circuit.op_dicts(),
            "amplitudes": self.state.to_payload(),
            "certificate": self.certificate,
            "avoided_count": self.avoided_count,
            "avoided_width": self.avoided_width,
            "examined": self.examined,
            "config": self.config.model_dump(mode="json"),
        }


@dataclass(frozen=True)
class BudgetExhausted:
    """The search stopped before finding the requested index."""

    index: int
    found: int
    examined: int


def _marginal_key(rho: DensityOperator) -> bytes:
    return (np.round(rho.matrix, 9) + 0.0).tobytes()


def avoided_marginals(cfg: EnumerationConfig) -> list[DensityOperator]:
    """Return the distinct first-``n``-qubit marginals of short circuits.

    Every circuit of at most ``f`` gates on ``avoided_width`` qubits is
    run on ``|0...0>``.

    Parameters
    ----------
    cfg : EnumerationConfig
        The search inputs.

    Returns
    -------
    list[DensityOperator]
        Marginals in first-seen order, duplicates removed.
    """
    width = cfg.avoided_width
    zero = PureState.zero(width)
    keep = range(cfg.n)
    seen: dict[bytes, DensityOperator] = {}
    for circuit in enumerate_circuits(cfg.gate_set, width, cfg.f):
        rho = partial_trace(apply_circuit(zero, circuit), keep)
        seen.setdefault(_marginal_key(rho), rho)
    return list(seen.values())


def _max_fidelity(
    state: PureState, avoided: list[DensityOperator], cutoff: float
) -> float:
    worst = 0.0
    for rho in avoided:
        worst = max(worst, fidelity(state, rho))
        if worst >= cutoff:
            break
    return worst


def state_diag(cfg: EnumerationConfig) -> HardStateRecord | BudgetExhausted:
    """Return the ``index``-th state that avoids all short marginals.

    Circuits of more than ``f`` gates on ``n`` qubits are scanned in
    order. A candidate is skipped when its output has fidelity at least
    ``epsilon`` with anything avoided; otherwise it is a miss and joins
    the avoided set, and the miss numbered ``index`` is returned.

    Parameters
    ----------
    cfg : EnumerationConfig
        The search inputs.

    Returns
    -------
    HardStateRecord | BudgetExhausted
        The record, or how far the search got within ``budget``.
    """
    avoided = avoided_marginals(cfg)
    seeded = len(avoided)
    logger.debug(
        "state_diag n=%d f=%d: %d distinct marginals on %d qubits",
        cfg.n,
        cfg.f,
        seeded,
        cfg.avoided_width,
    )
    zero = PureState.zero(cfg.n)
    found = 0
    examined = 0
    for circuit in enumerate_circuits(
        cfg.gate_set, cfg.n, None, min_len=cfg.f + 1
    ):
        if examined >= cfg.budget:
            break
        examined += 1
        state = apply_circuit(zero, circuit)
        worst = _max_fidelity(state, avoided, cfg.epsilon)
        if worst >= cfg.epsilon:
            continue
        if found == cfg.index:
            logger.info(
                "hard state %d found after %d circuits (certificate %.6f)",
                cfg.index,
                examined,
                worst,
            )
            return HardStateRecord(
                index=cfg.index,
                witness_circuit=circuit,
                state=state,
                certificate=worst,
                avoided_count=len(avoided),
                avoided_width=cfg.avoided_width,
                examined=examined,
                config=cfg,
            )
        found += 1
        avoided.append(state.density())
    logger.info(
        "budget of %d circuits exhausted with %d of %d hard states",
        cfg.budget,
        found,
        cfg.index + 1,
    )
    return BudgetExhausted(index=cfg.index, found=found, examined=examined)


def verify_hard_state(record: HardStateRecord) -> bool:
    """Re-check a record by exhaustive re-enumeration.

    The witness circuit must reproduce the state, and the state must
    have fidelity below ``epsilon`` with every first-``n``-qubit
    marginal of every circuit of at most ``f`` gates, recomputed here
    without deduplication.

    Parameters
    ----------
    record : HardStateRecord
        The record.

    Returns
    -------
    bool
        Whether every check holds.
    """
    cfg = record.config
    if len(record.witness_circuit) <= cfg.f:
        return False
    replayed = apply_circuit(PureState.zero(cfg.n), record.witness_circuit)
    if fidelity(replayed, record.state) < 1.0 - 1e-9:
        return False
    width = cfg.avoided_width
    zero = PureState.zero(width)
    keep = range(cfg.n)
    for circuit in enumerate_circuits(cfg.gate_set, width, cfg.f):
        rho = partial_trace(apply_circuit(zero, circuit), keep)
        if fidelity(record.state, rho) >= cfg.epsilon:
            return False
    return record.certificate < cfg.epsilon
