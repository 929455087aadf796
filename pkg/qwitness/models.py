# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Wire models for oracle descriptors, experiment configs and reports."""

# pylint: disable=too-few-public-methods
from enum import StrEnum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

SCHEMA_VERSION = "1.0"
"""Version of the report layout written by the runner."""

OracleKind = Literal["marked", "mqso", "grover", "channel", "bitstring"]
"""Names of the oracle families."""

MerlinKind = Literal["honest", "haar", "vacuum", "permuted"]
"""Prover behaviours selectable from the command line."""


class ExperimentName(StrEnum):
    """The experiment families the runner knows."""

    FIDELITY_DIST = "fidelity-dist"
    STATE_DIAG = "state-diag"
    MQST = "mqst"
    GROVER = "grover"
    PROTOCOL = "protocol"
    RXHOG = "rxhog"


class OracleDescriptor(BaseModel):
    """Everything needed to rebuild an oracle instance."""

    model_config = ConfigDict(extra="forbid")

    kind: OracleKind = Field(..., description="The oracle family")
    n: int = Field(..., description="Width parameter", ge=1)
    seed: int = Field(..., description="Seed for hidden states", ge=0)
    kappa: float | None = Field(
        None, description="Channel pass fraction", gt=0.0, le=1.0
    )
    language_seed: int | None = Field(
        None, description="Seed for language tables (defaults to seed)", ge=0
    )
    p_max: int | None = Field(
        None, description="Digits per angle for bit-string oracles", ge=1
    )
    active: bool = Field(True, description="Marked oracle flips the phase")
    conjugated: bool = Field(False, description="Hadamard-conjugated O_n")
    language_bit: bool | None = Field(
        None, description="Channel membership bit, drawn from seed if unset"
    )
    marked_payload: list[float] | None = Field(
        None, description="Interleaved real/imag amplitudes of a fixed state"
    )

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "OracleDescriptor":
        if self.kind == "channel" and self.kappa is None:
            raise ValueError("channel descriptors need kappa")
        return self


class ExperimentConfig(BaseModel):
    """One experiment invocation; unknown fields are rejected."""

    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentName = Field(..., description="Experiment family")
    n: int = Field(3, description="Qubit count", ge=1)
    trials: int = Field(100, description="Monte-Carlo trials", ge=1)
    seed: int | None = Field(
        None, description="Master 64-bit seed", ge=0, lt=2**64
    )
    epsilon: float | None = Field(
        None, description="Fidelity threshold", gt=0.0, le=1.0
    )
    kappa: float = Field(
        5 / 6, description="Channel pass fraction", gt=0.0, le=1.0
    )
    precision: int = Field(32, description="Digits per angle", ge=1, le=64)
    depth: int = Field(20, description="Random circuit depth", ge=0)
    k: int | None = Field(None, description="Queries or samples", ge=0)
    merlin: MerlinKind = Field("honest", description="Prover behaviour")
    f: int = Field(1, description="Preparable gate budget", ge=0)
    index: int = Field(0, description="Hard-state index", ge=0)
    budget: int = Field(
        10_000, description="Circuits examined by the enumeration", ge=1
    )
    gate_set: list[str] | None = Field(
        None, description="Gate kinds, defaults to the configured set"
    )
    n_max: int | None = Field(
        None, description="Largest width in a scaling sweep", ge=1
    )
    noise: float = Field(
        0.0, description="Per-block fidelity loss", ge=0.0, le=1.0
    )
    workers: int | None = Field(None, description="Worker threads", ge=1)
    out: str | None = Field(None, description="Report path prefix")

    @model_validator(mode="after")
    def _seed_required(self) -> "ExperimentConfig":
        randomized = self.experiment is not ExperimentName.STATE_DIAG
        if randomized and self.seed is None:
            raise ValueError(f"{self.experiment} is randomized, set a seed")
        return self


class Verdict(BaseModel):
    """One pass/fail check against a named property."""

    name: str = Field(..., description="Short identifier")
    invariant: str = Field(..., description="The property being checked")
    passed: bool = Field(..., description="Whether the check held")
    detail: str = Field("", description="Observed values")


class ExperimentReport(BaseModel):
    """Result of one run: config echo, rows, aggregates and verdicts."""

    schema_version: str = Field(SCHEMA_VERSION, description="Report layout")
    config: ExperimentConfig = Field(..., description="The config that ran")
    rows: list[dict[str, Any]] = Field(
        default_factory=list, description="Per-trial records"
    )
    aggregates: dict[str, float] = Field(
        default_factory=dict, description="Means, CIs and test statistics"
    )
    bounds: dict[str, float] = Field(
        default_factory=dict, description="Closed-form values"
    )
    verdicts: list[Verdict] = Field(
        default_factory=list, description="Checks"
    )
    notes: list[str] = Field(default_factory=list, description="Remarks")
    wall_clock_seconds: float = Field(0.0, description="Elapsed time")

    @property
    def passed(self) -> bool:
        """Return whether every verdict passed."""
        return all(verdict.passed for verdict in self.verdicts)
