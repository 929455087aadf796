# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Configuration settings for qwitness using Pydantic."""

# pylint: disable=unused-argument
import os
from typing import Any

from pydantic import ValidationInfo, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuration settings for the simulation laboratory."""

    # Simulation limits
    max_qubits: int = 14
    tolerance: float = 1e-10
    p_max: int = 64

    # Circuits
    default_gate_set: str | list[str] = ["H", "T", "CNOT"]

    # Experiments
    workers: int = 1
    reports_dir: str = "reports"
    shot_budget: int = 4096

    # Logging
    log_level: str = "info"

    @field_validator("default_gate_set", mode="before")
    @classmethod
    def split_gate_set(cls, value: Any, info: ValidationInfo) -> list[str]:
        """Split the gate set if it is given as a string.

        Parameters
        ----------
        value : Any
            The value
        info : ValidationInfo
            The validation info

        Returns
        -------
        List[str]
            The gate kinds, upper-cased
        """
        if isinstance(value, str):
            return [item.strip().upper() for item in value.split(",") if item]
        if isinstance(value, (list, tuple)):
            return [str(item).upper() for item in value if item]
        return ["H", "T", "CNOT"]  # pragma: no cover

    @field_validator("workers", "max_qubits", "p_max", "shot_budget")
    @classmethod
    def positive(cls, value: int, info: ValidationInfo) -> int:
        """Reject non-positive integers.

        Parameters
        ----------
        value : int
            The value
        info : ValidationInfo
            The validation info

        Returns
        -------
        int
            The value

        Raises
        ------
        ValueError
            If the value is not positive.
        """
        if value < 1:
            raise ValueError(f"{info.field_name} must be >= 1, got {value}")
        return value

    model_config = SettingsConfigDict(
        env_prefix="QWITNESS_",
        env_file=os.environ.get("PYDANTIC_ENV_FILE", ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()
