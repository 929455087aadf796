# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Base class and shared helpers for experiment runners."""

# pylint: disable=unused-argument
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import (
    Any,
    Callable,
    ClassVar,
    Iterable,
    Protocol,
    Sequence,
    TypeVar,
    runtime_checkable,
)

import numpy as np

from qwitness.config import settings
from qwitness.models import ExperimentConfig, ExperimentName, Verdict
from qwitness.sim import check_capacity

T = TypeVar("T")
R = TypeVar("R")


@runtime_checkable
class Experiment(Protocol):
    """Protocol for an experiment runner."""

    name: ExperimentName
    description: str
    required: tuple[str, ...]
    optional: tuple[str, ...]

    def execute(self, config: ExperimentConfig) -> "ExperimentOutcome":
        """Run the experiment.

        Parameters
        ----------
        config : ExperimentConfig
            The validated config.

        Returns
        -------
        ExperimentOutcome
            Rows, aggregates, bounds, verdicts and notes.
        """

    def check_widths(self, config: ExperimentConfig) -> None:
        """Raise ``CapacityError`` for widths above the caps."""


class ExperimentOutcome:
    """What a runner hands back before timing and the config are added."""

    def __init__(self) -> None:
        self.rows: list[dict[str, Any]] = []
        self.aggregates: dict[str, float] = {}
        self.bounds: dict[str, float] = {}
        self.verdicts: list[Verdict] = []
        self.notes: list[str] = []

    def check(
        self, name: str, invariant: str, passed: bool, detail: str = ""
    ) -> None:
        """Record a verdict.

        Parameters
        ----------
        name : str
            Short identifier.
        invariant : str
            The property checked.
        passed : bool
            Whether it held.
        detail : str, optional
            Observed values, by default "".
        """
        self.verdicts.append(
            Verdict(
                name=name,
                invariant=invariant,
                passed=bool(passed),
                detail=detail,
            )
        )


class BaseExperiment:
    """Common plumbing for experiment runners."""

    name: ClassVar[ExperimentName]
    description: ClassVar[str] = ""
    required: ClassVar[tuple[str, ...]] = ("seed",)
    optional: ClassVar[tuple[str, ...]] = ("n", "trials", "workers", "out")

    def __init__(self) -> None:
        self.logger = logging.getLogger(__name__)

    def execute(self, config: ExperimentConfig) -> ExperimentOutcome:
        """Run the experiment; subclasses override.

        Parameters
        ----------
        config : ExperimentConfig
            The validated config.

        Returns
        -------
        ExperimentOutcome
            The outcome.
        """
        raise NotImplementedError  # pragma: no cover

    def check_widths(self, config: ExperimentConfig) -> None:
        """Reject widths above the caps before any work starts.

        Parameters
        ----------
        config : ExperimentConfig
            The validated config.

        Raises
        ------
        CapacityError
            If ``n`` is above the statevector cap.
        """
        check_capacity(config.n)

    @staticmethod
    def seed_of(config: ExperimentConfig) -> int:
        """Return the config seed, 0 when the experiment needs none."""
        return 0 if config.seed is None else config.seed

    @staticmethod
    def workers_of(config: ExperimentConfig) -> int:
        """Return the worker count from the config or the settings."""
        return config.workers or settings.workers


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], workers: int = 1
) -> list[R]:
    """Map ``func`` over ``items`` on a thread pool, keeping input order.

    Parameters
    ----------
    func : Callable[[T], R]
        The per-item function; it must draw randomness only from
        streams derived from the item.
    items : Iterable[T]
        The items.
    workers : int, optional
        Pool size, by default 1 (run inline).

    Returns
    -------
    list[R]
        Results in input order.
    """
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def mean_ci(values: Sequence[float], z: float = 1.96) -> tuple[float, float]:
    """Return the mean and the half-width of its normal confidence interval.

    Parameters
    ----------
    values : Sequence[float]
        Samples.
    z : float, optional
        Normal quantile, by default 1.96.

    Returns
    -------
    tuple[float, float]
        ``(mean, z * std / sqrt(len))``; the half-width is 0 for a
        single sample.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return math.nan, math.nan
    if array.size == 1:
        return float(array[0]), 0.0
    return float(array.mean()), float(
        z * array.std(ddof=1) / math.sqrt(array.size)
    )
