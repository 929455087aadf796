# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Dispatch, timing and report files."""

import logging
import time
from pathlib import Path
from typing import Any

import orjson
import pandas as pd

from qwitness.config import settings
from qwitness.models import ExperimentConfig, ExperimentName, ExperimentReport

from ._base import BaseExperiment, Experiment
from ._fidelity import FidelityDistribution
from ._grover import GroverScaling
from ._mqst import MarkedStateDistinguishing
from ._protocol import WitnessProtocol
from ._rxhog import RotatedHeavyOutput
from ._statediag import StateDiagonalization

logger = logging.getLogger(__name__)

_EXPERIMENTS: dict[ExperimentName, type[BaseExperiment]] = {
    ExperimentName.FIDELITY_DIST: FidelityDistribution,
    ExperimentName.STATE_DIAG: StateDiagonalization,
    ExperimentName.MQST: MarkedStateDistinguishing,
    ExperimentName.GROVER: GroverScaling,
    ExperimentName.PROTOCOL: WitnessProtocol,
    ExperimentName.RXHOG: RotatedHeavyOutput,
}


def get_experiment(name: str | ExperimentName) -> Experiment:
    """Get the runner of an experiment family.

    Parameters
    ----------
    name : str | ExperimentName
        The experiment name.

    Returns
    -------
    Experiment
        A fresh runner.

    Raises
    ------
    ValueError
        If the name is not known.
    """
    try:
        key = ExperimentName(name)
    except ValueError as exc:
        raise ValueError(f"Unsupported experiment: {name}") from exc
    return _EXPERIMENTS[key]()


def list_experiments() -> list[dict[str, Any]]:
    """Return the catalog of experiments with their parameter schemas.

    Returns
    -------
    list[dict[str, Any]]
        One entry per experiment: name, description, required and
        optional fields, and the JSON schema of every listed field.
    """
    properties = ExperimentConfig.model_json_schema()["properties"]
    catalog = []
    for name, runner in _EXPERIMENTS.items():
        fields = [*runner.required, *runner.optional]
        catalog.append(
            {
                "name": str(name),
                "description": runner.description,
                "required": list(runner.required),
                "optional": list(runner.optional),
                "parameters": {
                    field: properties[field]
                    for field in fields
                    if field in properties
                },
            }
        )
    return catalog


def run(config: ExperimentConfig) -> ExperimentReport:
    """Run one experiment and assemble its report.

    Parameters
    ----------
    config : ExperimentConfig
        The validated config.

    Returns
    -------
    ExperimentReport
        The report; identical for identical configs apart from
        ``wall_clock_seconds``.

    Raises
    ------
    CapacityError
        If a width the config asks for is above its cap.
    """
    runner = get_experiment(config.experiment)
    logger.info(
        "running %s (n=%d, trials=%d, seed=%s)",
        config.experiment,
        config.n,
        config.trials,
        config.seed,
    )
    runner.check_widths(config)
    start = time.perf_counter()
    outcome = runner.execute(config)
    elapsed = time.perf_counter() - start
    report = ExperimentReport(
        config=config,
        rows=outcome.rows,
        aggregates=outcome.aggregates,
        bounds=outcome.bounds,
        verdicts=outcome.verdicts,
        notes=outcome.notes,
        wall_clock_seconds=elapsed,
    )
    for verdict in report.verdicts:
        if not verdict.passed:
            logger.warning(
                "verdict %s failed: %s", verdict.name, verdict.detail
            )
    logger.info(
        "%s finished in %.2fs, %d/%d verdicts passed",
        config.experiment,
        elapsed,
        sum(v.passed for v in report.verdicts),
        len(report.verdicts),
    )
    return report


def default_prefix(config: ExperimentConfig) -> Path:
    """Return where a report goes when the config names no path.

    Parameters
    ----------
    config : ExperimentConfig
        The config.

    Returns
    -------
    Path
        ``<reports_dir>/<experiment>-<seed>``.
    """
    suffix = "noseed" if config.seed is None else str(config.seed)
    return Path(settings.reports_dir) / f"{config.experiment}-{suffix}"


def dump_report(report: ExperimentReport) -> bytes:
    """Serialize a report as indented UTF-8 JSON.

    Parameters
    ----------
    report : ExperimentReport
        The report.

    Returns
    -------
    bytes
        The JSON document.
    """
    return orjson.dumps(
        report.model_dump(),
        option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY,
    )


def write_report(
    report: ExperimentReport, prefix: str | Path | None = None
) -> tuple[Path, Path]:
    """Write the JSON report and the per-trial CSV.

    Parameters
    ----------
    report : ExperimentReport
        The report.
    prefix : str | Path | None, optional
        Path prefix; ``.json`` and ``.csv`` are appended. Defaults to
        ``config.out`` or a name under the reports directory.

    Returns
    -------
    tuple[Path, Path]
        The JSON and CSV paths.
    """
    if prefix is None:
        prefix = report.config.out or default_prefix(report.config)
    base = Path(prefix)
    base.parent.mkdir(parents=True, exist_ok=True)
    json_path = base.with_name(base.name + ".json")
    csv_path = base.with_name(base.name + ".csv")
    json_path.write_bytes(dump_report(report))
    pd.DataFrame(report.rows).to_csv(csv_path, index=False)
    logger.info("report written to %s and %s", json_path, csv_path)
    return json_path, csv_path
