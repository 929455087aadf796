# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the experiment catalog and report files."""

# pylint: disable=missing-function-docstring,missing-param-doc
from pathlib import Path

import orjson
import pandas as pd
import pytest

from qwitness.config import settings
from qwitness.experiments import (
    Experiment,
    default_prefix,
    dump_report,
    get_experiment,
    list_experiments,
    write_report,
)
from qwitness.models import (
    SCHEMA_VERSION,
    ExperimentConfig,
    ExperimentReport,
    Verdict,
)


def _report(out: str | None = None) -> ExperimentReport:
    config = ExperimentConfig(experiment="grover", seed=9, out=out)
    return ExperimentReport(
        config=config,
        rows=[{"n": 2, "quantum_median": 2.0}, {"n": 4, "quantum_median": 4.0}],
        aggregates={"min_quantum_ratio": 2.0},
        verdicts=[Verdict(name="check", invariant="holds", passed=True)],
    )


def test_catalog_lists_every_family() -> None:
    catalog = list_experiments()
    names = [entry["name"] for entry in catalog]
    assert names == [
        "fidelity-dist",
        "state-diag",
        "mqst",
        "grover",
        "protocol",
        "rxhog",
    ]
    by_name = {entry["name"]: entry for entry in catalog}
    assert by_name["state-diag"]["required"] == []
    assert by_name["rxhog"]["required"] == ["seed"]
    assert "precision" in by_name["rxhog"]["parameters"]
    assert by_name["mqst"]["parameters"]["n"]["minimum"] == 1


def test_get_experiment() -> None:
    runner = get_experiment("mqst")
    assert isinstance(runner, Experiment)
    assert runner.name == "mqst"
    with pytest.raises(ValueError, match="Unsupported experiment"):
        get_experiment("teleport")


def test_default_prefix(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setattr(settings, "reports_dir", str(tmp_path))
    config = ExperimentConfig(experiment="rxhog", seed=7)
    assert default_prefix(config) == tmp_path / "rxhog-7"
    unseeded = ExperimentConfig(experiment="state-diag")
    assert default_prefix(unseeded) == tmp_path / "state-diag-noseed"


def test_dump_report_is_indented_json() -> None:
    data = dump_report(_report())
    assert data.startswith(b"{\n  ")
    loaded = orjson.loads(data)
    assert loaded["schema_version"] == SCHEMA_VERSION
    assert loaded["config"]["experiment"] == "grover"
    assert loaded["verdicts"][0]["passed"] is True


def test_write_report_to_prefix(tmp_path: Path) -> None:
    json_path, csv_path = write_report(_report(), tmp_path / "sub" / "run")
    assert json_path == tmp_path / "sub" / "run.json"
    assert csv_path == tmp_path / "sub" / "run.csv"
    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == ["n", "quantum_median"]
    assert frame["n"].tolist() == [2, 4]
    rebuilt = ExperimentReport.model_validate_json(json_path.read_bytes())
    assert rebuilt.passed
    assert rebuilt.config.seed == 9


def test_write_report_defaults(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    json_path, _ = write_report(_report(out=str(tmp_path / "chosen")))
    assert json_path == tmp_path / "chosen.json"
    monkeypatch.setattr(settings, "reports_dir", str(tmp_path / "reports"))
    json_path, csv_path = write_report(_report())
    assert json_path == tmp_path / "reports" / "grover-9.json"
    assert csv_path.exists()
