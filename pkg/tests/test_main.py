# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the command-line entry point."""

# pylint: disable=missing-function-docstring,missing-param-doc
from pathlib import Path

import orjson
import pytest

from qwitness.config import settings
from qwitness.main import (
    EXIT_CAPACITY_ERROR,
    EXIT_OK,
    EXIT_SCHEMA_ERROR,
    EXIT_VERDICT_FAILED,
    build_config,
    cli,
    execute,
    main,
)


def _execute(*argv: str) -> int:
    return execute(cli().parse_args(list(argv)))


def test_list(capsys: pytest.CaptureFixture[str]) -> None:
    assert _execute("list") == EXIT_OK
    catalog = orjson.loads(capsys.readouterr().out)
    assert len(catalog) == 6


def test_schema(capsys: pytest.CaptureFixture[str]) -> None:
    assert _execute("schema") == EXIT_OK
    schema = orjson.loads(capsys.readouterr().out)
    assert "verdicts" in schema["properties"]


def test_flags_and_config_file(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_bytes(orjson.dumps({"n": 2, "f": 3, "trials": 7}))
    args = cli().parse_args(
        ["state-diag", "--config", str(path), "--f", "1", "--gate-set", "h,t"]
    )
    config = build_config(args)
    assert config.n == 2
    assert config.f == 1
    assert config.trials == 7
    assert config.gate_set == ["H", "T"]
    assert config.experiment == "state-diag"


def test_missing_seed_is_a_schema_error(
    capsys: pytest.CaptureFixture[str],
) -> None:
    assert _execute("mqst", "--n", "2") == EXIT_SCHEMA_ERROR
    assert "set a seed" in capsys.readouterr().err


def test_unknown_config_key_is_a_schema_error(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = tmp_path / "config.json"
    path.write_bytes(orjson.dumps({"bogus": 1}))
    assert _execute("state-diag", "--config", str(path)) == EXIT_SCHEMA_ERROR
    assert "bogus" in capsys.readouterr().err
    missing = tmp_path / "absent.json"
    assert _execute("state-diag", "--config", str(missing)) == (
        EXIT_SCHEMA_ERROR
    )


def test_capacity_error(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = _execute(
        "fidelity-dist",
        "--n",
        "15",
        "--seed",
        "1",
        "--trials",
        "2",
        "--out",
        str(tmp_path / "wide"),
    )
    assert code == EXIT_CAPACITY_ERROR
    assert "statevector cap" in capsys.readouterr().err
    assert not (tmp_path / "wide.json").exists()


@pytest.mark.parametrize(
    "widths", [("--n", "15"), ("--n", "13"), ("--n", "13", "--n-max", "13")]
)
def test_search_width_above_cap(
    widths: tuple[str, ...],
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    prefix = tmp_path / "search"
    code = _execute(
        "grover", *widths, "--seed", "1", "--trials", "2", "--out", str(prefix)
    )
    assert code == EXIT_CAPACITY_ERROR
    assert "search cap of 12" in capsys.readouterr().err
    assert not (tmp_path / "search.json").exists()


def test_reversed_width_range_is_rejected(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = _execute(
        "grover",
        "--n",
        "6",
        "--n-max",
        "4",
        "--seed",
        "1",
        "--out",
        str(tmp_path / "search"),
    )
    assert code == EXIT_SCHEMA_ERROR
    assert "n_max must be at least n=6" in capsys.readouterr().err


def test_passing_run_writes_report(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    prefix = tmp_path / "diag"
    code = _execute(
        "state-diag",
        "--n",
        "1",
        "--f",
        "1",
        "--epsilon",
        "0.9",
        "--gate-set",
        "H,T",
        "--out",
        str(prefix),
    )
    assert code == EXIT_OK
    assert "state-diag passed" in capsys.readouterr().out
    report = orjson.loads((tmp_path / "diag.json").read_bytes())
    assert report["config"]["gate_set"] == ["H", "T"]
    assert (tmp_path / "diag.csv").exists()


def test_failed_verdict_exit_code(tmp_path: Path) -> None:
    # every witness block is orthogonal, so the gap check cannot hold
    code = _execute(
        "protocol",
        "--n",
        "3",
        "--trials",
        "2",
        "--seed",
        "1",
        "--depth",
        "4",
        "--noise",
        "1.0",
        "--out",
        str(tmp_path / "noisy"),
    )
    assert code == EXIT_VERDICT_FAILED


def test_main_exits_with_the_code(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "log_level", settings.log_level)
    with pytest.raises(SystemExit) as info:
        main(["--log-level", "warning", "list"])
    assert info.value.code == EXIT_OK
    with pytest.raises(SystemExit):
        main(["teleport"])
