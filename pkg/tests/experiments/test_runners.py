# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for the experiment runners at small sizes."""

# pylint: disable=missing-function-docstring,missing-param-doc
import math
from pathlib import Path

import numpy as np
import orjson
import pytest

from qwitness.errors import CapacityError
from qwitness.experiments import (
    fidelity_cdf,
    haar_pair_fidelities,
    mean_ci,
    parallel_map,
    run,
)
from qwitness.models import ExperimentConfig, ExperimentReport


def _config(experiment: str, **kwargs: object) -> ExperimentConfig:
    return ExperimentConfig.model_validate(
        {"experiment": experiment, **kwargs}
    )


def _verdicts(report: ExperimentReport) -> dict[str, bool]:
    return {verdict.name: verdict.passed for verdict in report.verdicts}


def test_fidelity_cdf() -> None:
    assert fidelity_cdf(0.0, 3) == 0.0
    assert fidelity_cdf(1.0, 3) == 1.0
    assert fidelity_cdf(0.3, 1) == pytest.approx(0.3)
    assert fidelity_cdf(0.5, 2) == pytest.approx(1 - 0.5**3)
    assert np.allclose(fidelity_cdf(np.array([-1.0, 2.0]), 2), [0.0, 1.0])


def test_pair_fidelities_do_not_depend_on_workers() -> None:
    single = haar_pair_fidelities(2, 25_000, 3, workers=1)
    pooled = haar_pair_fidelities(2, 25_000, 3, workers=3)
    assert single.shape == (25_000,)
    assert np.array_equal(single, pooled)


def test_helpers() -> None:
    assert parallel_map(lambda x: x * x, range(5), workers=2) == [
        0,
        1,
        4,
        9,
        16,
    ]
    mean, half = mean_ci([1.0, 3.0])
    assert mean == 2.0
    assert half == pytest.approx(1.96)
    assert mean_ci([4.0]) == (4.0, 0.0)
    assert all(math.isnan(v) for v in mean_ci([]))


def test_fidelity_distribution() -> None:
    report = run(
        _config("fidelity-dist", n=3, trials=20_000, seed=1, epsilon=0.1)
    )
    assert len(report.rows) == 20_000
    assert set(_verdicts(report)) == {"fidelity-law", "mean-overlap"}
    assert report.aggregates["ks_statistic"] < 0.03
    assert report.bounds["mean_fidelity"] == pytest.approx(1 / 8)
    assert report.bounds["p_below_epsilon"] == pytest.approx(1 - 0.9**7)
    assert abs(
        report.aggregates["p_below_epsilon"]
        - report.bounds["p_below_epsilon"]
    ) < 0.02
    assert report.notes


def test_state_diagonalization() -> None:
    report = run(
        _config(
            "state-diag", n=1, f=1, epsilon=0.9, index=2, gate_set=["H", "T"]
        )
    )
    verdicts = _verdicts(report)
    assert verdicts["certificate"]
    assert verdicts["distinct-indices"]
    assert verdicts["exponential-form"]
    assert "avoidance-lower-bound" not in verdicts
    assert report.aggregates["found"] == 3.0
    assert [row["index"] for row in report.rows] == [0, 1, 2]
    assert report.bounds["min_hard_state_count"] > 0


def test_state_diagonalization_budget_note() -> None:
    report = run(_config("state-diag", n=1, f=1, index=50, budget=5))
    assert report.rows[-1]["found"] is False
    assert report.notes
    assert "budget of 5" in report.notes[0]


def test_state_diagonalization_with_seed_checks_avoidance() -> None:
    report = run(_config("state-diag", n=1, f=0, epsilon=0.9, seed=4))
    assert "avoidance-lower-bound" in _verdicts(report)
    assert "avoidance_frequency" in report.aggregates


def test_marked_state_distinguishing() -> None:
    report = run(_config("mqst", n=3, trials=12, seed=2, depth=6))
    verdicts = _verdicts(report)
    assert verdicts["phase-flip-identity"]
    assert verdicts["single-query-distance"]
    assert verdicts["distance-monotonicity"]
    assert report.aggregates["max_appended_increase"] <= 1e-9
    assert report.aggregates["max_traced_increase"] <= 1e-9
    assert verdicts["hybrid-bound"]
    assert {"superposition-probe", "near-marked-probe"} <= set(verdicts)
    # twelve random runs and three named strategies
    assert len(report.rows) == 15
    assert report.bounds["indist_bound_clamped"] <= 1.0


def test_grover_scaling() -> None:
    report = run(_config("grover", n=2, n_max=4, trials=101, seed=3))
    verdicts = _verdicts(report)
    assert verdicts["two-qubit-search"]
    assert verdicts["quantum-scaling"]
    assert [row["n"] for row in report.rows] == [2, 4]
    assert [row["iterations"] for row in report.rows] == [1, 3]
    assert report.aggregates["n2_success_probability"] == pytest.approx(1.0)


def test_grover_single_width_notes() -> None:
    report = run(_config("grover", n=3, n_max=3, trials=11, seed=3))
    assert "quantum-scaling" not in _verdicts(report)
    assert "n_max" in report.notes[0]


def test_width_caps_are_checked_before_running() -> None:
    with pytest.raises(CapacityError, match="search cap of 12"):
        run(_config("grover", n=15, seed=3))
    with pytest.raises(CapacityError, match="search cap of 12"):
        run(_config("grover", n=13, n_max=13, seed=3))
    with pytest.raises(ValueError, match="n_max must be at least"):
        run(_config("grover", n=6, n_max=4, seed=3))
    with pytest.raises(CapacityError, match="statevector cap"):
        run(_config("mqst", n=15, trials=2, seed=3))


def test_witness_protocol(tmp_path: Path) -> None:
    out = tmp_path / "protocol"
    report = run(
        _config("protocol", n=2, trials=4, seed=5, depth=6, out=str(out))
    )
    verdicts = _verdicts(report)
    assert verdicts["nonmember-reject"]
    assert verdicts["honest-complete"]
    assert verdicts["transcript-shape"]
    assert {row["batch"] for row in report.rows} == {
        "member",
        "nonmember",
        "haar",
    }
    assert len(report.rows) == 12
    lines = (tmp_path / "protocol.transcripts.jsonl").read_bytes().split(b"\n")
    records = [orjson.loads(line) for line in lines if line]
    assert records


def test_witness_protocol_with_cheating_prover() -> None:
    report = run(
        _config("protocol", n=2, trials=3, seed=6, depth=4, merlin="vacuum")
    )
    verdicts = _verdicts(report)
    assert verdicts["nonmember-reject"]
    assert "honest-complete" not in verdicts
    assert {row["merlin"] for row in report.rows} == {"vacuum"}


def test_rotated_heavy_output() -> None:
    report = run(_config("rxhog", n=3, trials=5, seed=7, precision=16))
    verdicts = _verdicts(report)
    assert verdicts["ancilla-clean"]
    assert verdicts["preparation-fidelity"]
    assert verdicts["rotated-concentration"]
    for strategy in (
        "z-sampler",
        "table-only",
        "phase-probe",
        "phase-probe-adaptive",
    ):
        assert verdicts[f"{strategy}-ceiling"]
        assert f"{strategy}_mean" in report.aggregates
    assert len(report.rows) == 5 * 5
    assert report.bounds["haar_mean_score"] == pytest.approx(2 / 9)
    assert report.rows[0]["p"] == 16


def test_rotated_heavy_output_with_every_string_sampled() -> None:
    report = run(_config("rxhog", n=3, k=8, trials=3, seed=7, precision=16))
    for strategy in ("quantum", "z-sampler"):
        assert report.aggregates[f"{strategy}_mean"] == pytest.approx(1 / 8)
        assert report.aggregates[f"{strategy}_sampled_mean"] == (
            pytest.approx(1 / 8)
        )
    assert report.aggregates["gap_ratio"] == pytest.approx(1.0)
    assert not _verdicts(report)["quantum-gap"]


def test_runs_are_reproducible() -> None:
    config = _config("mqst", n=2, trials=4, seed=11, depth=3)
    first, second = run(config), run(config)
    assert first.rows == second.rows
    assert first.aggregates == second.aggregates
    assert first.config == config
