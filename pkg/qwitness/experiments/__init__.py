# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Experiment runners package initializer."""

from ._base import (
    BaseExperiment,
    Experiment,
    ExperimentOutcome,
    mean_ci,
    parallel_map,
)
from ._fidelity import FidelityDistribution, fidelity_cdf, haar_pair_fidelities
from ._grover import GroverScaling
from ._mqst import MarkedStateDistinguishing
from ._protocol import WitnessProtocol, write_transcripts
from ._rxhog import RotatedHeavyOutput
from ._runner import (
    default_prefix,
    dump_report,
    get_experiment,
    list_experiments,
    run,
    write_report,
)
from ._statediag import StateDiagonalization

__all__ = [
    "BaseExperiment",
    "Experiment",
    "ExperimentOutcome",
    "FidelityDistribution",
    "GroverScaling",
    "MarkedStateDistinguishing",
    "RotatedHeavyOutput",
    "StateDiagonalization",
    "WitnessProtocol",
    "default_prefix",
    "dump_report",
    "fidelity_cdf",
    "get_experiment",
    "haar_pair_fidelities",
    "list_experiments",
    "mean_ci",
    "parallel_map",
    "run",
    "write_report",
    "write_transcripts",
]
