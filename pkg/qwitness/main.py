# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Command-line entry point for the experiment runner."""

import argparse
import logging.config
import sys
from pathlib import Path
from typing import Any, Sequence

import orjson
from pydantic import ValidationError

from qwitness._logging import get_logging_config
from qwitness.config import settings
from qwitness.errors import CapacityError
from qwitness.experiments import list_experiments, run, write_report
from qwitness.models import ExperimentConfig, ExperimentName, ExperimentReport

from ._version import __version__

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_SCHEMA_ERROR = 2
EXIT_CAPACITY_ERROR = 3

_FLAGS: list[tuple[str, type, str]] = [
    ("n", int, "Qubit count"),
    ("trials", int, "Monte-Carlo trials"),
    ("seed", int, "Master 64-bit seed"),
    ("epsilon", float, "Fidelity threshold"),
    ("kappa", float, "Channel pass fraction"),
    ("precision", int, "Digits per angle"),
    ("depth", int, "Random circuit depth"),
    ("k", int, "Queries or samples"),
    ("f", int, "Preparable gate budget"),
    ("index", int, "Hard-state index"),
    ("budget", int, "Circuits examined by the enumeration"),
    ("n_max", int, "Largest width in a scaling sweep"),
    ("noise", float, "Per-block fidelity loss on the witness"),
    ("workers", int, "Worker threads"),
    ("out", str, "Report path prefix"),
]

logger = logging.getLogger(__name__)


def cli() -> argparse.ArgumentParser:
    """Build the argument parser.

    Returns
    -------
    argparse.ArgumentParser
        The parser with one subcommand per experiment plus
        ``list`` and ``schema``.
    """
    parser = argparse.ArgumentParser(
        prog="qwitness",
        description="Exact-simulation experiments on quantum oracles.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        help="Log level (defaults to the configured one).",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("list", help="Print the experiment catalog.")
    commands.add_parser("schema", help="Print the report JSON schema.")
    for name in ExperimentName:
        sub = commands.add_parser(str(name), help=f"Run {name}.")
        sub.add_argument(
            "--config",
            type=Path,
            default=None,
            help="JSON config file; flags override its values.",
        )
        for field, kind, text in _FLAGS:
            sub.add_argument(
                f"--{field.replace('_', '-')}",
                dest=field,
                type=kind,
                default=None,
                help=text,
            )
        sub.add_argument(
            "--gate-set",
            dest="gate_set",
            type=str,
            default=None,
            help="Comma separated gate kinds, e.g. H,T,CNOT.",
        )
        sub.add_argument(
            "--merlin",
            choices=["honest", "haar", "vacuum", "permuted"],
            default=None,
            help="Prover behaviour.",
        )
    return parser


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge the config file and the flags into a validated config.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments of an experiment subcommand.

    Returns
    -------
    ExperimentConfig
        The config.

    Raises
    ------
    ValidationError
        If the merged values do not form a valid config.
    """
    values: dict[str, Any] = {}
    if args.config is not None:
        values.update(orjson.loads(args.config.read_bytes()))
    for field, _, _ in _FLAGS:
        value = getattr(args, field)
        if value is not None:
            values[field] = value
    if args.gate_set is not None:
        values["gate_set"] = [
            kind.strip().upper() for kind in args.gate_set.split(",") if kind
        ]
    if args.merlin is not None:
        values["merlin"] = args.merlin
    values["experiment"] = args.command
    return ExperimentConfig.model_validate(values)


def schema_error(error: ValidationError) -> str:
    """Format a validation error with its field paths.

    Parameters
    ----------
    error : ValidationError
        The error.

    Returns
    -------
    str
        One ``path: message`` line per problem.
    """
    lines = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"]) or "<config>"
        lines.append(f"{path}: {item['msg']}")
    return "\n".join(lines)


def execute(args: argparse.Namespace) -> int:
    """Run the selected command.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments.

    Returns
    -------
    int
        The process exit code.
    """
    if args.command == "list":
        sys.stdout.write(
            orjson.dumps(list_experiments(), option=orjson.OPT_INDENT_2)
            .decode()
        )
        sys.stdout.write("\n")
        return EXIT_OK
    if args.command == "schema":
        sys.stdout.write(
            orjson.dumps(
                ExperimentReport.model_json_schema(),
                option=orjson.OPT_INDENT_2,
            ).decode()
        )
        sys.stdout.write("\n")
        return EXIT_OK
    try:
        config = build_config(args)
    except ValidationError as error:
        sys.stderr.write(f"invalid config\n{schema_error(error)}\n")
        return EXIT_SCHEMA_ERROR
    except (OSError, orjson.JSONDecodeError) as error:
        sys.stderr.write(f"cannot read config: {error}\n")
        return EXIT_SCHEMA_ERROR
    try:
        report = run(config)
    except CapacityError as error:
        sys.stderr.write(f"capacity error: {error}\n")
        return EXIT_CAPACITY_ERROR
    except ValueError as error:
        sys.stderr.write(f"invalid config: {error}\n")
        return EXIT_SCHEMA_ERROR
    json_path, _ = write_report(report)
    status = "passed" if report.passed else "failed"
    sys.stdout.write(f"{config.experiment} {status}: {json_path}\n")
    return EXIT_OK if report.passed else EXIT_VERDICT_FAILED


def main(argv: Sequence[str] | None = None) -> None:
    """Parse the arguments, configure logging and exit with the result.

    Parameters
    ----------
    argv : Sequence[str] | None, optional
        Arguments, by default ``sys.argv[1:]``.
    """
    args = cli().parse_args(argv)
    if args.log_level:
        settings.log_level = args.log_level
    logging.config.dictConfig(get_logging_config(settings.log_level))
    logger.debug("qwitness %s", __version__)
    sys.exit(execute(args))


if __name__ == "__main__":
    main()
