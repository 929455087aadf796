# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Oracle families package initializer."""

from qwitness.models import OracleDescriptor
from qwitness.rng import derive_rng
from qwitness.sim import PureState, haar_random_state

from ._base import BaseOracle, Oracle, from_target_rows, target_rows
from ._bitstring import (
    SEP,
    BitStringOracle,
    SymbolState,
    binary_digit,
    bit_oracle_query,
    bit_oracle_query_quantum,
    format_query,
    parse_query,
    truncate_fraction,
)
from ._channel import (
    ChannelOracle,
    ChannelReply,
    apply_channel,
    emulate_channel_with_marked_oracle,
    pass_count_tail,
)
from ._grover import GroverStandardOracle, apply_grover, apply_grover_phase
from ._language import LanguageTable
from ._marked import (
    MarkedStateOracle,
    apply_marked,
    case_one_acceptance,
    orthogonal_partner,
    verify_case_one,
)
from ._mqso import MqsoOracle, apply_mqso


def _marked_state(descriptor: OracleDescriptor, width: int) -> PureState:
    if descriptor.marked_payload is not None:
        state = PureState.from_payload(descriptor.marked_payload)
        if state.n_qubits != width:
            raise ValueError(
                f"marked payload has {state.n_qubits} qubits, need {width}"
            )
        return state
    return haar_random_state(width, derive_rng(descriptor.seed, 0, "marked"))


def get_oracle(descriptor: OracleDescriptor) -> BaseOracle:
    """Build the oracle a descriptor names.

    Hidden states are Haar-random draws keyed by ``seed`` unless an
    explicit payload is given; language tables are keyed by
    ``language_seed`` (``seed`` when unset).

    Parameters
    ----------
    descriptor : OracleDescriptor
        The descriptor.

    Returns
    -------
    BaseOracle
        A fresh oracle with a zero query count.

    Raises
    ------
    ValueError
        If the descriptor kind is not supported.
    """
    n = descriptor.n
    language_seed = (
        descriptor.seed
        if descriptor.language_seed is None
        else descriptor.language_seed
    )
    language_rng = derive_rng(language_seed, 0, "language")
    if descriptor.kind == "marked":
        return MarkedStateOracle(
            _marked_state(descriptor, n), active=descriptor.active
        )
    if descriptor.kind == "mqso":
        return MqsoOracle(
            _marked_state(descriptor, n),
            LanguageTable.generate([n], language_rng),
        )
    if descriptor.kind == "grover":
        secret_rng = derive_rng(descriptor.seed, 0, "secret")
        secret = format(int(secret_rng.integers(2**n)), f"0{n}b")
        return GroverStandardOracle(
            secret,
            LanguageTable.generate([n], language_rng),
            conjugated=descriptor.conjugated,
        )
    if descriptor.kind == "channel":
        marked_rng = derive_rng(descriptor.seed, 0, "marked")
        marked = [haar_random_state(n, marked_rng) for _ in range(n)]
        language_bit = (
            bool(language_rng.integers(2))
            if descriptor.language_bit is None
            else descriptor.language_bit
        )
        return ChannelOracle(
            marked,
            kappa=descriptor.kappa or 5 / 6,
            language_bit=language_bit,
            rng=derive_rng(descriptor.seed, 0, "channel"),
        )
    if descriptor.kind == "bitstring":
        return BitStringOracle(
            _marked_state(descriptor, n), p_max=descriptor.p_max
        )
    raise ValueError(f"Unsupported oracle kind: {descriptor.kind}")


__all__ = [
    "SEP",
    "BaseOracle",
    "BitStringOracle",
    "ChannelOracle",
    "ChannelReply",
    "GroverStandardOracle",
    "LanguageTable",
    "MarkedStateOracle",
    "MqsoOracle",
    "Oracle",
    "SymbolState",
    "apply_channel",
    "apply_grover",
    "apply_grover_phase",
    "apply_marked",
    "apply_mqso",
    "binary_digit",
    "bit_oracle_query",
    "bit_oracle_query_quantum",
    "case_one_acceptance",
    "emulate_channel_with_marked_oracle",
    "format_query",
    "from_target_rows",
    "get_oracle",
    "orthogonal_partner",
    "parse_query",
    "pass_count_tail",
    "target_rows",
    "truncate_fraction",
    "verify_case_one",
]
