# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Three-party witness protocol package initializer."""

from ._actors import run_protocol, run_protocol_async, run_transcripts
from ._merlin import (
    DishonestKind,
    MerlinFailure,
    MerlinWitness,
    apply_block_noise,
    canonical_strategy,
    merlin_dishonest,
    merlin_honest,
)
from ._messages import (
    ClassicalBroadcast,
    Decision,
    OracleReply,
    ProblemInstance,
    ProtocolMessage,
    ProtocolTranscript,
    ProverAbort,
    QuantumPayload,
    QuantumTransfer,
    Role,
    TranscriptHeader,
    TranscriptStatistics,
    decode_message,
    encode_message,
    transcript_problems,
)
from ._server import (
    ServerRecord,
    broadcast,
    conditional_half,
    server_generate,
)

__all__ = [
    "ClassicalBroadcast",
    "Decision",
    "DishonestKind",
    "MerlinFailure",
    "MerlinWitness",
    "OracleReply",
    "ProblemInstance",
    "ProtocolMessage",
    "ProtocolTranscript",
    "ProverAbort",
    "QuantumPayload",
    "QuantumTransfer",
    "Role",
    "ServerRecord",
    "TranscriptHeader",
    "TranscriptStatistics",
    "apply_block_noise",
    "broadcast",
    "canonical_strategy",
    "conditional_half",
    "decode_message",
    "encode_message",
    "merlin_dishonest",
    "merlin_honest",
    "run_protocol",
    "run_protocol_async",
    "run_transcripts",
    "server_generate",
    "transcript_problems",
]
