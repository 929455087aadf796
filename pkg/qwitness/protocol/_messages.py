# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Protocol messages, quantum payload handles and the transcript."""

# pylint: disable=too-few-public-methods
import threading
import uuid
from typing import Annotated, Any, Literal, Union

import orjson
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from qwitness.errors import NoCloningError
from qwitness.models import MerlinKind
from qwitness.sim import Circuit, ProductState

Role = Literal["server", "merlin", "arthur", "oracle", "all"]
"""Protocol parties; ``all`` marks a public broadcast."""


class _Message(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    sender: Role = Field(..., description="Sending party")
    receiver: Role = Field(..., description="Receiving party")


class ProblemInstance(_Message):
    """The instance of the unary language: just ``n``."""

    kind: Literal["problem_instance"] = "problem_instance"
    n: int = Field(..., description="Instance length", ge=1)


class ClassicalBroadcast(_Message):
    """Public circuit descriptions and measurement outcomes."""

    kind: Literal["classical_broadcast"] = "classical_broadcast"
    n: int = Field(..., description="Marked-state width", ge=1)
    kappa: float = Field(..., description="Pass fraction", gt=0.0, le=1.0)
    circuits: list[Circuit] = Field(..., description="The circuits c_j")
    outcomes: list[str] = Field(..., description="The outcomes m_j")


class QuantumTransfer(_Message):
    """Announces that a quantum payload moved between parties."""

    kind: Literal["quantum_transfer"] = "quantum_transfer"
    payload_id: str = Field(..., description="Handle of the moved payload")
    n_qubits: int = Field(..., description="Payload width", ge=1)
    block_widths: list[int] = Field(..., description="Widths of the blocks")


class ProverAbort(_Message):
    """The prover could not produce a witness."""

    kind: Literal["prover_abort"] = "prover_abort"
    reason: str = Field(..., description="Why no witness was sent")


class OracleReply(_Message):
    """What the channel oracle hands back to the verifier."""

    kind: Literal["oracle_reply"] = "oracle_reply"
    bit: int | None = Field(None, description="The returned bit")
    qubit_p1: float | None = Field(
        None, description="P(1) of the returned qubit, qubit mode only"
    )


class Decision(_Message):
    """The verifier's verdict."""

    kind: Literal["decision"] = "decision"
    accept: bool = Field(..., description="Whether the verifier accepts")
    reason: str = Field("", description="What the verdict rests on")


ProtocolMessage = Annotated[
    Union[
        ProblemInstance,
        ClassicalBroadcast,
        QuantumTransfer,
        ProverAbort,
        OracleReply,
        Decision,
    ],
    Field(discriminator="kind"),
]
"""Any protocol message, tagged by ``kind``."""

message_adapter: TypeAdapter[Any] = TypeAdapter(ProtocolMessage)


def encode_message(message: BaseModel) -> bytes:
    """Serialize a message for the wire.

    Parameters
    ----------
    message : BaseModel
        The message.

    Returns
    -------
    bytes
        The JSON bytes.
    """
    return orjson.dumps(message.model_dump(mode="json"))


def decode_message(data: bytes) -> Any:
    """Parse wire bytes back into the matching message class.

    Parameters
    ----------
    data : bytes
        The JSON bytes.

    Returns
    -------
    Any
        The message.
    """
    return message_adapter.validate_json(data)


class QuantumPayload:
    """A quantum register that can be taken exactly once.

    Parameters
    ----------
    register : ProductState
        The register.
    """

    def __init__(self, register: ProductState) -> None:
        self.payload_id = uuid.uuid4().hex
        self.n_qubits = register.n_qubits
        self.block_widths = list(register.widths)
        self._register: ProductState | None = register
        self._lock = threading.Lock()

    @property
    def taken(self) -> bool:
        """Return whether the register has been moved out."""
        return self._register is None

    def take(self) -> ProductState:
        """Move the register out of the handle.

        Returns
        -------
        ProductState
            The register.

        Raises
        ------
        NoCloningError
            If it was taken before.
        """
        with self._lock:
            if self._register is None:
                raise NoCloningError(
                    f"payload {self.payload_id} was already moved"
                )
            register, self._register = self._register, None
        return register


class TranscriptHeader(BaseModel):
    """Run parameters written as the first transcript line."""

    record: Literal["header"] = "header"
    n: int
    kappa: float
    depth: int
    merlin_kind: MerlinKind
    seed: int | None = None
    noise: float = 0.0
    classical_reply: bool = True


class TranscriptStatistics(BaseModel):
    """Numbers gathered outside the message flow."""

    language_bit: bool
    merlin_attempts: list[int] = Field(default_factory=list)
    shots_used: int = 0
    passes: int | None = None
    threshold: int | None = None
    flipped: bool | None = None
    accept_probability: float | None = None
    noisy_blocks: int = 0


class ProtocolTranscript(BaseModel):
    """Ordered messages of one run with its outcome."""

    header: TranscriptHeader
    messages: list[ProtocolMessage] = Field(default_factory=list)
    outcome: Literal["accept", "reject"] = "reject"
    failure: str | None = None
    statistics: TranscriptStatistics

    @property
    def accepted(self) -> bool:
        """Return whether the verifier accepted."""
        return self.outcome == "accept"

    def to_jsonl(self) -> bytes:
        """Serialize as JSON lines: header, messages, then the outcome.

        Returns
        -------
        bytes
            Newline-terminated records.
        """
        lines = [orjson.dumps(self.header.model_dump(mode="json"))]
        lines.extend(
            orjson.dumps(message.model_dump(mode="json"))
            for message in self.messages
        )
        lines.append(
            orjson.dumps(
                {
                    "record": "outcome",
                    "outcome": self.outcome,
                    "failure": self.failure,
                    "statistics": self.statistics.model_dump(mode="json"),
                }
            )
        )
        return b"\n".join(lines) + b"\n"


def transcript_problems(transcript: ProtocolTranscript) -> list[str]:
    """List violations of the message discipline in a transcript.

    Checked: no field named ``language_bit`` in any message before the
    oracle reply, and exactly two quantum transfers (prover to verifier,
    verifier to oracle) whenever no abort happened.

    Parameters
    ----------
    transcript : ProtocolTranscript
        The transcript.

    Returns
    -------
    list[str]
        Human-readable problems; empty when the transcript is clean.
    """
    problems = []
    for message in transcript.messages:
        if message.kind == "oracle_reply":
            break
        if "language_bit" in message.model_dump():
            problems.append(f"{message.kind} leaks the language bit")
    transfers = [
        (m.sender, m.receiver)
        for m in transcript.messages
        if m.kind == "quantum_transfer"
    ]
    aborted = any(m.kind == "prover_abort" for m in transcript.messages)
    expected = [] if aborted else [("merlin", "arthur"), ("arthur", "oracle")]
    if transfers != expected:
        problems.append(f"unexpected quantum transfers {transfers}")
    return problems
