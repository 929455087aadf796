# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Test cases for protocol messages, payload handles and transcripts."""

# pylint: disable=missing-function-docstring,missing-param-doc
import orjson
import pytest
from pydantic import ValidationError

from qwitness.errors import NoCloningError
from qwitness.protocol import (
    ClassicalBroadcast,
    Decision,
    OracleReply,
    ProblemInstance,
    ProtocolTranscript,
    ProverAbort,
    QuantumPayload,
    QuantumTransfer,
    TranscriptHeader,
    TranscriptStatistics,
    decode_message,
    encode_message,
    transcript_problems,
)
from qwitness.sim import Circuit, GateKind, GateOp, ProductState, PureState


def _transfer(sender: str, receiver: str) -> QuantumTransfer:
    return QuantumTransfer(
        sender=sender,
        receiver=receiver,
        payload_id="abc",
        n_qubits=5,
        block_widths=[2, 2, 1],
    )


def _transcript(*messages: object) -> ProtocolTranscript:
    return ProtocolTranscript(
        header=TranscriptHeader(
            n=2, kappa=5 / 6, depth=4, merlin_kind="honest"
        ),
        messages=list(messages),
        statistics=TranscriptStatistics(language_bit=True),
    )


def test_broadcast_survives_the_wire() -> None:
    circuit = Circuit(
        width=2, ops=(GateOp(kind=GateKind.H, targets=(0,)),)
    )
    message = ClassicalBroadcast(
        sender="server",
        receiver="all",
        n=1,
        kappa=1.0,
        circuits=[circuit],
        outcomes=["1"],
    )
    decoded = decode_message(encode_message(message))
    assert isinstance(decoded, ClassicalBroadcast)
    assert decoded == message


def test_decode_dispatches_on_kind() -> None:
    decision = Decision(sender="arthur", receiver="all", accept=True)
    data = encode_message(decision)
    assert isinstance(decode_message(data), Decision)
    with pytest.raises(ValidationError):
        decode_message(b'{"kind": "gossip", "sender": "merlin"}')
    with pytest.raises(ValidationError):
        decode_message(
            b'{"kind": "decision", "sender": "arthur", "receiver": "all",'
            b' "accept": true, "language_bit": true}'
        )


def test_unknown_roles_are_rejected() -> None:
    with pytest.raises(ValidationError):
        ProblemInstance(sender="eve", receiver="all", n=2)


def test_payload_moves_once() -> None:
    payload = QuantumPayload(ProductState((PureState.zero(2),)))
    assert payload.n_qubits == 2
    assert payload.block_widths == [2]
    register = payload.take()
    assert payload.taken
    assert register.n_qubits == 2
    with pytest.raises(NoCloningError):
        payload.take()
    other = QuantumPayload(ProductState((PureState.zero(1),)))
    assert other.payload_id != payload.payload_id


def test_clean_transcript() -> None:
    transcript = _transcript(
        ProblemInstance(sender="server", receiver="all", n=2),
        _transfer("merlin", "arthur"),
        _transfer("arthur", "oracle"),
        OracleReply(sender="oracle", receiver="arthur", bit=1),
        Decision(sender="arthur", receiver="all", accept=True),
    )
    assert transcript_problems(transcript) == []


def test_abort_needs_no_transfers() -> None:
    transcript = _transcript(
        ProverAbort(sender="merlin", receiver="arthur", reason="budget"),
        Decision(sender="arthur", receiver="all", accept=False),
    )
    assert transcript_problems(transcript) == []


def test_extra_transfer_is_flagged() -> None:
    transcript = _transcript(
        _transfer("merlin", "arthur"),
        _transfer("merlin", "oracle"),
    )
    problems = transcript_problems(transcript)
    assert len(problems) == 1
    assert "unexpected quantum transfers" in problems[0]


def test_jsonl_layout() -> None:
    transcript = _transcript(
        ProblemInstance(sender="server", receiver="all", n=2),
        Decision(sender="arthur", receiver="all", accept=False),
    )
    lines = transcript.to_jsonl().splitlines()
    records = [orjson.loads(line) for line in lines]
    assert len(records) == 4
    assert records[0]["record"] == "header"
    assert [r["kind"] for r in records[1:3]] == ["problem_instance", "decision"]
    assert records[-1]["record"] == "outcome"
    assert records[-1]["outcome"] == "reject"
    assert records[-1]["statistics"]["language_bit"] is True
    assert not transcript.accepted
