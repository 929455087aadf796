# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""The four parties as asyncio actors exchanging serialized messages."""

import asyncio
import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from qwitness.config import settings
from qwitness.oracles import ChannelOracle, apply_channel
from qwitness.rng import derive_rng, spawn

from ._merlin import (
    MerlinFailure,
    apply_block_noise,
    canonical_strategy,
    merlin_dishonest,
    merlin_honest,
)
from ._messages import (
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
from ._server import ServerRecord, broadcast, server_generate

logger = logging.getLogger(__name__)

ROLES = ("server", "merlin", "arthur", "oracle")

Envelope = tuple[bytes, QuantumPayload | None]


class _Network:
    """In-process transport: one ordered queue per party.

    Every message crosses the serialization boundary, and the decoded
    copy is what the receiver and the transcript see.
    """

    def __init__(self) -> None:
        self.queues: dict[str, asyncio.Queue[Envelope]] = {
            role: asyncio.Queue() for role in ROLES
        }
        self.log: list[Any] = []

    async def send(
        self, message: Any, payload: QuantumPayload | None = None
    ) -> None:
        data = encode_message(message)
        self.log.append(decode_message(data))
        if message.receiver == "all":
            receivers = [role for role in ROLES if role != message.sender]
        else:
            receivers = [message.receiver]
        for role in receivers:
            await self.queues[role].put((data, payload))

    async def receive(self, role: str) -> tuple[Any, QuantumPayload | None]:
        data, payload = await self.queues[role].get()
        return decode_message(data), payload

    async def expect(
        self, role: str, *kinds: str
    ) -> tuple[Any, QuantumPayload | None]:
        """Wait for the next message of one of ``kinds``, skipping others."""
        while True:
            message, payload = await self.receive(role)
            if message.kind in kinds:
                return message, payload


@dataclass
class _RunState:
    record: ServerRecord | None = None
    attempts: list[int] = field(default_factory=list)
    shots_used: int = 0
    failure: str | None = None
    passes: int | None = None
    threshold: int | None = None
    flipped: bool | None = None
    accept_probability: float | None = None
    noisy_blocks: int = 0
    accept: bool = False


@dataclass(frozen=True)
class _Streams:
    server: np.random.Generator
    merlin: np.random.Generator
    noise: np.random.Generator
    channel: np.random.Generator
    arthur: np.random.Generator

    @classmethod
    def split(cls, rng: np.random.Generator) -> "_Streams":
        return cls(
            server=spawn(rng, "server"),
            merlin=spawn(rng, "merlin"),
            noise=spawn(rng, "noise"),
            channel=spawn(rng, "channel"),
            arthur=spawn(rng, "arthur"),
        )


async def _server(
    net: _Network,
    state: _RunState,
    n: int,
    depth: int,
    kappa: float,
    rng: np.random.Generator,
    language_bit: bool | None,
) -> None:
    record = server_generate(n, depth, kappa, rng, language_bit=language_bit)
    state.record = record
    await net.send(ProblemInstance(sender="server", receiver="all", n=n))
    await net.send(broadcast(record))


async def _merlin(
    net: _Network,
    state: _RunState,
    strategy: str,
    shot_budget: int,
    noise: float,
    streams: _Streams,
) -> None:
    message, _ = await net.expect("merlin", "classical_broadcast")
    if strategy == "honest":
        witness = merlin_honest(message, shot_budget, streams.merlin)
    else:
        witness = merlin_dishonest(strategy, message, streams.merlin)
    if isinstance(witness, MerlinFailure):
        state.attempts = list(witness.attempts)
        state.shots_used = witness.shots_used
        state.failure = witness.reason
        await net.send(
            ProverAbort(
                sender="merlin", receiver="arthur", reason=witness.reason
            )
        )
        return
    state.attempts = list(witness.attempts)
    state.shots_used = witness.shots_used
    payload = witness.payload
    if noise > 0.0 and state.record is not None:
        register, state.noisy_blocks = apply_block_noise(
            payload.take(), state.record.marked, noise, streams.noise
        )
        payload = QuantumPayload(register)
    await net.send(
        QuantumTransfer(
            sender="merlin",
            receiver="arthur",
            payload_id=payload.payload_id,
            n_qubits=payload.n_qubits,
            block_widths=payload.block_widths,
        ),
        payload,
    )


async def _arthur(
    net: _Network, state: _RunState, rng: np.random.Generator
) -> None:
    message, payload = await net.expect(
        "arthur", "quantum_transfer", "prover_abort"
    )
    if message.kind == "prover_abort" or payload is None:
        await net.send(
            Decision(
                sender="arthur",
                receiver="all",
                accept=False,
                reason=f"no witness: {getattr(message, 'reason', '')}",
            )
        )
        return
    forwarded = QuantumPayload(payload.take())
    await net.send(
        QuantumTransfer(
            sender="arthur",
            receiver="oracle",
            payload_id=forwarded.payload_id,
            n_qubits=forwarded.n_qubits,
            block_widths=forwarded.block_widths,
        ),
        forwarded,
    )
    reply, _ = await net.expect("arthur", "oracle_reply")
    if reply.bit is not None:
        bit = reply.bit
    else:
        bit = int(rng.random() < (reply.qubit_p1 or 0.0))
    state.accept = bit == 1
    await net.send(
        Decision(
            sender="arthur",
            receiver="all",
            accept=state.accept,
            reason=f"answer bit {bit}",
        )
    )


async def _oracle(
    net: _Network,
    state: _RunState,
    classical_reply: bool,
    rng: np.random.Generator,
) -> None:
    message, payload = await net.expect(
        "oracle", "quantum_transfer", "decision"
    )
    if message.kind == "decision" or payload is None:
        return
    record = state.record
    if record is None:  # pragma: no cover
        raise RuntimeError("oracle received a witness before the server ran")
    oracle = ChannelOracle(
        record.marked,
        kappa=record.kappa,
        language_bit=record.language_bit,
        rng=rng,
        classical_reply=classical_reply,
    )
    register = payload.take()
    state.accept_probability = oracle.flip_probability(register.blocks[:-1])
    reply = apply_channel(oracle, register)
    state.passes = reply.passes
    state.threshold = reply.threshold
    state.flipped = reply.flipped
    qubit_p1 = None
    if reply.qubit is not None:
        qubit_p1 = float(np.clip(reply.qubit.matrix[1, 1].real, 0.0, 1.0))
    await net.send(
        OracleReply(
            sender="oracle", receiver="arthur", bit=reply.bit, qubit_p1=qubit_p1
        )
    )


async def run_protocol_async(
    n: int,
    depth: int,
    kappa: float,
    merlin_kind: str,
    rng: np.random.Generator,
    *,
    shot_budget: int | None = None,
    noise: float = 0.0,
    classical_reply: bool = True,
    language_bit: bool | None = None,
    seed: int | None = None,
) -> ProtocolTranscript:
    """Run one protocol instance with every party as its own task.

    Parameters
    ----------
    n : int
        Instance length.
    depth : int
        Gates per server circuit.
    kappa : float
        Pass fraction for the channel.
    merlin_kind : str
        ``honest``, ``haar``, ``vacuum`` or ``permuted`` (or an alias).
    rng : np.random.Generator
        The run's stream; each party gets its own child stream.
    shot_budget : int | None, optional
        Honest prover budget, by default ``settings.shot_budget``.
    noise : float, optional
        Per-block fidelity loss on the witness, by default 0.
    classical_reply : bool, optional
        Whether the oracle returns a bit instead of a qubit,
        by default True.
    language_bit : bool | None, optional
        Fix membership instead of flipping the server's coin.
    seed : int | None, optional
        Seed echoed in the transcript header.

    Returns
    -------
    ProtocolTranscript
        The transcript; a prover failure shows up as a reject with
        the failure cause.
    """
    strategy = canonical_strategy(merlin_kind)
    budget = settings.shot_budget if shot_budget is None else shot_budget
    streams = _Streams.split(rng)
    net = _Network()
    state = _RunState()
    await asyncio.gather(
        _server(net, state, n, depth, kappa, streams.server, language_bit),
        _merlin(net, state, strategy, budget, noise, streams),
        _arthur(net, state, streams.arthur),
        _oracle(net, state, classical_reply, streams.channel),
    )
    record = state.record
    if record is None:  # pragma: no cover
        raise RuntimeError("server did not produce a record")
    transcript = ProtocolTranscript(
        header=TranscriptHeader(
            n=n,
            kappa=kappa,
            depth=depth,
            merlin_kind=strategy,
            seed=seed,
            noise=noise,
            classical_reply=classical_reply,
        ),
        messages=net.log,
        outcome="accept" if state.accept else "reject",
        failure=state.failure,
        statistics=TranscriptStatistics(
            language_bit=record.language_bit,
            merlin_attempts=state.attempts,
            shots_used=state.shots_used,
            passes=state.passes,
            threshold=state.threshold,
            flipped=state.flipped,
            accept_probability=state.accept_probability,
            noisy_blocks=state.noisy_blocks,
        ),
    )
    for problem in transcript_problems(transcript):
        logger.warning("transcript problem: %s", problem)
    logger.debug(
        "protocol n=%d merlin=%s outcome=%s", n, strategy, transcript.outcome
    )
    return transcript


def run_protocol(
    n: int,
    depth: int,
    kappa: float,
    merlin_kind: str,
    rng: np.random.Generator,
    **kwargs: Any,
) -> ProtocolTranscript:
    """Run one protocol instance on a fresh event loop.

    See ``run_protocol_async`` for the parameters.

    Returns
    -------
    ProtocolTranscript
        The transcript.
    """
    return asyncio.run(
        run_protocol_async(n, depth, kappa, merlin_kind, rng, **kwargs)
    )


async def run_transcripts(
    n: int,
    depth: int,
    kappa: float,
    merlin_kind: str,
    seed: int,
    trials: int,
    **kwargs: Any,
) -> list[ProtocolTranscript]:
    """Run many independent instances concurrently.

    Trial ``t`` draws from ``derive_rng(seed, t, "protocol")``, so the
    result does not depend on scheduling.

    Parameters
    ----------
    n : int
        Instance length.
    depth : int
        Gates per server circuit.
    kappa : float
        Pass fraction.
    merlin_kind : str
        Prover strategy.
    seed : int
        Master seed.
    trials : int
        Number of transcripts.
    **kwargs : Any
        Forwarded to ``run_protocol_async``.

    Returns
    -------
    list[ProtocolTranscript]
        Transcripts in trial order.
    """
    return list(
        await asyncio.gather(
            *(
                run_protocol_async(
                    n,
                    depth,
                    kappa,
                    merlin_kind,
                    derive_rng(seed, trial, "protocol"),
                    seed=seed,
                    **kwargs,
                )
                for trial in range(trials)
            )
        )
    )
