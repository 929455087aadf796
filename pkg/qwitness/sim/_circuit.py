# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Gate operations, circuits and their statevector action."""

# pylint: disable=too-few-public-methods
from enum import StrEnum
from functools import lru_cache
from typing import Any, Iterable, Sequence

import numpy as np
import numpy.typing as npt
import orjson
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._state import ComplexArray, PureState


class GateKind(StrEnum):
    """Gate kinds known to the simulator.

    ``CROT`` and ``CPH`` are the bit-indexed sub-gates of the
    precision rotation and phase circuits. ``CSWAP`` swaps two
    equal-width blocks conditioned on a control qubit.
    """

    H = "H"
    T = "T"
    X = "X"
    Z = "Z"
    CNOT = "CNOT"
    CROT = "CROT"
    CPH = "CPH"
    CSWAP = "CSWAP"


ENUMERABLE_KINDS = (
    GateKind.H,
    GateKind.T,
    GateKind.X,
    GateKind.Z,
    GateKind.CNOT,
)
"""Kinds that may appear in a gate set for random or enumerated circuits."""

KIND_RANK = {kind: rank for rank, kind in enumerate(GateKind)}

_ARITY = {
    GateKind.H: 1,
    GateKind.T: 1,
    GateKind.X: 1,
    GateKind.Z: 1,
    GateKind.CNOT: 2,
    GateKind.CROT: 2,
    GateKind.CPH: 1,
}


def arity(kind: GateKind) -> int:
    """Return the number of targets of a fixed-arity gate kind.

    Parameters
    ----------
    kind : GateKind
        The kind.

    Returns
    -------
    int
        The arity.

    Raises
    ------
    ValueError
        For ``CSWAP``, whose arity depends on the block width.
    """
    if kind is GateKind.CSWAP:
        raise ValueError("CSWAP has a block-dependent arity")
    return _ARITY[kind]


class GateOp(BaseModel):
    """One gate applied to an ordered tuple of qubits.

    For controlled kinds the control comes first. ``bit`` is the
    0-based position within a binary fraction for ``CROT`` and ``CPH``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: GateKind = Field(..., description="The gate kind")
    targets: tuple[int, ...] = Field(..., description="Qubit indices")
    bit: int | None = Field(
        None, description="Fraction bit index for CROT/CPH", ge=0
    )

    @model_validator(mode="after")
    def _check(self) -> "GateOp":
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated targets in {self.targets}")
        if any(t < 0 for t in self.targets):
            raise ValueError(f"negative target in {self.targets}")
        if self.kind is GateKind.CSWAP:
            if len(self.targets) < 3 or len(self.targets) % 2 == 0:
                raise ValueError("CSWAP needs a control and two equal blocks")
        elif len(self.targets) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_ARITY[self.kind]} targets, "
                f"got {len(self.targets)}"
            )
        parameterized = self.kind in (GateKind.CROT, GateKind.CPH)
        if parameterized != (self.bit is not None):
            raise ValueError("bit index is required only for CROT/CPH")
        return self

    def sort_key(self) -> tuple[int, tuple[int, ...], int]:
        """Return the (kind rank, targets, bit) ordering key."""
        return (KIND_RANK[self.kind], self.targets, self.bit or 0)


class Circuit(BaseModel):
    """An ordered gate sequence on a register of ``width`` qubits."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    width: int = Field(..., description="Register width", ge=1)
    ops: tuple[GateOp, ...] = Field(default=(), description="Gates in order")

    @model_validator(mode="after")
    def _check_targets(self) -> "Circuit":
        for op in self.ops:
            if max(op.targets) >= self.width:
                raise ValueError(
                    f"{op.kind}{op.targets} outside width {self.width}"
                )
        return self

    def __len__(self) -> int:
        """Return the gate count."""
        return len(self.ops)

    def then(self, *ops: GateOp) -> "Circuit":
        """Return a copy with ``ops`` appended.

        Parameters
        ----------
        *ops : GateOp
            Gates to append.

        Returns
        -------
        Circuit
            The extended circuit.
        """
        return Circuit(width=self.width, ops=self.ops + tuple(ops))

    def to_json(self) -> bytes:
        """Serialize as a JSON array of ``{kind, targets, bit?}``.

        Returns
        -------
        bytes
            The JSON document.
        """
        return orjson.dumps(self.op_dicts())

    def op_dicts(self) -> list[dict[str, Any]]:
        """Return the ops as plain dicts, omitting unset bit indices.

        Returns
        -------
        list[dict[str, Any]]
            One dict per gate.
        """
        return [
            op.model_dump(mode="json", exclude_none=True) for op in self.ops
        ]

    @classmethod
    def from_json(cls, width: int, data: bytes | str) -> "Circuit":
        """Parse the array produced by :meth:`to_json`.

        Parameters
        ----------
        width : int
            The register width.
        data : bytes | str
            The JSON array.

        Returns
        -------
        Circuit
            The circuit.
        """
        return cls(width=width, ops=tuple(orjson.loads(data)))


@lru_cache(maxsize=256)
def gate_matrix(kind: GateKind, bit: int | None = None) -> ComplexArray:
    """Return the dense matrix of a fixed-arity gate.

    Parameters
    ----------
    kind : GateKind
        The kind.
    bit : int | None, optional
        The fraction bit index for ``CROT``/``CPH``.

    Returns
    -------
    ComplexArray
        A read-only ``2^a x 2^a`` matrix.

    Raises
    ------
    ValueError
        For ``CSWAP``, which is applied by index permutation.
    """
    if kind is GateKind.H:
        matrix = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    elif kind is GateKind.T:
        matrix = np.diag([1, np.exp(1j * np.pi / 4)])
    elif kind is GateKind.X:
        matrix = np.array([[0, 1], [1, 0]])
    elif kind is GateKind.Z:
        matrix = np.diag([1, -1])
    elif kind is GateKind.CNOT:
        matrix = np.eye(4)[[0, 1, 3, 2]]
    elif kind is GateKind.CROT:
        # bit j of 0.b contributes pi * 2^-(j+1) / 2 to the rotation angle
        theta = np.pi / 2 ** ((bit or 0) + 2)
        cos, sin = np.cos(theta), np.sin(theta)
        matrix = np.eye(4)
        matrix[2:, 2:] = [[cos, -sin], [sin, cos]]
    elif kind is GateKind.CPH:
        matrix = np.diag([1, np.exp(2j * np.pi / 2 ** ((bit or 0) + 1))])
    else:
        raise ValueError(f"{kind} has no dense matrix")
    result = np.asarray(matrix, dtype=np.complex128)
    result.setflags(write=False)
    return result


def apply_matrix(
    amplitudes: ComplexArray,
    matrix: npt.ArrayLike,
    targets: Sequence[int],
) -> ComplexArray:
    """Contract a ``2^k x 2^k`` matrix into the given qubit axes.

    Parameters
    ----------
    amplitudes : ComplexArray
        The flat amplitude vector of ``n`` qubits.
    matrix : npt.ArrayLike
        The gate matrix, first target most significant.
    targets : Sequence[int]
        The ``k`` target qubits.

    Returns
    -------
    ComplexArray
        The new flat amplitude vector.
    """
    n_qubits = amplitudes.size.bit_length() - 1
    k = len(targets)
    tensor = np.asarray(matrix, dtype=np.complex128).reshape((2,) * (2 * k))
    psi = amplitudes.reshape((2,) * n_qubits)
    contracted = (list(range(k, 2 * k)), list(targets))
    psi = np.tensordot(tensor, psi, axes=contracted)
    psi = np.moveaxis(psi, list(range(k)), list(targets))
    return np.ascontiguousarray(psi).reshape(-1)


def apply_controlled_swap(
    amplitudes: ComplexArray,
    control: int,
    block_a: Sequence[int],
    block_b: Sequence[int],
) -> ComplexArray:
    """Swap two qubit blocks on the branch where ``control`` is 1.

    Parameters
    ----------
    amplitudes : ComplexArray
        The flat amplitude vector.
    control : int
        The control qubit.
    block_a : Sequence[int]
        First block.
    block_b : Sequence[int]
        Second block, same width as ``block_a``.

    Returns
    -------
    ComplexArray
        The new flat amplitude vector.
    """
    n_qubits = amplitudes.size.bit_length() - 1
    psi = amplitudes.reshape((2,) * n_qubits).copy()
    order = list(range(n_qubits))
    for a, b in zip(block_a, block_b):
        order[a], order[b] = order[b], order[a]
    index: list[Any] = [slice(None)] * n_qubits
    index[control] = 1
    branch = psi[tuple(index)]
    # the control axis is gone from the slice
    axes = [q - (q > control) for q in order if q != control]
    psi[tuple(index)] = np.transpose(branch, axes)
    return psi.reshape(-1)


def apply_op(amplitudes: ComplexArray, op: GateOp) -> ComplexArray:
    """Apply one gate to a flat amplitude vector.

    Parameters
    ----------
    amplitudes : ComplexArray
        The amplitudes.
    op : GateOp
        The gate.

    Returns
    -------
    ComplexArray
        The new amplitudes.
    """
    if op.kind is GateKind.CSWAP:
        half = (len(op.targets) - 1) // 2
        return apply_controlled_swap(
            amplitudes,
            op.targets[0],
            op.targets[1 : 1 + half],
            op.targets[1 + half :],
        )
    return apply_matrix(amplitudes, gate_matrix(op.kind, op.bit), op.targets)


def apply_circuit(state: PureState, circuit: Circuit) -> PureState:
    """Return the image of ``state`` under ``circuit``.

    Parameters
    ----------
    state : PureState
        The input.
    circuit : Circuit
        The circuit, of the same width.

    Returns
    -------
    PureState
        The output.

    Raises
    ------
    ValueError
        If the widths differ.
    """
    if circuit.width != state.n_qubits:
        raise ValueError(
            f"circuit width {circuit.width} != state width {state.n_qubits}"
        )
    amplitudes = state.amplitudes
    for op in circuit.ops:
        amplitudes = apply_op(amplitudes, op)
    return PureState(amplitudes)


def apply_ops(state: PureState, ops: Iterable[GateOp]) -> PureState:
    """Apply loose gates without building a circuit.

    Parameters
    ----------
    state : PureState
        The input.
    ops : Iterable[GateOp]
        The gates.

    Returns
    -------
    PureState
        The output.
    """
    return apply_circuit(state, Circuit(width=state.n_qubits, ops=tuple(ops)))


def hadamard_all(
    state: PureState, qubits: Sequence[int] | None = None
) -> PureState:
    """Apply ``H`` to every listed qubit (all by default).

    Parameters
    ----------
    state : PureState
        The input.
    qubits : Sequence[int] | None, optional
        The qubits, by default all of them.

    Returns
    -------
    PureState
        The output.
    """
    targets = range(state.n_qubits) if qubits is None else qubits
    ops = (GateOp(kind=GateKind.H, targets=(q,)) for q in targets)
    return apply_ops(state, ops)


def parse_gate_set(gate_set: Iterable[str | GateKind]) -> tuple[GateKind, ...]:
    """Validate a gate set for random or enumerated circuits.

    Parameters
    ----------
    gate_set : Iterable[str | GateKind]
        Kind names.

    Returns
    -------
    tuple[GateKind, ...]
        Distinct kinds in rank order.

    Raises
    ------
    ValueError
        If the set is empty or names a parameterized kind.
    """
    kinds = {GateKind(str(kind).upper()) for kind in gate_set}
    if not kinds:
        raise ValueError("gate set is empty")
    bad = kinds.difference(ENUMERABLE_KINDS)
    if bad:
        raise ValueError(f"gate set may not contain {sorted(bad)}")
    return tuple(sorted(kinds, key=KIND_RANK.__getitem__))


def random_circuit(
    n_qubits: int,
    depth: int,
    rng: np.random.Generator,
    gate_set: Iterable[str | GateKind] = ("H", "T", "CNOT"),
) -> Circuit:
    """Draw ``depth`` uniformly random gates on distinct random targets.

    Parameters
    ----------
    n_qubits : int
        The width.
    depth : int
        The gate count.
    rng : np.random.Generator
        The random stream.
    gate_set : Iterable[str | GateKind], optional
        Allowed kinds, by default ``H, T, CNOT``.

    Returns
    -------
    Circuit
        The circuit.

    Raises
    ------
    ValueError
        If the parameters are out of range or no kind fits the width.
    """
    if n_qubits < 1 or depth < 0:
        raise ValueError(
            f"need n >= 1 and depth >= 0, got {n_qubits}, {depth}"
        )
    kinds = [k for k in parse_gate_set(gate_set) if _ARITY[k] <= n_qubits]
    if not kinds:
        raise ValueError(f"no gate in the set fits {n_qubits} qubit(s)")
    ops = []
    for _ in range(depth):
        kind = kinds[int(rng.integers(len(kinds)))]
        picked = rng.choice(n_qubits, size=_ARITY[kind], replace=False)
        ops.append(GateOp(kind=kind, targets=tuple(int(q) for q in picked)))
    return Circuit(width=n_qubits, ops=tuple(ops))
