# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Controlled rotations and phases read off a binary-fraction register."""

import math
from typing import Annotated

import numpy as np
from pydantic import Field, TypeAdapter

from qwitness.sim import Circuit, ComplexArray, GateKind, GateOp, gate_matrix

PrecisionBits = Annotated[int, Field(ge=1, le=64)]
"""Binary digits kept per angle."""

_precision = TypeAdapter(PrecisionBits)


def check_precision(bits: int) -> int:
    """Validate a digit count.

    Parameters
    ----------
    bits : int
        The count.

    Returns
    -------
    int
        The count.

    Raises
    ------
    ValueError
        If it is outside ``1..64``.
    """
    return _precision.validate_python(bits)


def precision_for_error(epsilon: float) -> int:
    """Return the digit count ``ceil(1/epsilon)``.

    Parameters
    ----------
    epsilon : float
        Target error in ``(0, 1]``.

    Returns
    -------
    int
        The digit count.

    Raises
    ------
    ValueError
        If ``epsilon`` is out of range or the count exceeds 64.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must be in (0, 1], got {epsilon}")
    return check_precision(math.ceil(1.0 / epsilon))


def build_crot(bits: int) -> Circuit:
    """Build the rotation controlled by a ``bits``-digit fraction.

    Qubits ``0..bits-1`` hold ``0.b`` (most significant first) and the
    last qubit is the target. The circuit maps ``|b>|0>`` to
    ``|b>(cos(pi 0.b / 2)|0> + sin(pi 0.b / 2)|1>)``.

    Parameters
    ----------
    bits : int
        Digit count.

    Returns
    -------
    Circuit
        ``bits`` controlled sub-rotations on ``bits + 1`` qubits.
    """
    bits = check_precision(bits)
    return Circuit(
        width=bits + 1,
        ops=tuple(
            GateOp(kind=GateKind.CROT, targets=(j, bits), bit=j)
            for j in range(bits)
        ),
    )


def build_cph(bits: int) -> Circuit:
    """Build the phase ``exp(2 pi i 0.b)`` on a ``bits``-digit register.

    Parameters
    ----------
    bits : int
        Digit count.

    Returns
    -------
    Circuit
        One single-qubit phase per digit.
    """
    bits = check_precision(bits)
    return Circuit(
        width=bits,
        ops=tuple(
            GateOp(kind=GateKind.CPH, targets=(j,), bit=j)
            for j in range(bits)
        ),
    )


def controlled_action(circuit: Circuit, control: str) -> ComplexArray:
    """Return what a precision circuit does once its register is classical.

    With the fraction register fixed to the basis string ``control``
    the rotation circuit acts on its target alone and the phase circuit
    multiplies by a scalar. Composing the per-digit blocks avoids a
    dense vector over all ``bits + 1`` qubits.

    Parameters
    ----------
    circuit : Circuit
        A circuit from :func:`build_crot` or :func:`build_cph`.
    control : str
        The digits held by the fraction register.

    Returns
    -------
    ComplexArray
        ``2 x 2`` for rotations, ``1 x 1`` for phases.

    Raises
    ------
    ValueError
        If the circuit holds other gates or the digit count differs.
    """
    rotation = circuit.width == len(control) + 1
    if not rotation and circuit.width != len(control):
        raise ValueError(
            f"{len(control)} digits do not fit width {circuit.width}"
        )
    action = np.eye(2 if rotation else 1, dtype=np.complex128)
    for op in circuit.ops:
        if op.kind not in (GateKind.CROT, GateKind.CPH):
            raise ValueError(f"{op.kind} is not a precision gate")
        if control[op.targets[0]] != "1":
            continue
        matrix = gate_matrix(op.kind, op.bit)
        block = matrix[2:, 2:] if op.kind is GateKind.CROT else matrix[1:, 1:]
        action = block @ action
    return action
