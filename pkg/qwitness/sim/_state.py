# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Immutable state and operator values."""

# pylint: disable=too-many-public-methods
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np
import numpy.typing as npt

from qwitness.config import settings
from qwitness.errors import CapacityError

ComplexArray = npt.NDArray[np.complex128]


def check_capacity(n_qubits: int) -> None:
    """Raise if a dense register of ``n_qubits`` is above the cap.

    Parameters
    ----------
    n_qubits : int
        The register width.

    Raises
    ------
    CapacityError
        If the width exceeds ``settings.max_qubits``.
    """
    if n_qubits > settings.max_qubits:
        raise CapacityError(n_qubits, settings.max_qubits)


def _qubits_for(dim: int, what: str) -> int:
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"{what} dimension must be a power of two, got {dim}")
    return dim.bit_length() - 1


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized amplitude vector over ``n_qubits`` qubits.

    Qubit 0 is the most significant bit of the basis index, so the
    basis string ``"b0 b1 ... b(n-1)"`` reads left to right.
    """

    amplitudes: ComplexArray
    n_qubits: int = field(init=False)

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        amplitudes = amplitudes.reshape(-1)
        n_qubits = _qubits_for(amplitudes.size, "state")
        check_capacity(n_qubits)
        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm_sq - 1.0) > settings.tolerance:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "n_qubits", n_qubits)

    @classmethod
    def from_amplitudes(cls, amplitudes: npt.ArrayLike) -> "PureState":
        """Build a state, normalizing the given vector first.

        Parameters
        ----------
        amplitudes : npt.ArrayLike
            Unnormalized amplitudes.

        Returns
        -------
        PureState
            The normalized state.

        Raises
        ------
        ValueError
            If the vector is zero.
        """
        vector = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(vector / norm)

    @classmethod
    def basis(cls, n_qubits: int, index: int = 0) -> "PureState":
        """Return the computational basis state ``|index>``.

        Parameters
        ----------
        n_qubits : int
            The width.
        index : int, optional
            The basis index, by default 0.

        Returns
        -------
        PureState
            The basis state.

        Raises
        ------
        ValueError
            If the width or index is out of range.
        """
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
        check_capacity(n_qubits)
        if not 0 <= index < 2**n_qubits:
            raise ValueError(f"basis index {index} out of range")
        vector = np.zeros(2**n_qubits, dtype=np.complex128)
        vector[index] = 1.0
        return cls(vector)

    @classmethod
    def zero(cls, n_qubits: int) -> "PureState":
        """Return ``|0...0>``.

        Parameters
        ----------
        n_qubits : int
            The width.

        Returns
        -------
        PureState
            The all-zero state.
        """
        return cls.basis(n_qubits, 0)

    @classmethod
    def from_bitstring(cls, bits: str) -> "PureState":
        """Return the basis state spelled by ``bits``.

        Parameters
        ----------
        bits : str
            A non-empty string over ``{0, 1}``.

        Returns
        -------
        PureState
            The basis state.

        Raises
        ------
        ValueError
            If the string is empty or not binary.
        """
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {bits!r}")
        return cls.basis(len(bits), int(bits, 2))

    @classmethod
    def from_payload(cls, payload: Sequence[float]) -> "PureState":
        """Rebuild a state from interleaved real/imaginary parts.

        Parameters
        ----------
        payload : Sequence[float]
            ``[re0, im0, re1, im1, ...]``.

        Returns
        -------
        PureState
            The state.

        Raises
        ------
        ValueError
            If the payload has odd length.
        """
        values = np.asarray(payload, dtype=np.float64)
        if values.size % 2:
            raise ValueError("interleaved payload must have even length")
        return cls(values[0::2] + 1j * values[1::2])

    def to_payload(self) -> list[float]:
        """Serialize as interleaved real/imaginary parts.

        Returns
        -------
        list[float]
            ``[re0, im0, re1, im1, ...]``.
        """
        interleaved = np.empty(2 * self.dim, dtype=np.float64)
        interleaved[0::2] = self.amplitudes.real
        interleaved[1::2] = self.amplitudes.imag
        return interleaved.tolist()

    @property
    def dim(self) -> int:
        """Return the Hilbert-space dimension."""
        return int(self.amplitudes.size)

    def inner(self, other: "PureState") -> complex:
        """Return ``<self|other>``.

        Parameters
        ----------
        other : PureState
            The ket.

        Returns
        -------
        complex
            The inner product.

        Raises
        ------
        ValueError
            If the widths differ.
        """
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"width mismatch: {self.n_qubits} vs {other.n_qubits}"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def tensor(self, *others: "PureState") -> "PureState":
        """Return ``self ⊗ others[0] ⊗ ...``.

        Parameters
        ----------
        *others : PureState
            Factors to append on the right (higher qubit indices).

        Returns
        -------
        PureState
            The product state.
        """
        check_capacity(self.n_qubits + sum(o.n_qubits for o in others))
        vector = reduce(
            np.kron, (o.amplitudes for o in others), self.amplitudes
        )
        return PureState(vector)

    def probabilities(self) -> npt.NDArray[np.float64]:
        """Return the Born probabilities in the computational basis.

        Returns
        -------
        npt.NDArray[np.float64]
            ``|amplitude|^2`` per basis index.
        """
        return np.abs(self.amplitudes) ** 2

    def density(self) -> "DensityOperator":
        """Return ``|self><self|``.

        Returns
        -------
        DensityOperator
            The projector.
        """
        psi = self.amplitudes
        return DensityOperator(np.outer(psi, psi.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A Hermitian, positive, unit-trace matrix over ``n_qubits`` qubits."""

    matrix: ComplexArray
    n_qubits: int = field(init=False)

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"density matrix must be square: {matrix.shape}")
        n_qubits = _qubits_for(matrix.shape[0], "density")
        check_capacity(n_qubits)
        tol = settings.tolerance
        if np.max(np.abs(matrix - matrix.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(matrix).real - 1.0) > tol:
            raise ValueError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(matrix).min() < -tol:
            raise ValueError("density matrix is not positive semidefinite")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "n_qubits", n_qubits)

    @property
    def dim(self) -> int:
        """Return the Hilbert-space dimension."""
        return int(self.matrix.shape[0])

    def expectation(self, state: PureState) -> float:
        """Return ``<psi|rho|psi>``.

        Parameters
        ----------
        state : PureState
            The pure state.

        Returns
        -------
        float
            The expectation value.

        Raises
        ------
        ValueError
            If the widths differ.
        """
        if state.n_qubits != self.n_qubits:
            raise ValueError(
                f"width mismatch: {self.n_qubits} vs {state.n_qubits}"
            )
        psi = state.amplitudes
        return float(np.vdot(psi, self.matrix @ psi).real)


@dataclass(frozen=True, eq=False)
class Unitary:
    """A dense unitary matrix on ``n_qubits`` qubits."""

    matrix: ComplexArray
    n_qubits: int = field(init=False)

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"unitary must be square: {matrix.shape}")
        n_qubits = _qubits_for(matrix.shape[0], "unitary")
        check_capacity(n_qubits)
        identity = np.eye(len(matrix))
        deviation = np.max(np.abs(matrix.conj().T @ matrix - identity))
        if deviation > 1e-8:
            raise ValueError(f"matrix is not unitary (deviation {deviation})")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "n_qubits", n_qubits)

    def apply(self, state: PureState) -> PureState:
        """Return ``U|state>``.

        Parameters
        ----------
        state : PureState
            The input.

        Returns
        -------
        PureState
            The image.

        Raises
        ------
        ValueError
            If the widths differ.
        """
        if state.n_qubits != self.n_qubits:
            raise ValueError(
                f"width mismatch: {self.n_qubits} vs {state.n_qubits}"
            )
        return PureState(self.matrix @ state.amplitudes)

    def column(self, index: int = 0) -> PureState:
        """Return ``U|index>``.

        Parameters
        ----------
        index : int, optional
            The basis index, by default 0.

        Returns
        -------
        PureState
            The column as a state.
        """
        return PureState(self.matrix[:, index])


@dataclass(frozen=True, eq=False)
class ProductState:
    """Independent blocks held side by side, block 0 on the lowest indices.

    Registers that are too wide for a dense vector but carry no
    entanglement between blocks are kept in this form.
    """

    blocks: tuple[PureState, ...]

    def __post_init__(self) -> None:
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("a product state needs at least one block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n_qubits(self) -> int:
        """Return the total width."""
        return sum(block.n_qubits for block in self.blocks)

    @property
    def widths(self) -> tuple[int, ...]:
        """Return the width of every block."""
        return tuple(block.n_qubits for block in self.blocks)

    def to_pure(self) -> PureState:
        """Contract the blocks into one dense vector.

        Returns
        -------
        PureState
            The joint state.
        """
        head, *tail = self.blocks
        return head.tensor(*tail)
