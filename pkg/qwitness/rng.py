# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Counter-based random streams keyed by (seed, trial, site tag)."""

import hashlib

import numpy as np


def _tag_key(tag: str) -> int:
    digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_rng(seed: int, trial: int = 0, tag: str = "") -> np.random.Generator:
    """Derive an independent generator for one trial and call site.

    Parameters
    ----------
    seed : int
        The master 64-bit seed.
    trial : int, optional
        The trial index, by default 0.
    tag : str, optional
        A name for the call site, by default "".

    Returns
    -------
    np.random.Generator
        A Philox generator whose stream depends only on the three keys.

    Raises
    ------
    ValueError
        If the seed or the trial index is negative.
    """
    if seed < 0 or trial < 0:
        raise ValueError(f"seed and trial must be >= 0, got {seed}, {trial}")
    sequence = np.random.SeedSequence(
        entropy=seed & 0xFFFF_FFFF_FFFF_FFFF,
        spawn_key=(trial, _tag_key(tag)),
    )
    return np.random.Generator(np.random.Philox(sequence))


def spawn(rng: np.random.Generator, tag: str) -> np.random.Generator:
    """Split a child stream off an existing generator.

    Parameters
    ----------
    rng : np.random.Generator
        The parent generator.
    tag : str
        A name for the child.

    Returns
    -------
    np.random.Generator
        The child generator.
    """
    word = int(rng.integers(0, 2**63))
    return derive_rng(word, 0, tag)
