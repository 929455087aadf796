# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Closed-form distinguishing bounds for ``k`` phase-flip queries."""

import math
from typing import NamedTuple


class BoundValue(NamedTuple):
    """A bound as computed and its clamp to ``[0, 1]``."""

    raw: float
    clamped: float


def _check(k: int, epsilon: float) -> None:
    if k < 0 or epsilon < 0:
        raise ValueError(f"k and epsilon must be >= 0, got {k}, {epsilon}")


def indist_bound(k: int, epsilon: float) -> BoundValue:
    """Return ``sqrt(2 sqrt(2 k eps) + 4 k eps - 2 (2 k eps)^(3/2))``.

    The bound only applies while ``k * eps < 1/2``; outside that regime
    the raw value is still reported and the clamped value is 1. A
    negative radicand gives a NaN raw value.

    Parameters
    ----------
    k : int
        Number of queries.
    epsilon : float
        Largest marked fidelity over the query prefixes.

    Returns
    -------
    BoundValue
        The raw and clamped bound.

    Raises
    ------
    ValueError
        If either argument is negative.
    """
    _check(k, epsilon)
    x = 2.0 * k * epsilon
    radicand = 2.0 * math.sqrt(x) + 2.0 * x - 2.0 * x**1.5
    raw = math.sqrt(radicand) if radicand >= 0.0 else math.nan
    if k * epsilon >= 0.5 or math.isnan(raw):
        return BoundValue(raw, 1.0)
    return BoundValue(raw, min(1.0, raw))


def hybrid_bound(k: int, epsilon: float) -> float:
    """Return ``min(1, 2 k sqrt(eps))``, the query-magnitude bound.

    Parameters
    ----------
    k : int
        Number of queries.
    epsilon : float
        Largest marked fidelity over the query prefixes.

    Returns
    -------
    float
        The bound.
    """
    _check(k, epsilon)
    return min(1.0, 2.0 * k * math.sqrt(epsilon))


def long_form_bound(k: int, epsilon: float) -> BoundValue:
    """Return ``3 (k eps)^(1/4)``, the leading-order form of the bound.

    Parameters
    ----------
    k : int
        Number of queries.
    epsilon : float
        Largest marked fidelity over the query prefixes.

    Returns
    -------
    BoundValue
        The raw and clamped value.
    """
    _check(k, epsilon)
    raw = 3.0 * (k * epsilon) ** 0.25
    return BoundValue(raw, min(1.0, raw))


def single_query_distance(overlap_squared: float) -> float:
    """Return ``2 sqrt(F (1 - F))``, the one-query distance for fidelity F.

    Parameters
    ----------
    overlap_squared : float
        ``|<psi|phi>|^2``.

    Returns
    -------
    float
        ``1/2 || V|phi><phi|V - |phi><phi| ||_1``.
    """
    f = min(1.0, max(0.0, overlap_squared))
    return 2.0 * math.sqrt(f * (1.0 - f))
