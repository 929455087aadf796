# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Exact-simulation laboratory for quantum oracle constructions."""

from ._version import __version__

__all__ = ["__version__"]
