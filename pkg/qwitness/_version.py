# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Version information for qwitness."""

__version__ = "0.1.0"
