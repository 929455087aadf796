# SPDX-License-Identifier: Apache-2.0.
# Copyright (c) 2024 - 2025 Thingenious.

"""Allow ``python -m qwitness``."""

from qwitness.main import main

main()
