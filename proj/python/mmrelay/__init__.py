# SPDX-License-Identifier: Apache-2.0
"""Throughput analysis and simulation of relay-assisted mm-wave random access."""

from ._core import (
    ConfigError,
    ConfigFileError,
    ScenarioConfig,
    analyze,
    beam_gain,
    compare,
    los_probability,
    path_loss_db,
    relay_mmap_distance,
    run_cli,
    simulate,
    success_probability,
    sweep,
)

__all__ = [
    "ConfigError",
    "ConfigFileError",
    "ScenarioConfig",
    "analyze",
    "beam_gain",
    "compare",
    "los_probability",
    "path_loss_db",
    "relay_mmap_distance",
    "run_cli",
    "simulate",
    "success_probability",
    "sweep",
]
