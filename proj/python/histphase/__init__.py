# Copyright 2026 The histphase Authors
# SPDX-License-Identifier: Apache-2.0
"""Geometric phases of discrete paths and decoherence functionals of histories."""

import json as _json

from ._core import (
    ConfigError,
    DimensionError,
    Error,
    InvariantError,
    UndefinedError,
    __version__,
    angle_distance,
    bloch_loop,
    bloch_state,
    class_operator,
    decoherence_matrix,
    fs_distance,
    geometric_phase_open,
    horizontal_lift,
    inner_product,
    loop_holonomy,
    normalize,
    pancharatnam_product,
    projector,
    scenario_names,
    trace_class_operator,
    wrap_angle,
)
from ._core import run_scenario as _run_scenario


def run_scenario(name, params=None, n_steps=None, seed=0):
    """Run a named scenario and return its parsed JSON document."""
    return _json.loads(_run_scenario(name, dict(params or {}), n_steps, seed))


__all__ = [
    "ConfigError",
    "DimensionError",
    "Error",
    "InvariantError",
    "UndefinedError",
    "__version__",
    "angle_distance",
    "bloch_loop",
    "bloch_state",
    "class_operator",
    "decoherence_matrix",
    "fs_distance",
    "geometric_phase_open",
    "horizontal_lift",
    "inner_product",
    "loop_holonomy",
    "normalize",
    "pancharatnam_product",
    "projector",
    "run_scenario",
    "scenario_names",
    "trace_class_operator",
    "wrap_angle",
]
