# Copyright 2026 The histphase Authors
# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np
import pytest

import histphase as hp


def test_version():
    assert isinstance(hp.__version__, str) and hp.__version__


def test_octant_triangle():
    z = np.array([1, 0], dtype=complex)
    x = np.array([1, 1], dtype=complex) / math.sqrt(2)
    y = np.array([1, 1j], dtype=complex) / math.sqrt(2)
    r = hp.pancharatnam_product([z, x, y])
    assert abs(r["angle"] + math.pi / 4) < 1e-12
    assert abs(r["magnitude"] - 0.5**1.5) < 1e-12
    assert abs(hp.trace_class_operator([0.0, 1.0, 2.0], [hp.projector(v) for v in (z, x, y)]) - r["phase_factor"]) < 1e-12


def test_bloch_loop_holonomy():
    theta = math.pi / 3
    loop = hp.bloch_loop(theta, 4096)
    r = hp.loop_holonomy(loop)
    assert hp.angle_distance(r["angle"], -math.pi * (1 - math.cos(theta))) < 1e-2


def test_orthogonal_endpoints_raise():
    z = np.array([1, 0], dtype=complex)
    with pytest.raises(hp.UndefinedError):
        hp.geometric_phase_open([z, np.array([1, 1], dtype=complex), np.array([0, 1], dtype=complex)])


def test_double_slit_matrix():
    e0 = np.diag([1, 0]).astype(complex)
    e1 = np.diag([0, 1]).astype(complex)
    plus = hp.projector(np.array([1, 1], dtype=complex))
    minus = np.eye(2) - plus
    values, labels = hp.decoherence_matrix([[plus, minus], [e0, e1], [plus, minus]], [0.0, 1.0, 2.0], plus)
    assert values.shape == (8, 8)
    assert len(labels) == 8
    assert np.allclose(values, values.conj().T)
    assert abs(values.sum() - 1) < 1e-9


def test_scenario_round_trip():
    assert "bloch_loop" in hp.scenario_names()
    doc = hp.run_scenario("bloch_loop", {"theta": math.pi / 2}, n_steps=64)
    assert doc["metadata"]["scenario"] == "bloch_loop"
    assert doc["metadata"]["status"] == "ok"
    with pytest.raises(hp.ConfigError):
        hp.run_scenario("bloch_loop", {"colatitude": 1.0})
