import math

import numpy as np
import pytest

import coalesce


def test_special_functions():
    assert coalesce.erfc(0.0) == 1.0
    assert coalesce.erfc(1.0) == pytest.approx(0.15729920705028513, rel=1e-15)
    assert coalesce.erf(-0.3) == -coalesce.erf(0.3)
    assert coalesce.erfcx(3.0) == pytest.approx(math.exp(9.0) * math.erfc(3.0), rel=1e-12)


def test_grid():
    g = coalesce.SpatialGrid.with_spacing(0.0, 5.0, 0.01)
    assert g.n_nodes == 501
    assert g.nodes()[100] == pytest.approx(1.0)
    with pytest.raises(coalesce.ConfigError):
        coalesce.SpatialGrid(0.0, 1.0, 2)


def test_zeros():
    x = np.linspace(0.0, 5.0, 501)
    zeros, signs = coalesce.extract_zeros(x, np.tanh(x - 1.0))
    assert zeros == pytest.approx([1.0], abs=1e-6)
    assert signs == [1]


def test_fit():
    t = 0.5 * np.arange(200) / 200
    fit = coalesce.fit_scaling_law(t, np.sqrt(2 * (0.5 - t)))
    assert fit["c1"] == pytest.approx(0.5, abs=0.002)
    assert fit["t0"] == pytest.approx(0.5, abs=0.0005)
    with pytest.raises(coalesce.InsufficientDataError):
        coalesce.fit_scaling_law(t[:3], t[:3] + 1)


def test_simulate_preset():
    assert "shock-a1" in coalesce.preset_names()
    run = coalesce.simulate("shock-a1")
    assert len(run["t"]) == len(run["u"]) == 7
    assert len(run["u"][0]) == len(run["x"])
    assert run["branches"][0]["termination"] == pytest.approx(0.254, abs=0.003)
    assert 0.249 <= run["fit"]["t0"] <= 0.259
    with pytest.raises(coalesce.ConfigError):
        coalesce.simulate("shock-a9")


def test_oracles():
    assert coalesce.cole_hopf_t0() == pytest.approx(0.205, abs=0.002)
    u = coalesce.cole_hopf_u(0.0, np.array([-1.0, 0.0, 1.0]))
    assert u == pytest.approx([0.0, 0.0, 0.0], abs=1e-12)
    g = coalesce.green_reference_u(0.0, np.array([0.5, 1.0]))
    assert g == pytest.approx(np.expm1(-np.array([0.5, 1.0])))


def test_bounds_and_verify():
    b = coalesce.extinction_bound("shock-a1")
    assert b["class"] == "class_I"
    assert b["T"] > 0.254
    assert coalesce.extinction_bound("anti-a1")["T"] is None
    results = coalesce.verify("bounds")
    assert [r["passed"] for r in results] == [True]
