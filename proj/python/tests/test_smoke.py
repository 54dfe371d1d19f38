import json
import math
import os

import pytest

import conekit


def test_symbolic_verify():
    res = conekit.symbolic_verify()
    assert res["cancellation_coefficient"] == "0"
    assert res["cancellation_exact"] is True
    assert res["leading_coefficient"] == "t'^2*(t'-t)^2"
    assert res["leading_positive"] is True

    flipped = conekit.symbolic_verify(sign=1)
    assert flipped["leading_positive"] is False


def test_model_metric_value():
    g = conekit.model_metric([0.5], [0.25 + 0j])
    assert g[0][0] == pytest.approx(1.0)
    g2 = conekit.model_metric([0.5, 0.75], [0.5 + 0j, 0.5 + 0j])
    assert g2[1][1] == pytest.approx(0.5625 * 0.5 ** -0.5)


def test_reference_metric_reduces_to_cone_plus_flat():
    params = {"tau": 0.6, "tau_prime": 0.8, "c_coef": 0.0}
    g = conekit.reference_metric(params, [0.2 + 0j])
    assert g[0][0].real == pytest.approx(1.0 + 0.36 * 0.04 ** -0.4)


def test_distances():
    assert conekit.d_tau([0.3 + 0.4j], [0j], 1.0) == pytest.approx(0.5)
    assert conekit.d_tau([0.49 + 0j], [0.09 + 0j], 0.5) == pytest.approx(0.4)
    dw = conekit.d_tau([0.25 + 0j], [-0.25 + 0j], 0.5, convention="uniformization")
    assert dw == pytest.approx(2 * 0.5 * math.sin(math.pi / 4))


def test_blowup_rate():
    params = {"tau": 0.75, "tau_prime": 0.9, "a_coef": 4.0, "c_coef": 0.55}
    radii = [10 ** (-1 - 0.25 * k) for k in range(9)]
    fit = conekit.fit_blowup_exponent(params, radii, base_scale=0.05)
    assert fit["positive_samples"] == len(radii)
    assert fit["exponent"] == pytest.approx(-2.2, rel=0.05)


def test_holder_seminorm():
    pts, vals = [], []
    for i in range(1, 33):
        for a in range(8):
            z = (i / 32.0) * complex(math.cos(2 * math.pi * a / 8), math.sin(2 * math.pi * a / 8))
            pts.append([z])
            vals.append(abs(z))  # |z| = |xi|^2 at tau = 1/2
    rep = conekit.holder_seminorm(pts, vals, 1.0, 0.5)
    assert rep["exhaustive"] is True
    assert rep["seminorm"] == pytest.approx(2.0, rel=0.1)


def test_run_solve(tmp_path):
    cfg = """
[params]
tau = 0.75
tau_prime = 0.9
c_coef = 1.0
[grid]
kind = radial-smooth
rho_min = 0.05
rho_max = 0.95
radial_points = 12
second_points = 8
[source]
name = zero
"""
    status = conekit.run("solve", cfg, str(tmp_path), seed=5)
    assert status == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["schema"] == 1
    assert report["solve_report"]["monitor"]["phi_sup"] <= 1e-10
    assert os.path.exists(tmp_path / "phi.bin")
