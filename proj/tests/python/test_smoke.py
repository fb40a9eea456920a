"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import dimertrap as dt


def test_params_and_scales():
    p = dt.DimerParams(j=1.0, u=2.0 / 99.0, n=100)
    assert p.lambda_() == pytest.approx(2.0)
    assert p.t0() == pytest.approx(2.0 * math.pi)
    q = dt.DimerParams.from_lambda(4.0)
    assert q.lambda_() == 4.0
    with pytest.raises(ValueError):
        dt.DimerParams(j=-1.0)


def test_closed_forms():
    assert dt.zbar_meanfield_closed(1.5) == 0.0
    assert dt.zbar_meanfield_closed(4.0) == pytest.approx(0.9330127018922193)
    assert dt.zbar_closed_form(2.0, 100) == pytest.approx(0.3300390529679106)
    assert dt.zbar_closed_form_corrected(1e8, 50) > 1.0 - 1e-10
    full, asym = dt.lambda_critical(100, 0.001)
    assert full == pytest.approx(1.5530166808888617)
    assert asym < full


def test_normal_functions_match_numpy():
    xs = np.linspace(-5, 5, 41)
    from math import erf

    for x in xs:
        assert dt.normal_cdf(x) == pytest.approx(0.5 * (1 + erf(x / math.sqrt(2))), abs=1e-14)
    assert abs(dt.normal_quantile(0.002) + 2.878161739095483) < 1e-9


def test_monte_carlo_is_seeded():
    a = dt.zbar_mc_average(2.0, 100, samples=50000, seed=5)
    b = dt.zbar_mc_average(2.0, 100, samples=50000, seed=5)
    assert a == b
    mean, err = a
    assert 0.2 < mean < 0.45
    assert err > 0


def test_meanfield_integration():
    p = dt.DimerParams.from_lambda(0.0)
    traj = dt.integrate_gpe(dt.MeanFieldState.all_left(), p, t_end=p.t0())
    assert traj.norm_drift < 1e-10
    assert np.max(np.abs(traj.z - np.cos(traj.t))) < 1e-6
    assert dt.meanfield_zbar(dt.DimerParams.from_lambda(4.0)) == pytest.approx(
        0.933, abs=0.02
    )


def test_exact_dynamics():
    p = dt.DimerParams.from_lambda(2.0, 40)
    h = dt.build_hamiltonian(p)
    assert len(h.diag) == 41
    times = np.linspace(0.0, 5.0 * p.t0(), 201)
    z = dt.exact_imbalance_trajectory(p, times)
    assert z[0] == pytest.approx(1.0)
    assert np.all(np.abs(z) <= 1.0 + 1e-12)
    assert abs(dt.exact_zbar(dt.DimerParams(j=1.0, u=0.0, n=30))) < 1e-3


def test_sweep_rows():
    result = dt.run_sweep(
        [0.5, 2.5],
        n_list=[50],
        methods=["meanfield-closed", "semiclassical-closed"],
        seed=3,
    )
    assert result.failed_cells() == 0
    assert len(result.cells) == 4
    for cell in result.cells:
        assert cell.ok
        assert -1.0 <= cell.zbar <= 1.0


def test_reproduce_writes_files(tmp_path):
    files, failed = dt.reproduce_figure("fig4", tmp_path)
    assert failed == 0
    names = sorted(f.name for f in files)
    assert names == ["fig4.csv", "fig4.plt"]
    assert (tmp_path / "fig4.csv").exists()
