"""Smoke tests of the python bindings (module built by CMake/scikit-build)."""

import math

import pytest

nonexch = pytest.importorskip("nonexch")


def test_copula_families_and_algebra():
    pi = nonexch.Copula.independence()
    assert pi(0.3, 0.7) == pytest.approx(0.21, abs=1e-15)
    mt = nonexch.Copula.m_theta(1 / 3)
    assert mt(2 / 3, 1 / 3) == 0.0
    assert mt.transpose()(0.9, 0.5) == mt(0.5, 0.9)
    mixed = nonexch.mix_transpose(mt, 0.5)
    assert mixed(0.2, 0.8) == mixed(0.8, 0.2)
    with pytest.raises(ValueError):
        nonexch.Copula.m_theta(0.5)
    assert nonexch.parse_copula("mix_t:0.75:clayton:2").describe() == "mix_t:0.75:clayton:2"


def test_measures():
    mt = nonexch.Copula.m_theta(1 / 3)
    assert nonexch.c_p(1) == pytest.approx(12.0, abs=1e-12)
    assert nonexch.k_mu(math.inf) == pytest.approx(1 / 3, abs=1e-12)
    assert nonexch.mu_p(mt, math.inf, 300) == pytest.approx(1 / 3, abs=0.01)
    assert nonexch.spearman_rho(mt, 300) == pytest.approx(nonexch.rho_m_theta(1 / 3), abs=0.01)
    rep = nonexch.bound_report(mt, 1, 100)
    assert rep["bound1_slack"] >= -0.02
    assert rep["bound2_slack"] >= -0.02
    lo, hi = nonexch.feasible_rho_range(1 / 6)
    assert lo == pytest.approx(-2 / 3) and hi == pytest.approx(1 / 3)


def test_empirical_and_permutation_test():
    xy = nonexch.sample_family("m_theta", 1 / 3, 300, seed=5)
    assert len(xy) == 300
    assert all(0 < x < 1 and 0 < y < 1 for x, y in xy)

    ps = nonexch.pseudo_observations(xy)
    assert ps.ranked
    tn = nonexch.t_statistic(ps, p=1, grid=35)
    assert tn > 0

    res = nonexch.run_test(xy, B=299, alpha=0.05, seed=11)
    assert res.reject
    assert res.p_value <= 1 / 100
    # Same configuration reproduces the same result.
    res2 = nonexch.run_test(xy, B=299, alpha=0.05, seed=11)
    assert (res.t_n, res.critical_value, res.p_value) == (
        res2.t_n,
        res2.critical_value,
        res2.p_value,
    )


def test_symmetric_data_usually_accepted():
    xy = nonexch.sample_family("gaussian", 0.5, 200, seed=21)
    res = nonexch.run_test(xy, B=99, alpha=0.05, seed=1)
    assert res.p_value > 1 / 100  # not an extreme outcome for H0 data


def test_experiment_harness():
    rows = nonexch.run_level(seed=3, R=3, n=40, B=19)
    assert len(rows) == 3
    assert {r["family"] for r in rows} == {"gaussian", "clayton", "fgm"}
    demo = nonexch.run_demo(seed=3, repeat=2, n=60, B=39)
    assert [r["family"] for r in demo] == ["gaussian", "m_theta", "m_theta"]
    assert all("tau_hat" in r for r in demo)
