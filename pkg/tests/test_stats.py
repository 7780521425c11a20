"""Distance-correlation permutation test and Monte Carlo error helpers."""

import numpy as np
import pytest

from symcone import stats as st


def test_dcor_detects_dependence():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(400)
    assert st.distance_correlation(x, x) == pytest.approx(1.0)
    # nonlinear (uncorrelated) dependence still shows up
    y = x**2
    assert abs(np.corrcoef(x, y)[0, 1]) < 0.15
    assert st.distance_correlation(x, y) > 0.3


def test_permutation_test_independent_and_dependent():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(600)
    y = rng.standard_normal(600)
    _, p_indep = st.permutation_dcor_test(x, y, 300, np.random.default_rng(2))
    assert p_indep > 0.01
    _, p_dep = st.permutation_dcor_test(x, x + 0.1 * y, 300, np.random.default_rng(3))
    assert p_dep == pytest.approx(1.0 / 301.0)


def test_permutation_test_subsample_path():
    rng = np.random.default_rng(4)
    x = rng.standard_normal(5000)
    y = rng.standard_normal(5000)
    r, p = st.permutation_dcor_test(x, y, 100, np.random.default_rng(5), subsample=300)
    assert 0.0 <= r <= 1.0
    assert 1.0 / 101.0 <= p <= 1.0


def test_permutation_test_determinism():
    rng = np.random.default_rng(6)
    x = rng.standard_normal(500)
    y = rng.standard_normal(500)
    out1 = st.permutation_dcor_test(x, y, 200, np.random.default_rng(7))
    out2 = st.permutation_dcor_test(x, y, 200, np.random.default_rng(7))
    assert out1 == out2


def test_ks_helpers():
    rng = np.random.default_rng(8)
    x = rng.standard_normal(2000)
    y = rng.standard_normal(2000)
    stat, p = st.ks_2sample(x, y)
    assert p > 0.01
    stat, p = st.ks_2sample(x, y + 1.0)
    assert p < 1e-6
    # 1% asymptotic critical value ~ 1.628 / sqrt(n)
    assert st.ks_critical_value(10000, 0.01) == pytest.approx(1.6276 / 100.0, abs=1e-3)


def test_mean_std_err_chain_blocks():
    rng = np.random.default_rng(9)
    values = rng.standard_normal(8000)
    m_flat, e_flat = st.mean_std_err(values)
    m_chain, e_chain = st.mean_std_err(values, n_chains=8)
    assert m_flat == pytest.approx(m_chain)
    assert e_chain == pytest.approx(e_flat, rel=0.5)
    # strongly correlated chains inflate the chain-based error estimate
    chain_offsets = np.repeat(rng.standard_normal(8), 1000)
    _, e_corr = st.mean_std_err(values + chain_offsets, n_chains=8)
    assert e_corr > 3 * e_flat
