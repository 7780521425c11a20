"""Densities, Laplace transforms, normalizers, and samplers."""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy import stats as sps

from symcone import algebra as ja
from symcone import distributions as dist
from symcone import stats as st

A1 = ja.sym_real(1)
A2 = ja.sym_real(2)
H2 = ja.herm_complex(2)
L2 = ja.lorentz(2)
ONE = ja.identity(A1)
E2 = ja.identity(A2)


def scalar(v):
    return ja.Element(A1, np.array([float(v)]))


# ---------------------------------------------------------------------------
# Cone Gamma function
# ---------------------------------------------------------------------------

def test_gamma_cone_rank1_is_ordinary_gamma():
    for p in (0.5, 1.0, 2.0, 3.7):
        assert dist.gamma_cone(p, A1) == pytest.approx(math.gamma(p), rel=1e-12)


def test_gamma_cone_sym2_closed_form():
    assert dist.gamma_cone(2.0, A2) == pytest.approx(
        math.sqrt(2 * math.pi) * math.sqrt(math.pi) / 2.0, rel=1e-12
    )


@pytest.mark.parametrize("p", [2.0, 2.5, 3.7])
def test_gamma_cone_sym2_quadrature_oracle(p):
    # with c3 = sqrt(2 c1 c2) sin t, the cone integral of
    # (det)^(p - 3/2) e^(-c1 - c2) over the coordinates factorizes into
    # sqrt(2) * (integral of u^(p-1) e^-u)^2 * (integral of cos^(2p-2) t)
    gamma_1d, _ = integrate.quad(lambda u: u ** (p - 1) * np.exp(-u), 0, np.inf)
    cos_int, _ = integrate.quad(lambda t: np.cos(t) ** (2 * p - 2), -np.pi / 2, np.pi / 2)
    oracle = math.sqrt(2.0) * gamma_1d**2 * cos_int
    assert dist.gamma_cone(p, A2) == pytest.approx(oracle, rel=1e-9)


def test_gamma_cone_shape_out_of_range():
    with pytest.raises(dist.ShapeOutOfRangeError):
        dist.gamma_cone(0.5, A2)  # needs p > 1/2
    with pytest.raises(dist.ShapeOutOfRangeError):
        dist.log_gamma_cone(0.0, A1)


# ---------------------------------------------------------------------------
# Wishart density / Laplace transform
# ---------------------------------------------------------------------------

def test_wishart_log_density_rank1_examples():
    assert dist.wishart_log_density(dist.WishartParams(1.0, ONE), scalar(1.0)) == pytest.approx(-1.0)
    assert dist.wishart_log_density(dist.WishartParams(2.0, ONE), scalar(2.0)) == pytest.approx(
        math.log(2.0) - 2.0
    )


def test_wishart_density_normalizes_rank1():
    params = dist.WishartParams(2.5, ONE)
    val, _ = integrate.quad(
        lambda x: np.exp(dist.wishart_log_density(params, scalar(x))), 1e-12, 50.0, limit=200
    )
    assert val == pytest.approx(1.0, abs=1e-6)


def test_wishart_density_normalizes_sym2_importance_sampling():
    # proposal: diagonals Gamma(p, 1), off-diagonal N(0, sqrt(c1 c2 / 2))
    p = 2.5
    params = dist.WishartParams(p, E2)
    rng = np.random.default_rng(0)
    n = 200000
    c1 = rng.gamma(p, 1.0, n)
    c2 = rng.gamma(p, 1.0, n)
    s = np.sqrt(c1 * c2 / 2.0)
    c3 = rng.normal(0.0, s)
    coords = np.stack([c1, c2, c3], axis=1)
    det = ja.batch_det(A2, coords)
    ok = det > 0
    log_target = np.full(n, -np.inf)
    log_target[ok] = (
        -dist.log_gamma_cone(p, A2)
        + (p - 1.5) * np.log(det[ok])
        - ja.batch_inner(A2, E2.coords, coords[ok])
    )
    log_q = sps.gamma.logpdf(c1, p) + sps.gamma.logpdf(c2, p) + sps.norm.logpdf(c3, scale=s)
    w = np.where(ok, np.exp(log_target - log_q), 0.0)
    assert w.mean() == pytest.approx(1.0, abs=0.02)


def test_wishart_density_depends_only_on_det_and_inner():
    # two diagonal points with equal determinant and equal <a, x>
    a = ja.from_matrix(A2, np.diag([2.0, 1.0]))
    params = dist.WishartParams(3.0, a)
    # 2 x1 + x2 = 5, x1 x2 = 2 has roots x1 in {2, 1/2}
    x_one = ja.from_matrix(A2, np.diag([2.0, 1.0]))
    x_two = ja.from_matrix(A2, np.diag([0.5, 4.0]))
    assert ja.det(x_one) == pytest.approx(ja.det(x_two))
    assert ja.inner(a, x_one) == pytest.approx(ja.inner(a, x_two))
    assert dist.wishart_log_density(params, x_one) == pytest.approx(
        dist.wishart_log_density(params, x_two), rel=1e-12
    )


def test_wishart_density_errors():
    with pytest.raises(dist.ShapeOutOfRangeError):
        dist.wishart_log_density(dist.WishartParams(0.5, E2), E2)
    with pytest.raises(ja.NotInConeError):
        dist.wishart_log_density(
            dist.WishartParams(2.0, E2), ja.from_matrix(A2, np.diag([1.0, -1.0]))
        )
    with pytest.raises(ja.NotInConeError):
        dist.WishartParams(2.0, ja.from_matrix(A2, np.diag([1.0, -1.0])))


def test_wishart_laplace_examples():
    assert dist.wishart_laplace(dist.WishartParams(2.0, ONE), ja.zero(A1)) == 1.0
    assert dist.wishart_laplace(dist.WishartParams(2.0, ONE), scalar(1.0)) == pytest.approx(0.25)
    assert dist.wishart_laplace(dist.WishartParams(1.5, E2), E2) == pytest.approx(0.125)
    with pytest.raises(ja.NotInConeError):
        dist.wishart_laplace(dist.WishartParams(1.5, E2), -2.0 * E2)


# ---------------------------------------------------------------------------
# GIG density and normalizer
# ---------------------------------------------------------------------------

def test_gig_log_density_examples():
    params = dist.GigParams(-1.0, ONE, ONE)
    assert dist.gig_log_density_unnorm(params, scalar(1.0)) == pytest.approx(-2.0)
    a = ja.from_matrix(A2, np.diag([2.0, 1.0]))
    b = ja.from_matrix(A2, np.diag([1.0, 3.0]))
    params2 = dist.GigParams(0.7, a, b)
    assert dist.gig_log_density_unnorm(params2, E2) == pytest.approx(
        -ja.trace(a) - ja.trace(b)
    )


def test_gig_reciprocal_density_identity():
    # the unnormalized density of (p, a, b) at x equals that of (-p, b, a)
    # at 1/x times x^(-2 dim / r); rank 1, exact identity
    p, a, b = 1.3, 0.8, 1.7
    params = dist.GigParams(p, scalar(a), scalar(b))
    swapped = dist.GigParams(-p, scalar(b), scalar(a))
    for x in (0.3, 1.0, 2.4):
        lhs = dist.gig_log_density_unnorm(params, scalar(x))
        rhs = dist.gig_log_density_unnorm(swapped, scalar(1.0 / x)) - 2.0 * math.log(x)
        assert lhs == pytest.approx(rhs, abs=1e-12)
    # and the normalizing constants agree (substitution x -> 1/x)
    k1 = dist.gig_norm_constant_rank1(params)
    k2 = dist.gig_norm_constant_rank1(swapped)
    assert k1 == pytest.approx(k2, rel=1e-8)


def test_gig_norm_constant_half_shape_closed_form():
    a, b = 1.3, 0.7
    params = dist.GigParams(0.5, scalar(a), scalar(b))
    closed = math.sqrt(math.pi / a) * math.exp(-2.0 * math.sqrt(a * b))
    assert dist.gig_norm_constant_rank1(params) == pytest.approx(closed, rel=1e-8)


def test_gig_norm_constant_symmetry_and_limit():
    params = dist.GigParams(1.7, scalar(0.9), scalar(0.9))
    flipped = dist.GigParams(-1.7, scalar(0.9), scalar(0.9))
    assert dist.gig_norm_constant_rank1(params) == pytest.approx(
        dist.gig_norm_constant_rank1(flipped), rel=1e-8
    )
    # p = 1, b -> 0 approaches the exponential normalizer 1/a
    limit = dist.GigParams(1.0, scalar(2.0), scalar(1e-12))
    assert dist.gig_norm_constant_rank1(limit) == pytest.approx(0.5, rel=1e-5)


def test_gig_norm_constant_rank2_unsupported():
    with pytest.raises(ValueError):
        dist.gig_norm_constant_rank1(dist.GigParams(1.0, E2, E2))


# ---------------------------------------------------------------------------
# Wishart sampling
# ---------------------------------------------------------------------------

def test_wishart_rank1_mean():
    n = 100000
    batch = dist.sample_wishart(dist.WishartParams(1.0, ONE), 42, n)
    assert batch.method == "bartlett"
    assert batch.all_in_cone()
    assert abs(batch.coords.mean() - 1.0) < 4.0 / math.sqrt(n)


def test_wishart_sym2_mean_matches_classical_identification():
    # cone Wishart with shape p and scale a is W_2(2p, (2a)^-1): mean p a^-1
    n = 100000
    batch = dist.sample_wishart(dist.WishartParams(2.0, E2), 42, n)
    target = 2.0 * ja.inverse(E2).coords
    assert np.abs(batch.coords.mean(axis=0) - target).max() < 5.0 / math.sqrt(n) * 2.0

    a = ja.from_matrix(A2, np.array([[2.0, 0.5], [0.5, 1.0]]))
    batch2 = dist.sample_wishart(dist.WishartParams(2.5, a), 7, n)
    target2 = 2.5 * ja.inverse(a).coords
    scale = np.abs(target2).max()
    assert np.abs(batch2.coords.mean(axis=0) - target2).max() < 5.0 / math.sqrt(n) * scale


@pytest.mark.parametrize(
    "alg,p",
    [(A2, 2.0), (H2, 2.5), (A1, 1.0)],
    ids=["sym2", "herm2", "rank1"],
)
def test_wishart_bartlett_laplace_probes(alg, p):
    e = ja.identity(alg)
    params = dist.WishartParams(p, e)
    n = 50000
    batch = dist.sample_wishart(params, 11, n)
    assert batch.all_in_cone()
    for c in (0.25, 0.5, 1.0):
        sigma = c * e
        values = np.exp(-ja.batch_inner(alg, sigma.coords, batch.coords))
        mean, err = st.mean_std_err(values)
        exact = dist.wishart_laplace(params, sigma)
        assert abs(mean - exact) < 3.0 * err


def test_wishart_lorentz_mcmc_laplace_probes():
    e = ja.identity(L2)
    params = dist.WishartParams(2.0, e)
    batch = dist.sample_wishart(params, 5, 50000)
    assert batch.method == "mcmc"
    assert batch.all_in_cone()
    assert not batch.mcmc["diverged"]
    chains = batch.mcmc["chains"]
    for c in (0.25, 0.5, 1.0):
        sigma = c * e
        values = np.exp(-ja.batch_inner(L2, sigma.coords, batch.coords))
        mean, err = st.mean_std_err(values, n_chains=chains)
        exact = dist.wishart_laplace(params, sigma)
        assert abs(mean - exact) < 3.0 * err
    mean0, err0 = st.mean_std_err(batch.coords[:, 0], n_chains=chains)
    assert abs(mean0 - 2.0) < 3.0 * err0


def test_wishart_sampler_determinism_and_range():
    b1 = dist.sample_wishart(dist.WishartParams(2.0, E2), 3, 100)
    b2 = dist.sample_wishart(dist.WishartParams(2.0, E2), 3, 100)
    assert np.array_equal(b1.coords, b2.coords)
    with pytest.raises(dist.ShapeOutOfRangeError):
        dist.sample_wishart(dist.WishartParams(0.5, E2), 0, 10)
    with pytest.raises(ValueError):
        dist.sample_wishart(dist.WishartParams(2.0, ja.identity(L2)), 0, 10, method="bartlett")


def test_sample_batch_elements_view():
    batch = dist.sample_wishart(dist.WishartParams(2.0, E2), 9, 5)
    els = batch.elements
    assert len(els) == 5
    assert np.array_equal(els[2].coords, batch.coords[2])
    assert batch.n == 5


# ---------------------------------------------------------------------------
# GIG sampling
# ---------------------------------------------------------------------------

def test_gig_rejection_matches_quadrature_cdf():
    params = dist.GigParams(-1.0, ONE, ONE)
    n = 10000
    batch = dist.sample_gig(params, 11, n)
    assert batch.method == "rejection"
    assert batch.all_in_cone()
    cdf = dist.gig_cdf_rank1(params)
    stat, _ = st.ks_against_cdf(batch.coords[:, 0], cdf)
    assert stat < st.ks_critical_value(n, alpha=0.01)


@pytest.mark.parametrize("p,a,b", [(0.5, 2.0, 0.5), (-2.3, 0.7, 1.9), (0.0, 1.0, 1.0)])
def test_gig_rejection_other_shapes(p, a, b):
    params = dist.GigParams(p, scalar(a), scalar(b))
    n = 5000
    batch = dist.sample_gig(params, 23, n)
    cdf = dist.gig_cdf_rank1(params)
    stat, _ = st.ks_against_cdf(batch.coords[:, 0], cdf)
    assert stat < st.ks_critical_value(n, alpha=0.01)


def test_gig_mcmc_agrees_with_rejection():
    params = dist.GigParams(-1.0, ONE, ONE)
    n = 10000
    rej = dist.sample_gig(params, 11, n)
    mc = dist.sample_gig(params, 12, n, method="mcmc")
    assert mc.mcmc is not None
    assert 0.1 <= mc.mcmc["acceptance_rate"] <= 0.7
    _, p_value = st.ks_2sample(rej.coords[:, 0], mc.coords[:, 0])
    assert p_value > 0.01


def test_gig_reciprocal_sampling_property():
    # X ~ (p, a, b) implies X^-1 ~ (-p, b, a); compare on the det functional
    a = ja.from_matrix(A2, np.diag([1.5, 0.8]))
    b = ja.from_matrix(A2, np.diag([0.7, 1.2]))
    n = 8000
    fwd = dist.sample_gig(dist.GigParams(1.1, a, b), 31, n)
    inv_coords = ja.batch_inverse(A2, fwd.coords)
    bwd = dist.sample_gig(dist.GigParams(-1.1, b, a), 32, n)
    _, p_value = st.ks_2sample(ja.batch_det(A2, inv_coords), ja.batch_det(A2, bwd.coords))
    assert p_value > 0.01
    assert fwd.all_in_cone() and bwd.all_in_cone()


def test_gig_mcmc_metadata_and_determinism():
    params = dist.GigParams(-2.0, E2, E2)
    cfg = dist.McmcConfig(burn_in=500, thin=5, chains=8)
    b1 = dist.sample_gig(params, 4, 400, mcmc=cfg)
    b2 = dist.sample_gig(params, 4, 400, mcmc=cfg)
    assert np.array_equal(b1.coords, b2.coords)
    assert b1.mcmc["burn_in"] == 500
    assert b1.mcmc["thin"] == 5
    assert b1.mcmc["chains"] == 8
    assert len(b1.mcmc["acceptance_per_chain"]) == 8


def test_mcmc_divergence_is_flagged():
    params = dist.GigParams(-2.0, E2, E2)
    cfg = dist.McmcConfig(burn_in=200, thin=2, chains=4, proposal_scale=80.0, adapt=False)
    with pytest.warns(RuntimeWarning):
        batch = dist.sample_gig(params, 4, 200, mcmc=cfg)
    assert batch.mcmc["diverged"]
