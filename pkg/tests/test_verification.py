"""Identity checks, functional-equation families, and the independence test."""

import numpy as np
import pytest

from symcone import algebra as ja
from symcone import serialization as ser
from symcone import verification as ver

ALL_ALGEBRAS = [
    ja.sym_real(1),
    ja.sym_real(2),
    ja.sym_real(3),
    ja.herm_complex(2),
    ja.herm_complex(3),
    ja.lorentz(2),
    ja.lorentz(3),
    ja.lorentz(4),
]
IDS = [f"{a.kind.value}-dim{a.dim}" for a in ALL_ALGEBRAS]

A1 = ja.sym_real(1)
A2 = ja.sym_real(2)
ONE = ja.identity(A1)
E2 = ja.identity(A2)


@pytest.mark.parametrize("alg", ALL_ALGEBRAS, ids=IDS)
def test_identity_checks_pass(alg):
    assert ver.check_jordan_axioms(alg, n=300, seed=1).passed
    assert ver.check_det_product_rule(alg, n=300, seed=2).passed
    assert ver.check_det_operator_power(alg, n=300, seed=3).passed
    assert ver.check_hua(alg, n=300, seed=4).passed
    assert ver.check_involution(alg, n=300, seed=5).passed


@pytest.mark.parametrize("alg", [A2, ja.lorentz(2), ja.herm_complex(2)])
def test_jacobian_check_passes(alg):
    report = ver.check_jacobian(alg, n=50, seed=6)
    assert report.passed
    assert report.max_residual < 1e-4


def test_cauchy_additive_cases():
    zero_vec = ja.zero(A2)
    report = ver.check_cauchy_additive(A2, zero_vec, n=200, seed=7)
    assert report.max_residual == 0.0
    report = ver.check_cauchy_additive(A1, ONE, n=200, seed=8)
    assert report.max_residual == 0.0
    rng = np.random.default_rng(9)
    for alg in (A2, ja.lorentz(3)):
        f_vec = ja.random_element(alg, rng)
        report = ver.check_cauchy_additive(alg, f_vec, n=500, tol=1e-12, seed=10)
        assert report.passed


def test_pexider_log_cases():
    report = ver.check_pexider_log(A2, 0.0, 1.5, -2.0, n=200, seed=11)
    assert report.max_residual == 0.0
    # scalar sanity: log 4 + log 2 = log(P(2) 2) = log 8
    report = ver.check_pexider_log(A1, 1.0, 0.0, 0.0, n=200, seed=12)
    assert report.passed
    report = ver.check_pexider_log(A2, 2.5, 0.3, -0.7, n=500, tol=1e-9, seed=13)
    assert report.passed


def test_fe_univariate_g_alpha_cases():
    assert ver.check_fe_univariate_g_alpha(
        {"A": 0.0, "B": 0.0, "C": 2.0, "D": -1.0}, n=200, seed=14
    ).max_residual == 0.0
    # A=1, B=0: x(x+y) - y(x+y) = x^2 - y^2 identically
    assert ver.check_fe_univariate_g_alpha(
        {"A": 1.0, "B": 0.0, "C": 0.0, "D": 0.0}, n=200, seed=15
    ).passed
    report = ver.check_fe_univariate_g_alpha(
        {"A": 2.0, "B": 3.0, "C": 0.5, "D": 1.5}, n=1000, tol=1e-10, seed=16
    )
    assert report.passed


def test_fe_univariate_abcd_cases():
    flat = ver.Fe1dConstants(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0)
    assert ver.check_fe_univariate_abcd(flat, n=200, seed=17).max_residual < 1e-12
    log_only = ver.Fe1dConstants(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert ver.check_fe_univariate_abcd(log_only, n=500, tol=1e-12, seed=18).passed
    linear = ver.Fe1dConstants(0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert ver.check_fe_univariate_abcd(linear, n=500, tol=1e-10, seed=19).passed
    rng = np.random.default_rng(20)
    for _ in range(5):
        k = ver.random_fe1d_constants(rng)
        assert ver.check_fe_univariate_abcd(k, n=500, seed=21).passed


def test_fe1d_constraint_enforced():
    with pytest.raises(ValueError):
        ver.Fe1dConstants(1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0)
    k = ver.Fe1dConstants.from_free(1.0, 0.5, -0.5, 1.0, 2.0, 0.5)
    assert k.c4 == pytest.approx(2.5)


def test_fe_cone_constant_balance():
    k = ver.FeSolutionConstants(0.0, ja.zero(A2), ja.zero(A2), 1.0, 2.0, 3.0)
    # constants: LHS = (1 + 3) + 2, RHS = 3 + (1 + 2)
    report = ver.check_fe_cone(A2, k, n=100, seed=22)
    assert report.max_residual == 0.0


def test_fe_cone_rank1_log_point():
    k = ver.FeSolutionConstants(1.0, ja.zero(A1), ja.zero(A1), 0.0, 0.0, 0.0)
    report = ver.check_fe_cone(A1, k, n=500, tol=1e-12, seed=23)
    assert report.passed


@pytest.mark.parametrize("alg", ALL_ALGEBRAS, ids=IDS)
def test_fe_cone_random_constants(alg):
    rng = np.random.default_rng(24)
    for _ in range(3):
        k = ver.random_fe_constants(alg, rng)
        assert ver.check_fe_cone(alg, k, n=300, seed=25).passed


def test_perturbed_fe_negative_control():
    rng = np.random.default_rng(26)
    k = ver.random_fe_constants(A1, rng)
    report = ver.check_perturbed_fe_rejects(A1, k, 0.1, n=300, seed=27)
    assert not report.passed
    assert report.max_residual > 10.0 * report.tolerance
    assert report.max_residual > 0.01
    # zero perturbation reduces to the family check
    assert ver.check_perturbed_fe_rejects(A1, k, 0.0, n=300, seed=27).passed
    # perturbation below tolerance passes: threshold semantics
    assert ver.check_perturbed_fe_rejects(A1, k, 1e-9, n=300, seed=27, tol=1e-7).passed


@pytest.mark.parametrize("alg,p", [(A1, 2.0), (A2, 2.0), (ja.lorentz(2), 2.0)])
def test_density_factorization_constancy(alg, p):
    e = ja.identity(alg)
    report = ver.density_factorization_check(alg, p, e, 2.0 * e, n=500, seed=28)
    assert report.passed
    assert report.max_residual < 1e-10


def test_density_factorization_negative_control():
    report = ver.density_factorization_check(
        A2, 2.0, E2, 2.0 * E2, n=500, seed=29, negative_control=True
    )
    assert not report.passed
    assert report.max_residual > 1e-3


def test_density_factorization_identity_point_is_finite():
    # evaluate both log sides at u = v = e directly: all terms finite
    from symcone.distributions import GigParams, gig_log_density_unnorm

    alg = A2
    p = 2.0
    e = ja.identity(alg)
    u = v = e
    lhs = gig_log_density_unnorm(GigParams(-p, 2.0 * e, e), u)
    x = ja.inverse(u + v)
    y = ja.inverse(u) - x
    rhs = gig_log_density_unnorm(GigParams(-p, e, 2.0 * e), x)
    assert np.isfinite(lhs) and np.isfinite(rhs) and np.isfinite(ja.det(y))


def test_density_factorization_shape_guard():
    with pytest.raises(Exception):
        ver.density_factorization_check(A2, 0.5, E2, E2, n=10, seed=0)


def test_my_property_small_run_passes():
    report = ver.my_property_test(
        A1, 2.0, ONE, ONE, 4000, seed=5, n_permutations=200, subsample=500
    )
    assert report.passed
    assert not report.inconclusive
    assert all(0.0 <= p <= 1.0 for p in report.dcor_p_values + report.ks_p_values)
    assert len(report.correlation_matrix) == 6
    assert report.functionals == ["trace", "det", "inner"]


def test_my_property_negative_control_fails():
    report = ver.my_property_test(
        A1, 2.0, ONE, ONE, 4000, seed=5, n_permutations=200, subsample=500,
        negative_control=True,
    )
    assert not report.passed
    assert min(report.dcor_p_values) < 0.01


def test_report_determinism():
    r1 = ver.check_hua(A2, n=200, seed=42)
    r2 = ver.check_hua(A2, n=200, seed=42)
    assert ser.reports_to_json([r1]) == ser.reports_to_json([r2])
    i1 = ver.my_property_test(A1, 2.0, ONE, ONE, 1000, seed=7, n_permutations=100, subsample=300)
    i2 = ver.my_property_test(A1, 2.0, ONE, ONE, 1000, seed=7, n_permutations=100, subsample=300)
    assert ser.reports_to_json([i1]) == ser.reports_to_json([i2])


def test_threads_do_not_change_results():
    for threads in (2, 4):
        a = ver.check_involution(A2, n=500, seed=6, threads=threads)
        b = ver.check_involution(A2, n=500, seed=6, threads=1)
        assert a.to_dict() == b.to_dict()
    a = ver.check_fe_univariate_abcd(
        ver.Fe1dConstants.from_free(1.0, 0.5, -0.5, 1.0, 2.0, 0.5), n=501, seed=6, threads=3
    )
    b = ver.check_fe_univariate_abcd(
        ver.Fe1dConstants.from_free(1.0, 0.5, -0.5, 1.0, 2.0, 0.5), n=501, seed=6, threads=1
    )
    assert a.to_dict() == b.to_dict()


def test_p_value_uniformity_over_seeded_runs():
    # under the property, p-values across independent seeded runs are roughly
    # uniform; count how many fall below 0.05 per statistic over 50 runs
    runs = 50
    low_counts = np.zeros(7)
    for s in range(runs):
        report = ver.my_property_test(
            A1, 2.0, ONE, ONE, 1500, seed=1000 + s, n_permutations=150, subsample=400
        )
        ps = np.array(report.dcor_p_values + report.ks_p_values)
        low_counts += ps < 0.05
    # binomial(50, 0.05) at 99% confidence allows at most 6 lows per statistic
    assert low_counts.max() <= 6
