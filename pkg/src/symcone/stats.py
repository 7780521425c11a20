"""Statistical test helpers used by the verification checks.

Two-sample and CDF-based Kolmogorov-Smirnov tests are delegated to scipy;
the permutation distance-correlation independence test is implemented here
so that its p-values are reproducible from an explicit generator.
"""

from __future__ import annotations

import numpy as np
from scipy import stats as sps


def distance_correlation(x, y) -> float:
    """Sample distance correlation of two scalar samples (V-statistic form)."""
    a, b = _centered_distance_matrices(np.asarray(x, float), np.asarray(y, float))
    return _dcor_from_centered(a, b)


def _centered_distance_matrices(x: np.ndarray, y: np.ndarray):
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("need two 1-d samples of equal length")
    a = np.abs(x[:, None] - x[None, :])
    b = np.abs(y[:, None] - y[None, :])
    return _double_center(a), _double_center(b)


def _double_center(m: np.ndarray) -> np.ndarray:
    row = m.mean(axis=0, keepdims=True)
    col = m.mean(axis=1, keepdims=True)
    return m - row - col + m.mean()

def _dcor_from_centered(a: np.ndarray, b: np.ndarray) -> float:
    dcov2 = (a * b).mean()
    denom = np.sqrt((a * a).mean() * (b * b).mean())
    if denom <= 0:
        return 0.0
    return float(np.sqrt(max(dcov2, 0.0) / denom))


def permutation_dcor_test(
    x,
    y,
    n_permutations: int = 500,
    rng: np.random.Generator | None = None,
    subsample: int | None = 1000,
) -> tuple[float, float]:
    """Permutation test of independence via distance correlation.

    Returns (dcor, p_value).  The p-value counts permuted squared distance
    covariances at least as large as the observed one, with the +1 finite-
    sample correction.  When the samples are longer than ``subsample``, a
    random subsample of that size is tested; the distance matrices are
    O(n^2), so this bounds memory and keeps the permutation loop fast while
    leaving the null distribution of the p-value uniform.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if subsample is not None and x.size > subsample:
        idx = rng.choice(x.size, size=subsample, replace=False)
        x, y = x[idx], y[idx]
    a, b = _centered_distance_matrices(x, y)
    observed = (a * b).mean()
    count = 0
    for _ in range(n_permutations):
        perm = rng.permutation(x.size)
        permuted = b[perm][:, perm]
        if (a * permuted).mean() >= observed:
            count += 1
    p_value = (count + 1.0) / (n_permutations + 1.0)
    return _dcor_from_centered(a, b), p_value


def ks_2sample(x, y) -> tuple[float, float]:
    """Two-sample Kolmogorov-Smirnov statistic and p-value."""
    res = sps.ks_2samp(np.asarray(x, float), np.asarray(y, float))
    return float(res.statistic), float(res.pvalue)


def ks_against_cdf(x, cdf) -> tuple[float, float]:
    """One-sample Kolmogorov-Smirnov test of data against a CDF callable."""
    res = sps.kstest(np.asarray(x, float), cdf)
    return float(res.statistic), float(res.pvalue)


def ks_critical_value(n: int, alpha: float = 0.01) -> float:
    """Asymptotic one-sample KS critical value c(alpha)/sqrt(n)."""
    return float(np.sqrt(-0.5 * np.log(alpha / 2.0)) / np.sqrt(n))


def mean_std_err(values, n_chains: int = 1) -> tuple[float, float]:
    """Mean and Monte Carlo standard error of a scalar sample.

    For ``n_chains > 1`` the values are interpreted as ``n_chains``
    contiguous equal-length blocks from independent chains and the error is
    estimated from the spread of the per-chain means, which stays honest for
    autocorrelated within-chain samples.
    """
    values = np.asarray(values, float)
    if n_chains <= 1:
        return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))
    per = values.size // n_chains
    chain_means = values[: per * n_chains].reshape(n_chains, per).mean(axis=1)
    err = chain_means.std(ddof=1) / np.sqrt(n_chains)
    return float(values.mean()), float(err)
