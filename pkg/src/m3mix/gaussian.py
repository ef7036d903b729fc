"""Gaussian likelihoods and Normal-inverse-Wishart conjugate machinery.

The factored Gaussian mixture assigns each point a mean component in
dimension 1 and a covariance component in dimension 2, so the usual NIW
conjugacy splits: means are resampled from a Gaussian full conditional whose
observation precisions vary per point (each point brings the covariance of
its dimension-2 component), and covariances from an inverse-Wishart whose
scatter is taken around each point's currently assigned mean.

The Gaussian prior used for the mean step is N(mu0, S0) with
S0 = lambda0 / (kappa0 * (nu0 - dim - 1)), i.e. the NIW prior with the
covariance fixed at its prior expectation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import invwishart

LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass(frozen=True)
class NIWPrior:
    """Normal-inverse-Wishart base distribution over (mean, covariance)."""

    mu0: np.ndarray
    kappa0: float
    nu0: float
    lambda0: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu0", np.atleast_1d(np.asarray(self.mu0, dtype=float)))
        object.__setattr__(self, "lambda0",
                           np.atleast_2d(np.asarray(self.lambda0, dtype=float)))
        d = self.mu0.shape[0]
        if self.lambda0.shape != (d, d):
            raise ValueError("lambda0 must be square and match mu0's dimension")
        if not self.kappa0 > 0:
            raise ValueError("kappa0 must be positive")
        if not self.nu0 > d - 1:
            raise ValueError(f"nu0 must exceed dim - 1 = {d - 1}")
        if not np.allclose(self.lambda0, self.lambda0.T, atol=1e-10):
            raise ValueError("lambda0 must be symmetric")
        np.linalg.cholesky(self.lambda0)  # raises LinAlgError if not PD

    @property
    def dim(self) -> int:
        return self.mu0.shape[0]

    def mean_prior_cov(self) -> np.ndarray:
        """Prior covariance of the mean, lambda0 / (kappa0 (nu0 - dim - 1))."""
        denom = self.nu0 - self.dim - 1
        if denom <= 0:
            raise ValueError("nu0 must exceed dim + 1 for the mean prior "
                             "covariance to exist")
        return self.lambda0 / (self.kappa0 * denom)

    @classmethod
    def from_data(cls, data: np.ndarray, kappa0: float = 0.01) -> "NIWPrior":
        """Weakly informative default: mu0 = data mean, lambda0 = data
        covariance, nu0 = dim + 2."""
        data = np.atleast_2d(np.asarray(data, dtype=float))
        d = data.shape[1]
        cov = np.cov(data, rowvar=False) if data.shape[0] > 1 else np.eye(d)
        cov = np.atleast_2d(cov)
        # guard against degenerate directions in tiny or collinear datasets
        cov = cov + 1e-9 * np.eye(d)
        return cls(mu0=data.mean(axis=0), kappa0=kappa0, nu0=d + 2, lambda0=cov)


@dataclass(frozen=True)
class GaussianComponent:
    """A mean/covariance pair; covariance must be symmetric positive definite."""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", np.atleast_1d(np.asarray(self.mean, dtype=float)))
        object.__setattr__(self, "covariance",
                           np.atleast_2d(np.asarray(self.covariance, dtype=float)))
        d = self.mean.shape[0]
        if self.covariance.shape != (d, d):
            raise ValueError("covariance shape must match mean dimension")
        if not np.allclose(self.covariance, self.covariance.T, atol=1e-10):
            raise ValueError("covariance must be symmetric")
        np.linalg.cholesky(self.covariance)


def log_density(x: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> float:
    """Multivariate normal log-density. A non-PD covariance surfaces as the
    Cholesky LinAlgError rather than being patched."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    d = x.shape[0]
    if mean.shape[0] != d or cov.shape != (d, d):
        raise ValueError("dimension mismatch")
    chol = np.linalg.cholesky(cov)
    diff = x - mean
    sol = np.linalg.solve(chol, diff)
    logdet = 2.0 * np.sum(np.log(np.diag(chol)))
    return float(-0.5 * (d * LOG_2PI + logdet + np.dot(sol, sol)))


def log_density_batch(xs: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    """log_density evaluated at each row of ``xs``."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    chol = np.linalg.cholesky(np.atleast_2d(cov))
    diffs = xs - np.atleast_1d(mean)
    sols = np.linalg.solve(chol, diffs.T)
    logdet = 2.0 * np.sum(np.log(np.diag(chol)))
    d = xs.shape[1]
    return -0.5 * (d * LOG_2PI + logdet + np.sum(sols * sols, axis=0))


def sample_mean_posterior(prior: NIWPrior, xs: np.ndarray, point_covs: np.ndarray,
                          rng: np.random.Generator,
                          point_precisions: np.ndarray | None = None) -> np.ndarray:
    """Draw a mean from its Gaussian full conditional.

    Each point contributes its own observation covariance (the covariance of
    the component it holds in the other dimension), so the posterior has
    precision P = S0^-1 + sum_i C_i^-1 and mean P^-1 (S0^-1 mu0 + sum_i
    C_i^-1 x_i). With no points this reduces to a draw from N(mu0, S0).
    """
    s0 = prior.mean_prior_cov()
    p0 = np.linalg.inv(s0)
    xs = np.asarray(xs, dtype=float).reshape(-1, prior.dim)
    n = xs.shape[0]
    if n == 0:
        return prior.mu0 + np.linalg.cholesky(s0) @ rng.standard_normal(prior.dim)
    if point_precisions is None:
        point_precisions = np.linalg.inv(
            np.asarray(point_covs, dtype=float).reshape(n, prior.dim, prior.dim))
    precision = p0 + point_precisions.sum(axis=0)
    h = p0 @ prior.mu0 + np.einsum("nij,nj->i", point_precisions, xs)
    post_cov = np.linalg.inv(precision)
    post_cov = 0.5 * (post_cov + post_cov.T)
    post_mean = post_cov @ h
    return post_mean + np.linalg.cholesky(post_cov) @ rng.standard_normal(prior.dim)


def sample_cov_posterior(prior: NIWPrior, xs: np.ndarray, point_means: np.ndarray,
                         rng: np.random.Generator) -> np.ndarray:
    """Draw a covariance from inverse-Wishart(nu0 + n, lambda0 + scatter),
    with scatter accumulated around each point's currently assigned mean.
    With no points this is a draw from the inverse-Wishart prior."""
    xs = np.asarray(xs, dtype=float).reshape(-1, prior.dim)
    n = xs.shape[0]
    if n == 0:
        scatter = np.zeros((prior.dim, prior.dim))
    else:
        diffs = xs - np.asarray(point_means, dtype=float).reshape(n, prior.dim)
        scatter = diffs.T @ diffs
    scale = prior.lambda0 + scatter
    scale = 0.5 * (scale + scale.T)
    draw = invwishart.rvs(df=prior.nu0 + n, scale=scale, random_state=rng)
    return np.atleast_2d(draw)


def sample_prior_means(prior: NIWPrior, size: int, rng: np.random.Generator) -> np.ndarray:
    """Batch of draws from the prior marginal N(mu0, S0) of the mean."""
    chol = np.linalg.cholesky(prior.mean_prior_cov())
    return prior.mu0 + rng.standard_normal((size, prior.dim)) @ chol.T


def sample_prior_covs(prior: NIWPrior, size: int, rng: np.random.Generator) -> np.ndarray:
    """Batch of draws from the inverse-Wishart(nu0, lambda0) prior."""
    draws = invwishart.rvs(df=prior.nu0, scale=prior.lambda0, size=size,
                           random_state=rng)
    return np.asarray(draws, dtype=float).reshape(size, prior.dim, prior.dim)
