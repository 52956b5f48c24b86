"""Estimators of beta-mixing coefficients for stationary Markov processes."""

from ._core import (
    DomainError,
    NumericalError,
    acf,
    beta_exact_finite,
    beta_gaussian_ar1,
    beta_gaussian_correlation,
    block_count,
    estimate,
    estimate_sup,
    gen_ar1,
    gen_finite_chain,
    gen_lognormal_ar1,
    jansson_bounds,
    k_star_ar1,
    run_experiment,
    stationary_distribution,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "acf",
    "beta_exact_finite",
    "beta_gaussian_ar1",
    "beta_gaussian_correlation",
    "block_count",
    "estimate",
    "estimate_sup",
    "gen_ar1",
    "gen_finite_chain",
    "gen_lognormal_ar1",
    "jansson_bounds",
    "k_star_ar1",
    "run_experiment",
    "stationary_distribution",
]
