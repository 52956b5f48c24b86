import math

import numpy as np
import pytest

import betamix

CHAIN = np.array([[0.9, 0.1], [0.2, 0.8]])


def test_oracles():
    assert betamix.beta_gaussian_ar1(0.5, 1) == pytest.approx(0.1846, abs=1e-3)
    assert betamix.beta_exact_finite(CHAIN, 2) == pytest.approx(4 / 9 * 0.49, abs=1e-12)
    assert betamix.jansson_bounds(0.0) == (0.0, 0.0)
    assert betamix.k_star_ar1(0.9, 10000) == 109
    assert betamix.block_count(2, 100) == 16


def test_generators_are_seeded():
    a = betamix.gen_ar1(0.5, 1.0, 1000, 7)
    b = betamix.gen_ar1(0.5, 1.0, 1000, 7)
    assert a == b
    assert len(a) == 1000
    pi = betamix.stationary_distribution(CHAIN)
    assert pi == pytest.approx([2 / 3, 1 / 3], abs=1e-12)


def test_estimators():
    path = betamix.gen_ar1(0.5, 1.0, 8192, 1)
    est = betamix.estimate(path, 1, estimator="kde-scott", k="ar:0.9")
    assert est["k"] == betamix.k_star_ar1(0.9, 8192)
    assert 0.0 <= est["beta_hat"] <= 1.0

    symbols = betamix.gen_finite_chain(CHAIN, 20000, 3)
    fin = betamix.estimate([float(s) for s in symbols], 1, estimator="finite", k="10")
    assert fin["beta_hat"] == pytest.approx(4 / 9 * 0.7, abs=0.1)
    sup = betamix.estimate_sup(symbols, 2, 5)
    assert [e["m"] for e in sup] == [1, 2, 3, 4, 5]


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        betamix.gen_ar1(1.2, 1.0, 10, 0)
    with pytest.raises(betamix.DomainError):
        betamix.estimate([0.5, 1.5, 2.5], 1, estimator="finite", k="1")
    with pytest.raises(betamix.NumericalError):
        betamix.stationary_distribution(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_experiment_csv():
    cfg = "model = ar1\nsizes = 1024\nlags = 1\nreplicates = 2\nestimators = acf\n"
    csv = betamix.run_experiment(cfg, jobs=2)
    lines = csv.strip().split("\n")
    assert lines[0] == "model,estimator,n,m,rep,seed,beta_hat,beta_true,abs_error"
    assert len(lines) == 3
    assert math.isclose(float(lines[1].split(",")[7]), betamix.beta_gaussian_ar1(0.5, 1), abs_tol=1e-9)
