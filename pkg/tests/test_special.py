import math

import numpy as np
import pytest
import scipy.special as sps

from kemeny import ValidationError
from kemeny.special import (
    chi2_sf_1df,
    digamma,
    lgamma,
    reg_incomplete_beta,
    std_normal_cdf,
    std_normal_sf,
    student_t_sf,
    trigamma,
)


def test_lgamma_basics():
    assert lgamma(1.0) == 0.0
    assert lgamma(2.0) == pytest.approx(0.0, abs=1e-15)
    assert lgamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    with pytest.raises(ValidationError):
        lgamma(0.0)


def test_digamma_against_scipy(rng):
    xs = np.concatenate([rng.uniform(0.05, 5, 200), rng.uniform(5, 200, 200)])
    for x in xs:
        assert digamma(float(x)) == pytest.approx(float(sps.digamma(x)), abs=1e-11)


def test_digamma_matches_lgamma_finite_difference(rng):
    h = 1e-5
    xs = np.concatenate([[0.1, 0.5, 1.0, 2.0], rng.uniform(0.1, 200, 300)])
    for x in xs:
        approx = (math.lgamma(x + h) - math.lgamma(x - h)) / (2 * h)
        assert abs(digamma(float(x)) - approx) < 1e-6


def test_trigamma_against_scipy(rng):
    for x in rng.uniform(0.05, 100, 300):
        assert trigamma(float(x)) == pytest.approx(float(sps.polygamma(1, x)), rel=1e-9)


def test_reg_incomplete_beta_uniform_case(rng):
    for x in rng.uniform(0, 1, 50):
        assert reg_incomplete_beta(1.0, 1.0, float(x)) == pytest.approx(x, abs=1e-13)


def test_reg_incomplete_beta_endpoints():
    assert reg_incomplete_beta(2.0, 3.0, 0.0) == 0.0
    assert reg_incomplete_beta(2.0, 3.0, 1.0) == 1.0


def test_reg_incomplete_beta_symmetry_large_sample(rng):
    a = np.exp(rng.uniform(np.log(0.05), np.log(50), 100_000))
    b = np.exp(rng.uniform(np.log(0.05), np.log(50), 100_000))
    x = rng.uniform(0, 1, 100_000)
    worst = 0.0
    for ai, bi, xi in zip(a, b, x):
        s = reg_incomplete_beta(float(ai), float(bi), float(xi)) + reg_incomplete_beta(
            float(bi), float(ai), float(1 - xi)
        )
        worst = max(worst, abs(s - 1.0))
    assert worst < 1e-12


def test_reg_incomplete_beta_against_scipy(rng):
    # independent oracle: scipy computes the same function its own way
    a = np.exp(rng.uniform(np.log(0.05), np.log(80), 2000))
    b = np.exp(rng.uniform(np.log(0.05), np.log(80), 2000))
    x = rng.uniform(0, 1, 2000)
    for ai, bi, xi in zip(a, b, x):
        mine = reg_incomplete_beta(float(ai), float(bi), float(xi))
        ref = float(sps.betainc(ai, bi, xi))
        assert abs(mine - ref) < 1e-12


def test_reg_incomplete_beta_domain():
    with pytest.raises(ValidationError):
        reg_incomplete_beta(-1.0, 2.0, 0.5)
    with pytest.raises(ValidationError):
        reg_incomplete_beta(1.0, 2.0, 1.5)


def test_std_normal_cdf_values():
    assert std_normal_cdf(0.0) == 0.5
    assert std_normal_sf(0.0) == 0.5
    assert std_normal_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-12)
    assert std_normal_cdf(-5.0) == pytest.approx(2.866515719235352e-07, rel=1e-10)


def test_student_t_sf_fixed_points():
    assert student_t_sf(0.0, 7.0) == pytest.approx(0.5, abs=1e-14)
    # Cauchy upper quartile
    assert student_t_sf(1.0, 1.0) == pytest.approx(0.25, abs=1e-12)
    # normal limit
    assert student_t_sf(1.96, 1e6) == pytest.approx(std_normal_sf(1.96), abs=1e-5)
    assert student_t_sf(1.96, 1e6) == pytest.approx(0.025, abs=1e-4)


def test_student_t_sf_against_scipy(rng):
    from scipy.stats import t as tdist

    for _ in range(500):
        t = float(rng.normal(0, 3))
        df = float(rng.uniform(1, 200))
        assert student_t_sf(t, df) == pytest.approx(float(tdist.sf(t, df)), abs=1e-12)


def test_student_t_sf_negative_symmetry(rng):
    for _ in range(100):
        t = float(rng.normal(0, 2))
        df = float(rng.uniform(1, 50))
        assert student_t_sf(t, df) + student_t_sf(-t, df) == pytest.approx(1.0, abs=1e-12)


def test_chi2_sf_1df_matches_normal_two_tail(rng):
    for z in rng.normal(0, 2, 200):
        two_tail = 2.0 * std_normal_sf(abs(float(z)))
        assert chi2_sf_1df(float(z) ** 2) == pytest.approx(two_tail, abs=1e-14)
