import math

import numpy as np
import pytest

from scipy import (
    special,
    stats)

from multalpha.errors import (
    MultalphaDomainError)
from multalpha.specfun import (
    erf,
    erfc,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    regularized_incomplete_beta,
    surprisal,
    t_cdf,
    t_pdf,
    t_quantile)


@pytest.mark.parametrize('x', [-7.5, -3.0, -1.0, -0.3, 0.0, 0.2, 0.99, 1.0,
                               2.5, 6.0, 9.0])
def test_erf_matches_math(x):
    assert erf(x) == pytest.approx(math.erf(x), abs=1e-15)
    assert erfc(x) == pytest.approx(math.erfc(x), rel=1e-13, abs=1e-300)


def test_normal_cdf_known_values():
    assert normal_cdf(0.0) == 0.5
    assert normal_cdf(1.6449) == pytest.approx(0.95, abs=1e-4)
    for x in (0.3, 1.7, 4.0):
        assert normal_cdf(-x) == pytest.approx(1.0 - normal_cdf(x), abs=1e-15)


def test_normal_cdf_against_scipy():
    for x in np.linspace(-10.0, 10.0, 201):
        assert normal_cdf(x) == pytest.approx(stats.norm.cdf(x), abs=1e-12)


def test_normal_cdf_monotone_on_dense_grid():
    values = [normal_cdf(x) for x in np.linspace(-10.0, 10.0, 10000)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_normal_cdf_rejects_non_finite():
    with pytest.raises(MultalphaDomainError):
        normal_cdf(math.inf)
    with pytest.raises(MultalphaDomainError):
        normal_cdf(math.nan)


def test_normal_pdf_at_mode():
    assert normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))


def test_normal_quantile_known_values():
    assert normal_quantile(0.5) == 0.0
    assert normal_quantile(0.975) == pytest.approx(1.95996, abs=1e-4)
    for x in (-3.0, -0.5, 2.0):
        assert normal_quantile(normal_cdf(x)) == pytest.approx(x, abs=1e-9)


def test_normal_quantile_round_trip_log_grid():
    grid = np.concatenate([np.geomspace(1e-8, 0.5, 60),
                           1.0 - np.geomspace(1e-8, 0.5, 60)])
    for p in grid:
        assert normal_cdf(normal_quantile(p)) == pytest.approx(p, abs=1e-10)


@pytest.mark.parametrize('p', [0.0, 1.0, -0.1, 1.5])
def test_normal_quantile_domain(p):
    with pytest.raises(MultalphaDomainError):
        normal_quantile(p)


def test_incomplete_beta_trivial_cases():
    assert regularized_incomplete_beta(1.0, 1.0, 0.37) == pytest.approx(0.37)
    assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
    assert regularized_incomplete_beta(0.5, 0.5, 1.0) == 1.0
    assert regularized_incomplete_beta(2.0, 2.0, 0.5) == pytest.approx(0.5)
    assert regularized_incomplete_beta(3.0, 4.0, 0.0) == 0.0


@pytest.mark.parametrize('a,b', [(0.5, 0.5), (2.0, 3.0), (30.0, 0.5),
                                 (0.7, 12.0), (20.0, 25.0)])
def test_incomplete_beta_against_scipy_and_reflection(a, b):
    for x in np.linspace(0.01, 0.99, 25):
        value = regularized_incomplete_beta(a, b, x)
        assert value == pytest.approx(special.betainc(a, b, x), abs=1e-12)
        assert value == pytest.approx(
            1.0 - regularized_incomplete_beta(b, a, 1.0 - x), abs=1e-12)


@pytest.mark.parametrize('a,b,x', [(0.0, 1.0, 0.5), (1.0, -2.0, 0.5),
                                   (1.0, 1.0, 1.2), (1.0, 1.0, -0.1)])
def test_incomplete_beta_domain(a, b, x):
    with pytest.raises(MultalphaDomainError):
        regularized_incomplete_beta(a, b, x)


def test_t_cdf_known_values():
    assert t_cdf(0.0, 7.0) == 0.5
    assert t_cdf(1.6706, 60.0) == pytest.approx(0.95, abs=1e-4)
    for x in (-2.0, 0.5, 1.96):
        assert t_cdf(x, 1e6) == pytest.approx(normal_cdf(x), abs=1e-4)


@pytest.mark.parametrize('df', [1.0, 2.5, 7.0, 60.0, 1000.0])
def test_t_cdf_against_scipy(df):
    for x in np.linspace(-8.0, 8.0, 81):
        assert t_cdf(x, df) == pytest.approx(stats.t.cdf(x, df), abs=1e-12)
        assert t_cdf(-x, df) == pytest.approx(1.0 - t_cdf(x, df), abs=1e-14)
        assert t_pdf(x, df) == pytest.approx(stats.t.pdf(x, df), rel=1e-10)


def test_t_cdf_large_df_limit():
    diffs = [abs(t_cdf(x, 1e6) - normal_cdf(x))
             for x in np.linspace(-5.0, 5.0, 101)]
    assert max(diffs) < 1e-3


def test_t_cdf_domain():
    with pytest.raises(MultalphaDomainError):
        t_cdf(1.0, 0.0)
    with pytest.raises(MultalphaDomainError):
        t_cdf(1.0, -3.0)


def test_t_quantile_known_values():
    assert t_quantile(0.5, 7.0) == 0.0
    assert t_quantile(0.95, 60.0) == pytest.approx(1.6706, abs=5e-4)
    assert (t_quantile(0.9, 60.0) < t_quantile(0.95, 60.0) <
            t_quantile(0.99, 60.0))


@pytest.mark.parametrize('df', [1.0, 3.3, 22.0, 60.0, 190.0])
def test_t_quantile_round_trip(df):
    for p in (1e-6, 1e-3, 0.025, 0.3, 0.7, 0.975, 0.999):
        x = t_quantile(p, df)
        assert t_cdf(x, df) == pytest.approx(p, abs=1e-9)
        assert x == pytest.approx(stats.t.ppf(p, df), rel=1e-7)


def test_t_quantile_domain():
    with pytest.raises(MultalphaDomainError):
        t_quantile(1.0, 10.0)
    with pytest.raises(MultalphaDomainError):
        t_quantile(0.5, 0.0)


def test_surprisal_values():
    assert round(surprisal(0.05), 1) == 4.3
    assert round(surprisal(0.01), 1) == 6.6
    assert round(surprisal(0.001), 1) == 10.0
    assert surprisal(0.5) == 1.0
    assert surprisal(1.0) == 0.0
    assert surprisal(0.01) > surprisal(0.05)


@pytest.mark.parametrize('alpha', [0.0, -0.1, 1.5])
def test_surprisal_domain(alpha):
    with pytest.raises(MultalphaDomainError):
        surprisal(alpha)
