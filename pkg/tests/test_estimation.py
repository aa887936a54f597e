import math

import numpy as np
import pytest

from supjcir.errors import DegenerateEmpirical, FitFailed, InvariantViolation, ZeroVariance
from supjcir.estimation import (
    TimeSeries,
    empirical_acf,
    empirical_moments,
    empirical_stats,
    fit_acf,
    fit_moments,
    moment_error,
)
from supjcir.jumps import ExponentialJump, NoJumps
from supjcir.mixing import GammaMixing
from supjcir.process import Moments, SupJcirModel, stationary_moments

from conftest import synthetic_series


def series(values, step=1.0):
    values = np.asarray(values, dtype=float)
    return TimeSeries(np.arange(values.size) * step, values)


def noiseless_acf(theta, omega, lags):
    return [(0.0, 1.0)] + [(float(h), (1 + theta * h) ** (-(omega - 1))) for h in lags]


# -- empirical statistics -------------------------------------------------------

def test_acf_lag_zero_and_alternating():
    acf = dict(empirical_acf(series([1, -1] * 4), 3))
    assert acf[0.0] == 1.0
    assert acf[1.0] == pytest.approx(-0.875)


def test_acf_ar1():
    rng = np.random.default_rng(7)
    x = np.zeros(10000)
    for i in range(1, x.size):
        x[i] = 0.9 * x[i - 1] + rng.standard_normal()
    acf = dict(empirical_acf(series(x), 5))
    assert acf[1.0] == pytest.approx(0.9, abs=0.02)


def test_acf_irregular_sampling_matches_regular_subset():
    # dropping points leaves the grid; the estimator uses only observed pairs
    t = np.arange(40, dtype=float)
    v = np.sin(0.3 * t) + 0.1 * t
    keep = np.ones(40, bool)
    keep[[5, 17, 18, 30]] = False
    acf = empirical_acf(TimeSeries(t[keep], v[keep]), 4)
    assert [h for h, _ in acf] == [0.0, 1.0, 2.0, 3.0, 4.0]
    assert all(-1.0 <= val <= 1.0 for _, val in acf)


def test_acf_respects_step_units():
    v = np.random.default_rng(1).standard_normal(64)
    a = empirical_acf(series(v, 1.0), 4)
    b = empirical_acf(series(v, 7.0), 4)
    assert [h * 7 for h, _ in a] == [h for h, _ in b]
    assert [x for _, x in a] == [x for _, x in b]


def test_moments_examples():
    m = empirical_moments(series([1, 2, 3, 1, 2, 3, 1, 2, 3]))
    assert m.mean == pytest.approx(2.0)
    assert m.variance == pytest.approx(2 / 3)
    assert m.skewness == pytest.approx(0.0, abs=1e-12)
    sym = np.array([-3, -1, 0, 0.5, -0.5, 0, 1, 3.0]) + 10
    assert empirical_moments(series(sym)).skewness == pytest.approx(0.0, abs=1e-12)


def test_constant_series():
    with pytest.raises(ZeroVariance):
        empirical_moments(series(np.ones(10)))


def test_time_series_invariants():
    with pytest.raises(InvariantViolation):
        TimeSeries(np.arange(5.0), np.arange(5.0))
    with pytest.raises(InvariantViolation):
        TimeSeries(np.array([0, 1, 1, 2, 3, 4, 5, 6.0]), np.arange(8.0))


def test_empirical_stats_bundle():
    s = empirical_stats(series(np.random.default_rng(3).gamma(2.0, size=200)), 10)
    assert s.acf[0] == (0.0, 1.0)
    assert len(s.acf) == 11
    assert s.moments.variance == s.variance


# -- ACF fit --------------------------------------------------------------------------

@pytest.mark.parametrize("theta,omega", [(0.1, 2.5), (0.05, 1.5), (0.01, 4.0)])
def test_fit_acf_roundtrip(theta, omega):
    th, om, res = fit_acf(noiseless_acf(theta, omega, range(1, 101)))
    assert th == pytest.approx(theta, rel=5e-3)
    assert om == pytest.approx(omega, rel=5e-3)
    assert res < 1e-12


def test_fit_acf_scale_equivariant():
    a = fit_acf(noiseless_acf(0.1, 2.5, range(1, 53)))
    b = fit_acf([(7.0 * h, v) for h, v in noiseless_acf(0.1, 2.5, range(1, 53))])
    assert b[0] * 7 == pytest.approx(a[0], rel=1e-6)
    assert b[1] == pytest.approx(a[1], rel=1e-6)


def test_fit_acf_no_decay():
    with pytest.raises(FitFailed):
        fit_acf([(0.0, 1.0)] + [(float(h), 1.0) for h in range(1, 30)])


def test_fit_acf_too_few_points():
    with pytest.raises(FitFailed):
        fit_acf([(0.0, 1.0), (1.0, 0.5), (2.0, -0.1)])


def test_fit_acf_residual_ceiling():
    with pytest.raises(FitFailed):
        fit_acf(noiseless_acf(0.1, 2.5, range(1, 30)), max_residual=-1.0)


# -- moment fit -----------------------------------------------------------------------

def test_moment_error_examples():
    e = Moments(2.0, 1.0, 0.5)
    assert moment_error(e, e) == 0.0
    assert moment_error(Moments(2.2, 1.0, 0.5), e, include_skew=False) == pytest.approx(0.01)
    with pytest.raises(DegenerateEmpirical):
        moment_error(e, Moments(2.0, 1.0, 0.0))


def _truth(beta=5.0, y=0.9, sigma=0.8, a=1.0, theta=0.1, omega=2.5):
    mu = (1 - y) * beta * a / y
    return SupJcirModel(a, sigma, ExponentialJump(mu, beta), GammaMixing(omega, theta))


def test_fit_moments_roundtrip():
    truth = _truth()
    fit = fit_moments(stationary_moments(truth), 0.1, 2.5, 0.9)
    assert fit.error_metric < 1e-10
    m = fit.model
    assert m.jumps.beta == pytest.approx(5.0, rel=1e-2)
    assert m.sigma == pytest.approx(0.8, rel=1e-2)
    assert m.a == pytest.approx(1.0, rel=1e-2)
    # drift share of the mean is y by construction
    assert m.a / (m.a + m.jumps.mu / m.jumps.beta) == pytest.approx(0.9, rel=1e-14)


def test_fit_moments_without_skew():
    fit = fit_moments(stationary_moments(_truth()), 0.1, 2.5, 0.9, include_skew=False)
    assert fit.error_metric < 1e-10
    assert not fit.include_skew


def test_fit_moments_jump_free():
    truth = SupJcirModel(1.3, 0.6, NoJumps(), GammaMixing(2.5, 0.1))
    fit = fit_moments(stationary_moments(truth), 0.1, 2.5, 1.0, include_skew=False)
    assert isinstance(fit.model.jumps, NoJumps)
    assert fit.model.sigma == pytest.approx(0.6, rel=1e-2)
    assert fit.model.a == pytest.approx(1.3, rel=1e-2)


def test_fit_moments_two_root_ambiguity():
    # mean, variance and skewness are matched exactly by two (beta, sigma) pairs;
    # both fits are exact and the smaller beta is reported
    truth = _truth(beta=10.0, y=0.95, sigma=1.2)
    fit = fit_moments(stationary_moments(truth), 0.1, 2.5, 0.95)
    assert fit.error_metric < 1e-10
    assert fit.model.jumps.beta <= 10.0 * 1.01


def test_fit_moments_bad_y():
    with pytest.raises(ValueError):
        fit_moments(Moments(1.0, 1.0, 1.0), 0.1, 2.5, 0.0)


def test_synthetic_series_pipeline():
    t, v = synthetic_series(0.01, 2.5, mean=4.0, variance=2.0)
    s = TimeSeries(t, v)
    stats = empirical_stats(s)
    assert stats.mean == pytest.approx(4.0, rel=1e-12)
    assert stats.variance == pytest.approx(2.0, rel=1e-12)
    th, om, _ = fit_acf(stats.acf)
    assert th == pytest.approx(0.01, rel=0.02)
    assert om == pytest.approx(2.5, rel=0.02)
