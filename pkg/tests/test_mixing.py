import math

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import quad

from supjcir.errors import InvariantViolation
from supjcir.mixing import (
    DiscreteMixing,
    GammaMixing,
    gamma_p,
    gamma_quantile,
    inverse_moment,
    mixed_acf,
    quantile_discretize,
)


def test_inverse_moment_examples():
    assert inverse_moment(GammaMixing(2.0, 0.5)) == pytest.approx(2.0)
    assert inverse_moment(DiscreteMixing((0.5, 0.5), (1.0, 2.0))) == pytest.approx(0.75)
    assert inverse_moment(DiscreteMixing.single(4.0)) == 0.25


def test_inverse_moment_vs_quadrature():
    mix = GammaMixing(2.7, 0.3)
    dens = stats.gamma(mix.omega, scale=mix.theta).pdf
    ref = quad(lambda r: dens(r) / r, 0, np.inf, epsabs=0, epsrel=1e-12)[0]
    assert inverse_moment(mix) == pytest.approx(ref, rel=1e-10)


def test_single_atom_at_median():
    d = quantile_discretize(GammaMixing(2.0, 1.0), 1)
    assert d.weights == (1.0,)
    assert d.rates[0] == pytest.approx(1.67835, abs=1e-5)


def test_equal_weights():
    d = quantile_discretize(GammaMixing(2.0, 1.0), 3)
    assert d.weights == pytest.approx((1 / 3, 1 / 3, 1 / 3))


@pytest.mark.parametrize("n", [2, 10, 100])
def test_atoms_increasing(n):
    d = quantile_discretize(GammaMixing(1.6, 0.2), n)
    assert np.all(np.diff(d.rates) > 0)
    assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-14)


def test_inverse_moment_converges():
    mix = GammaMixing(2.0, 0.5)
    errs = [abs(inverse_moment(quantile_discretize(mix, n)) - 2.0) / 2.0 for n in (10, 100, 1000)]
    assert errs[-1] <= 0.01
    assert errs[0] > errs[1] > errs[2]


def test_midpoint_rule_is_available():
    mix = GammaMixing(2.0, 0.5)
    mid = quantile_discretize(mix, 100, rule="midpoint")
    cor = quantile_discretize(mix, 100)
    assert mid.rates[1:] == cor.rates[1:]
    assert abs(inverse_moment(cor) - 2.0) < abs(inverse_moment(mid) - 2.0)


def test_discrete_acf_converges_pointwise():
    mix = GammaMixing(2.5, 0.2)
    d = quantile_discretize(mix, 2000)
    for h in (0.1, 1.0, 10.0):
        assert abs(mixed_acf(d, h) - mixed_acf(mix, h)) < 1e-3


def test_acf_examples():
    assert mixed_acf(GammaMixing(2.0, 1.0), 0.0) == 1.0
    assert mixed_acf(DiscreteMixing((0.2, 0.8), (1.0, 3.0)), 0.0) == pytest.approx(1.0)
    assert mixed_acf(GammaMixing(2.0, 1.0), 1.0) == pytest.approx(0.5)
    assert mixed_acf(DiscreteMixing.single(2.0), 0.5) == pytest.approx(math.exp(-1.0))
    assert mixed_acf(GammaMixing(3.0, 0.1), 20.0) == pytest.approx(1 / 9)


def test_gamma_acf_vs_quadrature():
    mix = GammaMixing(2.5, 0.2)
    dens = stats.gamma(mix.omega, scale=mix.theta).pdf
    R = inverse_moment(mix)
    ref = quad(lambda r: math.exp(-5.0 * r) * dens(r) / r, 0, np.inf, epsabs=0, epsrel=1e-12)[0] / R
    assert mixed_acf(mix, 5.0) == pytest.approx(ref, abs=1e-8)


def test_negative_lag():
    with pytest.raises(ValueError):
        mixed_acf(GammaMixing(2.0, 1.0), -1.0)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.5, 30.0])
def test_incomplete_gamma_vs_scipy(a):
    from scipy.special import gammainc, gammaincinv
    for x in (1e-3, 0.5, a, 3 * a + 5):
        assert gamma_p(a, x) == pytest.approx(gammainc(a, x), rel=1e-12, abs=1e-300)
    for u in (1e-6, 0.3, 0.5, 0.999):
        assert gamma_quantile(a, u) == pytest.approx(gammaincinv(a, u), rel=1e-11)


@pytest.mark.parametrize("args", [(1.0, 1.0), (2.0, 0.0)])
def test_gamma_invariants(args):
    with pytest.raises(InvariantViolation):
        GammaMixing(*args)


@pytest.mark.parametrize("w,r", [((0.5, 0.6), (1.0, 2.0)), ((0.5, 0.5), (2.0, 1.0)), ((1.0,), (0.0,)), ((), ())])
def test_discrete_invariants(w, r):
    with pytest.raises(InvariantViolation):
        DiscreteMixing(w, r)
