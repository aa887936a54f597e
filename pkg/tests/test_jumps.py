import math

import numpy as np
import pytest
from scipy.integrate import quad

from supjcir.errors import Divergent, InvariantViolation, ParameterOutOfRange, UnsupportedMoment
from supjcir.jumps import (
    DistortedJump,
    ExponentialJump,
    JumpMultiplier,
    NoJumps,
    TemperedStable,
    exp_compensator,
    exp_compensator_array,
    jump_moment,
    weighted_integral,
)


def test_exponential_moments():
    nu = ExponentialJump(2.0, 4.0)
    assert jump_moment(nu, 1) == pytest.approx(0.5)
    assert jump_moment(nu, 2) == pytest.approx(0.25)
    for k in range(1, 6):
        assert jump_moment(nu, k) * 4.0**k / math.factorial(k) == pytest.approx(2.0)


def test_no_jumps():
    for k in (0, 1, 3):
        assert jump_moment(NoJumps(), k) == 0.0
    assert exp_compensator(NoJumps(), 5.0) == 0.0


def test_compensator_examples():
    assert exp_compensator(ExponentialJump(1.0, 2.0), 0.0) == 0.0
    assert exp_compensator(ExponentialJump(1.0, 2.0), 1.0) == pytest.approx(1.0)
    assert exp_compensator(ExponentialJump(3.0, 5.0), -1.0) == pytest.approx(-0.5)


def test_compensator_domain():
    with pytest.raises(ParameterOutOfRange):
        exp_compensator(ExponentialJump(1.0, 2.0), 2.0)


def test_weighted_integral_examples():
    nu = ExponentialJump(2.0, 4.0)
    assert weighted_integral(nu, lambda z: z) == pytest.approx(0.5, rel=1e-9)
    assert weighted_integral(nu, lambda z: z * z) == pytest.approx(0.25, rel=1e-9)
    assert weighted_integral(ExponentialJump(1.0, 2.0), np.expm1) == pytest.approx(1.0, rel=1e-9)


def _tempered_oracle(nu, u):
    # z^{-alpha} goes into quad's algebraic weight; the rest is smooth at 0
    def smooth(z):
        return nu.gamma * math.exp(-nu.beta * z) * (math.expm1(u * z) / z if z > 0 else u)

    head = quad(smooth, 0, 1, weight="alg", wvar=(-nu.alpha, 0.0), epsabs=0, epsrel=1e-13)[0]
    tail = quad(lambda z: nu.gamma * z ** (-1 - nu.alpha) * (math.exp((u - nu.beta) * z) - math.exp(-nu.beta * z)),
                1, np.inf, epsabs=0, epsrel=1e-13, limit=400)[0]
    return head + tail


@pytest.mark.parametrize("alpha", [-1.5, -0.5, 0.0, 0.5, 0.9])
def test_tempered_moments_vs_closed_form(alpha):
    nu = TemperedStable(0.7, 2.5, alpha)
    for k in (1, 2, 3):
        exact = nu.gamma * math.gamma(k - alpha) / nu.beta ** (k - alpha)
        assert jump_moment(nu, k) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("alpha", [-0.5, 0.3, 0.8])
def test_tempered_compensator_vs_quad(alpha):
    nu = TemperedStable(0.7, 2.5, alpha)
    for u in (-1.0, 0.5, 2.0):
        ref = _tempered_oracle(nu, u)
        assert exp_compensator(nu, u) == pytest.approx(ref, rel=1e-9)


def test_compensator_array_matches_scalar():
    nu = TemperedStable(0.4, 3.0, 0.5)
    u = np.array([0.0, 0.1, 1.0, 2.5])
    arr = exp_compensator_array(nu, u)
    for ui, ai in zip(u, arr):
        assert ai == pytest.approx(exp_compensator(nu, float(ui)), rel=1e-9, abs=1e-15)


def test_infinite_activity_total_mass():
    with pytest.raises(UnsupportedMoment):
        jump_moment(TemperedStable(1.0, 1.0, 0.5), 0)
    assert jump_moment(TemperedStable(1.0, 2.0, -1.0), 0) == pytest.approx(1.0 / 2.0, rel=1e-9)


def test_compensator_convex_increasing():
    nu = ExponentialJump(1.0, 3.0)
    us = np.linspace(-2, 2.9, 30)
    vals = [exp_compensator(nu, u) for u in us]
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.diff(vals, 2) > 0)


def test_divergence_precheck():
    with pytest.raises(Divergent):
        weighted_integral(ExponentialJump(1.0, 2.0), lambda z: np.exp(2.5 * z))


def test_distorted_density_and_tail():
    g = JumpMultiplier(lambda z: np.exp(0.5 * z), 0.5)
    d = DistortedJump(ExponentialJump(1.0, 2.0), g)
    assert d.tail_rate == 1.5
    # int z e^{z/2} 2 e^{-2z} dz = 2 / 1.5^2
    assert weighted_integral(d, lambda z: z) == pytest.approx(2.0 / 2.25, rel=1e-9)


@pytest.mark.parametrize("args", [(0.0, 1.0), (1.0, -1.0)])
def test_exponential_invariants(args):
    with pytest.raises(InvariantViolation):
        ExponentialJump(*args)


def test_tempered_invariants():
    with pytest.raises(InvariantViolation):
        TemperedStable(1.0, 1.0, 1.0)
