"""Reversion-speed distributions and the autocorrelation they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, NonConvergent

__all__ = [
    "GammaMixing",
    "DiscreteMixing",
    "inverse_moment",
    "quantile_discretize",
    "mixed_acf",
    "gamma_p",
    "gamma_quantile",
]


@dataclass(frozen=True)
class GammaMixing:
    """Gamma law of the reversion speed, shape ``omega`` and scale ``theta``."""

    omega: float
    theta: float

    variant = "gamma"

    def __post_init__(self):
        if not self.omega > 1:
            raise InvariantViolation("GammaMixing: omega > 1")
        if not self.theta > 0:
            raise InvariantViolation("GammaMixing: theta > 0")

    def scaled(self, factor):
        return GammaMixing(self.omega, self.theta * factor)


@dataclass(frozen=True)
class DiscreteMixing:
    weights: tuple
    rates: tuple

    variant = "discrete"

    def __post_init__(self):
        w = tuple(float(c) for c in self.weights)
        r = tuple(float(x) for x in self.rates)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "rates", r)
        if len(w) == 0 or len(w) != len(r):
            raise InvariantViolation("DiscreteMixing: weights and rates of equal nonzero length")
        if any(not c > 0 for c in w):
            raise InvariantViolation("DiscreteMixing: all c_i > 0")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise InvariantViolation("DiscreteMixing: sum of c_i = 1")
        if any(not (x > 0 and math.isfinite(x)) for x in r):
            raise InvariantViolation("DiscreteMixing: r_i positive and bounded")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise InvariantViolation("DiscreteMixing: r_i strictly increasing")

    @classmethod
    def single(cls, rate):
        return cls((1.0,), (rate,))

    def scaled(self, factor):
        return DiscreteMixing(self.weights, tuple(r * factor for r in self.rates))

    def __len__(self):
        return len(self.weights)


def inverse_moment(mixing):
    """``R``: the mean of 1/r under the mixing law."""
    if isinstance(mixing, GammaMixing):
        return 1.0 / (mixing.theta * (mixing.omega - 1.0))
    return math.fsum(c / r for c, r in zip(mixing.weights, mixing.rates))


def mixed_acf(mixing, h):
    """Autocorrelation of the superposition at lag ``h >= 0``."""
    if h < 0:
        raise ValueError("lag must be nonnegative")
    if isinstance(mixing, GammaMixing):
        return (1.0 + mixing.theta * h) ** (-(mixing.omega - 1.0))
    c = np.asarray(mixing.weights)
    r = np.asarray(mixing.rates)
    w = c / r
    return float(np.sum(w * np.exp(-r * h)) / np.sum(w))


# -- regularized incomplete gamma -------------------------------------------

def _gser(a, x):
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise NonConvergent("incomplete gamma series")


def _gcf(a, x):
    # modified Lentz for the continued fraction of Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    raise NonConvergent("incomplete gamma continued fraction")


def gamma_p(a, x):
    """Regularized lower incomplete gamma P(a, x)."""
    if x <= 0:
        return 0.0
    if x < a + 1.0:
        return _gser(a, x)
    return 1.0 - _gcf(a, x)


def gamma_quantile(a, u):
    """x with P(a, x) = u, by Newton steps kept inside a bisection bracket."""
    if not 0 < u < 1:
        raise ValueError("probability must lie in (0, 1)")
    lo, hi = 0.0, max(1.0, a)
    while gamma_p(a, hi) < u:
        lo, hi = hi, 2.0 * hi
    x = 0.5 * (lo + hi)
    log_norm = math.lgamma(a)
    for _ in range(200):
        f = gamma_p(a, x) - u
        if f > 0:
            hi = x
        else:
            lo = x
        pdf = math.exp((a - 1.0) * math.log(x) - x - log_norm)
        step = f / pdf if pdf > 0 else math.inf
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 * x or hi - lo <= 1e-15 * hi:
            return nxt
        x = nxt
    raise NonConvergent("gamma quantile did not converge")


def quantile_discretize(mixing: GammaMixing, n: int, rule: str = "corrected"):
    """Equal-weight atoms at the Gamma quantiles of probabilities (i - 1/2)/n.

    With ``rule="corrected"`` (the default) the lowest atom is instead placed
    where it reproduces the exact inverse moment of its quantile bin
    ``(0, F^-1(1/n))``. The plain midpoint rule converges like
    ``n**(1/omega - 1)`` because ``1/r`` is singular at the lower quantiles;
    the correction removes almost all of that error. A single atom (n=1)
    always sits at the median. ``rule="midpoint"`` gives the uncorrected
    atoms.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rule not in ("corrected", "midpoint"):
        raise ValueError(f"unknown rule {rule!r}")
    w, th = mixing.omega, mixing.theta
    rates = [th * gamma_quantile(w, (i - 0.5) / n) for i in range(1, n + 1)]
    if rule == "corrected" and n > 1:
        edge = gamma_quantile(w, 1.0 / n)
        bin_inverse = inverse_moment(mixing) * gamma_p(w - 1.0, edge)
        rates[0] = (1.0 / n) / bin_inverse
    weights = [1.0 / n] * n
    # keep sum(c_i) == 1 within rounding for large n
    weights[-1] = 1.0 - math.fsum(weights[:-1])
    return DiscreteMixing(tuple(weights), tuple(rates))
