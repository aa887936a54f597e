"""Superposed jump-CIR model: Riccati exponent, log-MGF, moments, ACF."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, ParameterOutOfRange
from .jumps import (
    DistortedJump,
    NoJumps,
    exp_compensator,
    exp_compensator_array,
    jump_moment,
)
from .mixing import DiscreteMixing, GammaMixing, inverse_moment, mixed_acf
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate_interval, integrate_semi_infinite

__all__ = [
    "SupJcirModel",
    "JcirComponent",
    "Moments",
    "riccati_exponent",
    "log_mgf",
    "stationary_moments",
    "model_acf",
    "component_log_mgf",
    "components",
]


@dataclass(frozen=True)
class SupJcirModel:
    a: float
    sigma: float
    jumps: object
    mixing: object

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise InvariantViolation("a > 0", f"drift level must be positive, got {self.a!r}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise InvariantViolation("sigma > 0", f"diffusion scale must be positive, got {self.sigma!r}")
        if not isinstance(self.mixing, (GammaMixing, DiscreteMixing)):
            raise InvariantViolation("mixing", "mixing must be GammaMixing or DiscreteMixing")
        if not math.isfinite(inverse_moment(self.mixing)):
            raise InvariantViolation("R finite", "inverse moment of the mixing law must be finite")

    @property
    def R(self):
        return inverse_moment(self.mixing)

    @property
    def sigma2(self):
        return self.sigma * self.sigma

    @property
    def p_max(self):
        """Upper end of the MGF domain, min(2/sigma^2, beta)."""
        return min(2.0 / self.sigma2, self.jumps.tail_rate)


@dataclass(frozen=True)
class JcirComponent:
    """One CIR-type factor ``dX = (b - kappa X) dt + sqrt(d X) dB + dL``."""

    drift_const: float
    reversion: float
    diffusion_factor: float
    jumps: object

    def __post_init__(self):
        if not self.reversion > 0:
            raise InvariantViolation("reversion > 0", f"got {self.reversion!r}")
        if not self.diffusion_factor > 0:
            raise InvariantViolation("diffusion_factor > 0", f"got {self.diffusion_factor!r}")
        if self.drift_const < 0:
            raise InvariantViolation("drift_const >= 0", f"got {self.drift_const!r}")


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    skewness: float

    def __post_init__(self):
        if self.variance < 0:
            raise InvariantViolation("variance >= 0", f"got {self.variance!r}")


def riccati_exponent(p, r, sigma2_half, s):
    """u(s) = 1 / (A + (1/p - A) e^{r s}), solving u' = -r u + A r u^2, u(0) = p."""
    if not p > 0:
        raise ParameterOutOfRange(f"p must be positive, got {p!r}")
    gap = 1.0 / p - sigma2_half
    if not gap > 0:
        raise ParameterOutOfRange(
            f"p={p:.6g} must satisfy p < 1/A = {1.0 / sigma2_half:.6g}"
        )
    s = np.asarray(s, dtype=float)
    with np.errstate(over="ignore"):
        out = 1.0 / (sigma2_half + gap * np.exp(r * s))
    return float(out) if out.ndim == 0 else out


def _check_mgf_domain(p, sigma2, tail_rate):
    if p < 0:
        raise ParameterOutOfRange("negative p is not supported")
    limit = min(2.0 / sigma2, tail_rate)
    if p >= limit:
        raise ParameterOutOfRange(f"p={p:.6g} must stay below min(2/sigma^2, beta) = {limit:.6g}")


def log_mgf(model: SupJcirModel, p: float, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Stationary log E[exp(p Y)], integrated over the Riccati time variable."""
    if p == 0:
        return 0.0
    _check_mgf_domain(p, model.sigma2, model.jumps.tail_rate)
    half = 0.5 * model.sigma2

    def integrand(s):
        u = riccati_exponent(p, 1.0, half, s)
        return model.a * u + exp_compensator_array(model.jumps, u, spec)

    return model.R * integrate_semi_infinite(integrand, spec)


def stationary_moments(model: SupJcirModel) -> Moments:
    m1 = jump_moment(model.jumps, 1)
    m2 = jump_moment(model.jumps, 2)
    m3 = jump_moment(model.jumps, 3)
    R, s2 = model.R, model.sigma2
    level = model.a + m1
    mean = R * level
    var = R * (0.5 * m2 + 0.5 * s2 * level)
    third = R * (0.5 * s2 * s2 * level + 0.5 * s2 * m2 + m3 / 3.0)
    return Moments(mean, var, third / var**1.5)


def model_acf(model: SupJcirModel, h: float) -> float:
    return mixed_acf(model.mixing, h)


def components(model: SupJcirModel):
    """Independent JCIR factors of a discretely mixed model."""
    if not isinstance(model.mixing, DiscreteMixing):
        raise TypeError("components() needs a DiscreteMixing model")
    out = []
    for c, r in zip(model.mixing.weights, model.mixing.rates):
        out.append(JcirComponent(model.a * c, r, model.sigma2 * r, _scale_measure(model.jumps, c)))
    return out


@dataclass(frozen=True)
class _ScaledJump:
    """``c * nu`` for a component of the superposition."""

    base: object
    weight: float

    @property
    def tail_rate(self):
        return self.base.tail_rate

    @property
    def finite_activity(self):
        return self.base.finite_activity

    def density(self, z):
        return self.weight * self.base.density(z)


def _scale_measure(measure, c):
    if isinstance(measure, NoJumps) or c == 1.0:
        return measure
    return _ScaledJump(measure, c)


def _compensator(measure, u, spec):
    if isinstance(measure, _ScaledJump):
        return measure.weight * _compensator(measure.base, u, spec)
    if isinstance(measure, DistortedJump):
        return exp_compensator(measure, u, spec)
    return exp_compensator_array(measure, np.array([u]), spec)[0]


def component_log_mgf(component: JcirComponent, p: float, horizon=None,
                      spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """log E[exp(p X)] contribution of one factor.

    ``horizon=None`` gives the stationary value; a finite ``horizon`` integrates
    the Riccati flow over [0, horizon] only (the MGF after that much time from
    a zero initial state).
    """
    if p == 0:
        return 0.0
    kappa, d = component.reversion, component.diffusion_factor
    A = d / (2.0 * kappa)
    _check_mgf_domain(p, 2.0 * A, component.jumps.tail_rate)

    def integrand(s):
        u = riccati_exponent(p, kappa, A, s)
        jump = np.array([_compensator(component.jumps, float(v), spec) for v in np.atleast_1d(u)])
        return component.drift_const * u + jump.reshape(np.shape(u))

    if horizon is None:
        return integrate_semi_infinite(integrand, spec.scaled(1.0 / kappa))
    return integrate_interval(integrand, 0.0, float(horizon), spec)
