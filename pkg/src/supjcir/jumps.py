"""Levy measures of the driving subordinator.

Three families are supported: compound-Poisson exponential jumps
``mu * beta * exp(-beta z) dz``, the tempered-stable family
``gamma * z**(-1-alpha) * exp(-beta z) dz`` and the zero measure. A measure
may also be reweighted by a positive multiplier ``g(z)`` (a distorted jump
density); that variant shares the same integration path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import Divergent, InvariantViolation, ParameterOutOfRange, UnsupportedMoment
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate_semi_infinite

__all__ = [
    "ExponentialJump",
    "TemperedStable",
    "NoJumps",
    "JumpMultiplier",
    "DistortedJump",
    "jump_moment",
    "exp_compensator",
    "weighted_integral",
    "exp_compensator_array",
    "kernel_params",
]


@dataclass(frozen=True)
class ExponentialJump:
    mu: float
    beta: float

    variant = "exponential"

    def __post_init__(self):
        if not self.mu > 0:
            raise InvariantViolation("ExponentialJump: mu > 0")
        if not self.beta > 0:
            raise InvariantViolation("ExponentialJump: beta > 0")

    @property
    def tail_rate(self):
        return self.beta

    @property
    def finite_activity(self):
        return True

    def density(self, z):
        return self.mu * self.beta * np.exp(-self.beta * z)

    def log_density(self, z):
        return math.log(self.mu * self.beta) - self.beta * z


@dataclass(frozen=True)
class TemperedStable:
    gamma: float
    beta: float
    alpha: float

    variant = "tempered_stable"

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvariantViolation("TemperedStable: gamma > 0")
        if not self.beta > 0:
            raise InvariantViolation("TemperedStable: beta > 0")
        if not self.alpha < 1:
            raise InvariantViolation("TemperedStable: alpha < 1")

    @property
    def tail_rate(self):
        return self.beta

    @property
    def finite_activity(self):
        return self.alpha < 0

    def density(self, z):
        return self.gamma * z ** (-1.0 - self.alpha) * np.exp(-self.beta * z)

    def log_density(self, z):
        return math.log(self.gamma) - (1.0 + self.alpha) * np.log(z) - self.beta * z


@dataclass(frozen=True)
class NoJumps:
    variant = "none"

    @property
    def tail_rate(self):
        return math.inf

    @property
    def finite_activity(self):
        return True

    def density(self, z):
        return np.zeros_like(np.asarray(z, dtype=float))


@dataclass(frozen=True)
class JumpMultiplier:
    """Positive function ``g`` multiplying a Levy measure.

    ``growth_rate`` is the asymptotic exponential growth rate of ``g``;
    integrability against a measure with tail ``exp(-beta z)`` needs
    ``growth_rate < beta``. ``log_func``, when given, evaluates ``log g``
    without the underflow of ``g`` itself.
    """

    func: Callable[[np.ndarray], np.ndarray]
    growth_rate: float = 0.0
    label: str = ""
    log_func: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, z):
        return self.func(np.asarray(z, dtype=float))

    def log(self, z):
        z = np.asarray(z, dtype=float)
        if self.log_func is not None:
            return self.log_func(z)
        with np.errstate(divide="ignore"):
            return np.log(self.func(z))


IDENTITY_MULTIPLIER = JumpMultiplier(lambda z: np.ones_like(z), 0.0, "identity")


@dataclass(frozen=True)
class DistortedJump:
    base: object
    multiplier: JumpMultiplier

    variant = "distorted"

    def __post_init__(self):
        if isinstance(self.base, DistortedJump):
            raise InvariantViolation("DistortedJump: base must be an undistorted measure")

    @property
    def tail_rate(self):
        return self.base.tail_rate - self.multiplier.growth_rate

    @property
    def finite_activity(self):
        return self.base.finite_activity

    def density(self, z):
        z = np.asarray(z, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            d = self.base.density(z)
            out = d * self.multiplier(z)
        out[d == 0] = 0.0
        return out


def _scale(measure):
    rate = measure.tail_rate
    return 1.0 / rate if math.isfinite(rate) and rate > 0 else 1.0


def _precheck_growth(measure, g):
    base = measure.base if isinstance(measure, DistortedJump) else measure
    beta = base.tail_rate
    zs = np.array([10.0, 20.0, 40.0]) / beta
    with np.errstate(all="ignore"):
        vals = np.abs(np.asarray(g(zs), dtype=float))
        if isinstance(measure, DistortedJump):
            vals = vals * np.abs(measure.multiplier(zs))
        logs = np.log(vals)
    if not np.all(np.isfinite(logs)):
        if np.any(np.isposinf(logs)) or np.any(np.isnan(logs)):
            raise Divergent("integrand overflows in the tail")
        return
    rate = max((logs[1] - logs[0]) / (zs[1] - zs[0]), (logs[2] - logs[1]) / (zs[2] - zs[1]))
    if rate >= 0.999 * beta:
        raise Divergent(
            f"integrand grows at exponential rate {rate:.6g} >= tail rate {beta:.6g}"
        )


def weighted_integral(measure, g, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Integral of ``g(z) nu(dz)`` over (0, inf); ``g`` must be vectorized."""
    if isinstance(measure, NoJumps):
        return 0.0
    _precheck_growth(measure, g)

    def integrand(z):
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            d = measure.density(z)
            out = np.asarray(g(z), dtype=float) * d
        out[d == 0] = 0.0
        return out

    return integrate_semi_infinite(integrand, spec.scaled(_scale(measure)))


def jump_moment(measure, k: int, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """``M_k``, the k-th moment of the jump measure; k=0 is total activity."""
    if k < 0 or int(k) != k:
        raise ParameterOutOfRange("moment order must be a nonnegative integer")
    if isinstance(measure, NoJumps):
        return 0.0
    if k == 0 and not measure.finite_activity:
        raise UnsupportedMoment("total jump activity is infinite for alpha >= 0")
    if isinstance(measure, ExponentialJump):
        return measure.mu * math.factorial(k) / measure.beta**k
    return weighted_integral(measure, lambda z: z**k, spec)


def exp_compensator(measure, u: float, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """``int (exp(u z) - 1) nu(dz)``, finite for ``u`` below the tail rate."""
    if isinstance(measure, NoJumps) or u == 0:
        return 0.0
    if u >= measure.tail_rate:
        raise ParameterOutOfRange(
            f"u={u:.6g} must stay below the jump tail rate {measure.tail_rate:.6g}"
        )
    if isinstance(measure, ExponentialJump):
        return measure.mu * u / (measure.beta - u)
    return weighted_integral(measure, lambda z: np.expm1(u * z), spec)


def kernel_params(measure):
    """``(kind, j0, j1, j2)`` describing ``measure`` to the compiled kernel."""
    if isinstance(measure, NoJumps):
        return 0, 0.0, 1.0, 0.0
    if isinstance(measure, ExponentialJump):
        return 1, measure.mu, measure.beta, 0.0
    if isinstance(measure, TemperedStable):
        return 2, measure.gamma, measure.beta, measure.alpha
    raise TypeError(f"no kernel representation for {type(measure).__name__}")


def exp_compensator_array(measure, u, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Vectorized :func:`exp_compensator` for ``0 <= u < tail_rate``."""
    from .kernels import jump_term

    u = np.asarray(u, dtype=float)
    if isinstance(measure, NoJumps):
        return np.zeros_like(u)
    if np.any(u >= measure.tail_rate) or np.any(u < 0):
        raise ParameterOutOfRange("u must lie in [0, tail rate) for the vectorized compensator")
    if isinstance(measure, ExponentialJump):
        return measure.mu * u / (measure.beta - u)
    if isinstance(measure, TemperedStable):
        kind, j0, j1, j2 = kernel_params(measure)
        out = jump_term(u.ravel(), 1, 0.0, 0.5, 1.0, 1.0, kind, j0, j1, j2,
                        min(spec.rel_tol, 1e-11), 1e-300)
        return out.reshape(u.shape)
    return np.array([exp_compensator(measure, float(v), spec) for v in u.ravel()]).reshape(u.shape)
