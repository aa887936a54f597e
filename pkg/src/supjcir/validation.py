"""Analytic-oracle cross-checks run by ``supjcir validate`` and the tests.

Every check returns a :class:`Check` with the worst error it saw and the
tolerance it was held to; the oracles (scipy ODE and quadrature solvers,
polynomial finite differences) are independent of the code under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .jumps import ExponentialJump, NoJumps, TemperedStable
from .numerics import QuadratureSpec
from .mixing import DiscreteMixing, GammaMixing, mixed_acf
from .orlicz import Bound, Identity, RiskQuery, distorted_acf, stationary_log_disutility
from .process import SupJcirModel, log_mgf, riccati_exponent, stationary_moments

__all__ = [
    "Check",
    "builtin_models",
    "check_riccati",
    "check_gamma_acf",
    "check_moments",
    "check_lambda_limit",
    "check_distorted_acf",
    "fd_cumulants",
    "run_all",
]


_TIGHT = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-16)


@dataclass(frozen=True)
class Check:
    name: str
    max_error: float
    tol: float

    @property
    def passed(self):
        return bool(self.max_error <= self.tol)

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}  {self.name:<28s} max_err={self.max_error:.3e}  tol={self.tol:.1e}"


def builtin_models():
    """Five models from jump-dominated to diffusion-dominated."""
    return {
        "jump-dominated": SupJcirModel(0.2, 0.3, ExponentialJump(2.0, 1.5), GammaMixing(2.0, 0.5)),
        "tempered": SupJcirModel(1.0, 0.5, TemperedStable(0.4, 3.0, 0.5), GammaMixing(2.5, 0.2)),
        "balanced": SupJcirModel(1.0, 0.8, ExponentialJump(0.5, 4.0), GammaMixing(3.0, 1.0)),
        "discrete": SupJcirModel(0.8, 0.6, ExponentialJump(0.3, 5.0), DiscreteMixing((0.3, 0.7), (0.2, 1.5))),
        "diffusion-dominated": SupJcirModel(2.0, 1.0, NoJumps(), GammaMixing(1.8, 0.1)),
    }


def check_riccati(tol=1e-8):
    """Closed-form Riccati exponent vs a high-order adaptive ODE solve."""
    worst = 0.0
    s_grid = np.linspace(0.0, 20.0, 81)
    for p in (0.05, 0.5, 1.5):
        for r in (0.1, 1.0, 4.0):
            for A in (-0.5, 0.0, 0.25, 0.6):
                if not p * A < 1:
                    continue
                sol = solve_ivp(lambda s, u: -r * u + A * r * u * u, (0.0, 20.0), [p],
                                method="DOP853", t_eval=s_grid, rtol=1e-13, atol=1e-300)
                exact = riccati_exponent(p, r, A, s_grid)
                worst = max(worst, float(np.max(np.abs(sol.y[0] - exact) / np.abs(sol.y[0]))))
    return Check("riccati-vs-ode", worst, tol)


def _mixture_acf_quad(omega, theta, h, factor=1.0):
    # (1/R) int e^{-r h} pi(dr) / r with r ~ Gamma(omega, scale theta * factor)
    scale = theta * factor
    logc = -math.lgamma(omega) - omega * math.log(scale)

    def dens_over_r(r, lag):
        return math.exp(logc + (omega - 2.0) * math.log(r) - r / scale - r * lag)

    kw = dict(epsabs=0.0, epsrel=1e-12, limit=500)
    # split off the finite head so the r**(omega - 2) endpoint singularity is
    # handled by the finite-interval extrapolation
    def total(lag):
        return (quad(dens_over_r, 0.0, scale, args=(lag,), **kw)[0]
                + quad(dens_over_r, scale, np.inf, args=(lag,), **kw)[0])

    return total(h) / total(0.0)


def check_gamma_acf(tol=1e-8):
    worst = 0.0
    for omega, theta in ((1.5, 0.05), (2.0, 1.0), (2.5, 0.2), (3.0, 0.1), (5.0, 2.0)):
        for h in (0.1, 1.0, 10.0, 100.0):
            ref = _mixture_acf_quad(omega, theta, h)
            worst = max(worst, abs(mixed_acf(GammaMixing(omega, theta), h) - ref))
    return Check("gamma-acf-vs-quadrature", worst, tol)


def fd_cumulants(model, points=12, degree=8, step=5e-3):
    """First three cumulants from a polynomial fit of the log-MGF near 0."""
    h = min(step, 0.4 * model.p_max / points)
    ps = h * np.arange(points + 1)
    vals = np.array([log_mgf(model, float(p), _TIGHT) for p in ps])
    # K(p) = k1 p + k2 p^2/2 + k3 p^3/6 + ...; fit in the unit variable p/h
    coef = np.polynomial.polynomial.polyfit(ps / h, vals, degree)
    return coef[1] / h, 2.0 * coef[2] / h**2, 6.0 * coef[3] / h**3


def check_moments(models=None, tol_mean=1e-4, tol_skew=1e-3):
    models = builtin_models() if models is None else models
    worst_mv = worst_sk = 0.0
    for model in models.values():
        k1, k2, k3 = fd_cumulants(model)
        m = stationary_moments(model)
        worst_mv = max(worst_mv, abs(k1 / m.mean - 1.0), abs(k2 / m.variance - 1.0))
        worst_sk = max(worst_sk, abs(k3 / k2**1.5 / m.skewness - 1.0))
    return [Check("moments-vs-fd-mean-var", worst_mv, tol_mean),
            Check("moments-vs-fd-skewness", worst_sk, tol_skew)]


def _probe_p(model):
    return 0.25 * model.p_max


def check_lambda_limit(models=None, tol=1e-6):
    """tau(Identity, lambda = 1e-8) against the log-MGF, both bounds."""
    models = builtin_models() if models is None else models
    worst = 0.0
    for model in models.values():
        p = _probe_p(model)
        ref = log_mgf(model, p)
        for bound, q in ((Bound.UPPER, 0.5), (Bound.LOWER, 1.5)):
            query = RiskQuery(p, Identity(), q, 1e-8, 1e-8, bound)
            worst = max(worst, abs(stationary_log_disutility(model, query) - ref))
    return Check("lambda-to-zero-vs-log-mgf", worst, tol)


def check_distorted_acf(tol=1e-8):
    """Distorted Gamma ACF against quadrature over the rescaled mixture."""
    worst = 0.0
    for omega, theta in ((2.0, 1.0), (2.5, 0.2), (4.0, 0.05)):
        model = SupJcirModel(1.0, 0.5, NoJumps(), GammaMixing(omega, theta))
        for bound, q in ((Bound.UPPER, 0.5), (Bound.LOWER, 1.5)):
            query = RiskQuery(0.5, Identity(), q, 1.0, 0.0, bound)
            xi = query.lambda_diff * model.sigma2 * query.p
            factor = 1.0 - xi if bound is Bound.UPPER else 1.0 + xi
            for h in (0.1, 1.0, 10.0, 100.0):
                ref = _mixture_acf_quad(omega, theta, h, factor)
                worst = max(worst, abs(distorted_acf(model, query, h) - ref))
    return Check("distorted-acf-vs-quadrature", worst, tol)


def run_all(models=None, tol=None):
    """Run every check; ``tol`` overrides every tolerance when given."""
    checks = [check_riccati(), check_gamma_acf(), *check_moments(models),
              check_lambda_limit(models), check_distorted_acf()]
    if tol is not None:
        checks = [Check(c.name, c.max_error, tol) for c in checks]
    return checks


