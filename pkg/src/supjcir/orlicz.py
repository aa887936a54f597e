"""Robust dynamic Orlicz risk bounds for the superposed jump-CIR model.

The upper (lower) bound is the exponential disutility maximised (minimised)
over drift tilts of the Brownian part and multiplicative distortions of the
jump density, penalised by relative entropy (diffusion) and a Tsallis
divergence of order ``q`` (jumps). Both bounds are exponential-affine:
``log Psi = sum_i rho_i x_i + tau`` with ``rho`` solving a Riccati equation
and ``tau`` an integral of ``rho`` against the drift and the jump measure.

The stationary value ``tau_{-inf}`` is computed by changing variables from
time to ``rho`` itself: since ``d rho / ds = -rho (1 - A rho)`` for the unit
reversion speed,

    int_0^inf F(rho(s)) ds = int_0^p F(rho) / (rho (1 - A rho)) d rho,

which turns an infinite-horizon nested integral into a short smooth one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDistortion,
    Divergent,
    DomainError,
    InadmissibleQuery,
    InvariantViolation,
    NonConvergent,
    ParameterOutOfRange,
)
from .jumps import (
    DistortedJump,
    JumpMultiplier,
    NoJumps,
    jump_moment,
    kernel_params,
    weighted_integral,
)
from .kernels import jump_term
from .mixing import DiscreteMixing, GammaMixing, inverse_moment, mixed_acf
from .numerics import DEFAULT_ODE, OdeSpec, integrate_adaptive_gl, solve_ode
from .process import JcirComponent, SupJcirModel, riccati_exponent, stationary_moments

__all__ = [
    "OrliczFunction",
    "safe_exp",
    "Identity",
    "PowerConvex",
    "PowerConcave",
    "ExponentialOrlicz",
    "Bound",
    "RiskQuery",
    "RiskReport",
    "Reason",
    "Admissibility",
    "DistortedModel",
    "q_exp",
    "aversion_shift",
    "sigma2_half",
    "rho",
    "stationary_log_disutility",
    "finite_horizon_log_disutility",
    "normalized_disutility",
    "worst_case_distortion",
    "distorted_model",
    "distorted_acf",
    "distorted_moment_ratios",
    "entropy_rates",
    "admissibility_check",
    "require_admissible",
]

# inner jump integral tolerance; the outer rho quadrature runs at 1e-10
_INNER_REL = 1e-12
# below this the jump aversion is replaced by its exact lambda -> 0 limit;
# 1/(lambda Phi'(1)) would overflow and K(u) = u (1 + O(lambda u)) anyway
LAMBDA_FLOOR = 1e-150


# -- Orlicz functions ---------------------------------------------------------

_VARIANTS = ("identity", "pow", "powinv", "exp")


@dataclass(frozen=True)
class OrliczFunction:
    """Phi with Phi(0) = 0, Phi(1) = 1.

    ``variant`` is one of ``identity`` (x), ``pow`` (x**m, m > 1),
    ``powinv`` (x**(1/m), m > 1) and ``exp`` ((e^{mx} - 1)/(e^m - 1), m > 0).
    """

    variant: str
    m: float = 1.0

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise InvariantViolation("Phi variant", f"unknown Orlicz variant {self.variant!r}")
        if self.variant in ("pow", "powinv") and not self.m > 1:
            raise InvariantViolation("m > 1", f"power Orlicz functions need m > 1, got {self.m!r}")
        if self.variant == "exp" and not self.m > 0:
            raise InvariantViolation("m > 0", f"exponential Orlicz function needs m > 0, got {self.m!r}")
        if self.variant == "identity":
            object.__setattr__(self, "m", 1.0)
        if abs(self(0.0)) > 1e-14 or abs(self(1.0) - 1.0) > 1e-12:
            raise InvariantViolation("Phi(0)=0, Phi(1)=1", f"normalisation fails for {self}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.variant == "identity":
            out = x
        elif self.variant == "pow":
            out = x**self.m
        elif self.variant == "powinv":
            out = x ** (1.0 / self.m)
        else:
            out = np.expm1(self.m * x) / math.expm1(self.m)
        return float(out) if out.ndim == 0 else out

    @property
    def d1(self):
        """Phi'(1)."""
        m = self.m
        if self.variant == "identity":
            return 1.0
        if self.variant == "pow":
            return m
        if self.variant == "powinv":
            return 1.0 / m
        return m * math.exp(m) / math.expm1(m)

    @property
    def d2(self):
        """Phi''(1)."""
        m = self.m
        if self.variant == "identity":
            return 0.0
        if self.variant == "pow":
            return m * (m - 1.0)
        if self.variant == "powinv":
            return (1.0 / m) * (1.0 / m - 1.0)
        return m * m * math.exp(m) / math.expm1(m)

    @property
    def convex(self):
        return self.variant in ("identity", "pow", "exp")

    @property
    def concave(self):
        return self.variant in ("identity", "powinv")

    @property
    def power(self):
        """Exponent e with Phi(x) = x**e, or None for the exponential family."""
        if self.variant == "exp":
            return None
        if self.variant == "powinv":
            return 1.0 / self.m
        return self.m

    @classmethod
    def parse(cls, text: str) -> "OrliczFunction":
        """``identity``, ``pow:m``, ``powinv:m`` or ``exp:m``."""
        name, _, arg = text.strip().partition(":")
        name = name.lower()
        if name == "identity" and not arg:
            return Identity()
        if name in ("pow", "powinv", "exp") and arg:
            try:
                m = float(arg)
            except ValueError:
                raise ValueError(f"bad Orlicz parameter in {text!r}") from None
            return cls(name, m)
        raise ValueError(f"cannot parse Orlicz function {text!r}")

    def __str__(self):
        return "identity" if self.variant == "identity" else f"{self.variant}:{self.m!r}"


def Identity():
    return OrliczFunction("identity")


def PowerConvex(m):
    return OrliczFunction("pow", m)


def PowerConcave(m):
    return OrliczFunction("powinv", m)


def ExponentialOrlicz(m):
    return OrliczFunction("exp", m)


class Bound(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    @property
    def sign(self):
        return 1 if self is Bound.UPPER else -1


@dataclass(frozen=True)
class RiskQuery:
    """One risk evaluation request.

    The pairing rules between bound, ``q`` and the shape of ``phi`` are
    checked by :func:`admissibility_check`, not here, so that an invalid
    pairing can be reported as a structured reason.
    """

    p: float
    phi: OrliczFunction
    q: float
    lambda_diff: float
    lambda_jump: float
    bound: Bound

    def __post_init__(self):
        if not isinstance(self.bound, Bound):
            object.__setattr__(self, "bound", Bound(self.bound))
        if not (self.q > 0 and math.isfinite(self.q)):
            raise InvariantViolation("q > 0", f"Tsallis order must be positive, got {self.q!r}")
        if not (self.lambda_diff >= 0 and self.lambda_jump >= 0):
            raise InvariantViolation("lambda >= 0", "uncertainty aversion must be nonnegative")
        if not math.isfinite(self.p):
            raise InvariantViolation("p finite", f"got {self.p!r}")

    def baseline(self):
        """Same query without model uncertainty (lambda -> 0)."""
        return RiskQuery(self.p, self.phi, self.q, 0.0, 0.0, self.bound)

    def with_lambdas(self, lambda_diff, lambda_jump):
        return RiskQuery(self.p, self.phi, self.q, lambda_diff, lambda_jump, self.bound)


@dataclass
class RiskReport:
    log_disutility: float
    disutility: float
    baseline_log_disutility: float
    baseline: float
    normalized_U: float
    xi: float
    acf_theta_eff: float | None
    acf_omega: float | None
    distorted_rates: tuple | None
    normalized_A: float | None
    normalized_V: float | None
    entropy_diff: float
    entropy_jump: float
    notes: list = field(default_factory=list)


# -- elementary pieces ----------------------------------------------------------

def safe_exp(x):
    """exp that saturates to inf instead of raising OverflowError."""
    return math.exp(x) if x < 709.78 else math.inf


def q_exp(z, q):
    """Tsallis q-exponential (1 + (1-q) z)^{1/(1-q)}; exp(z) at q = 1."""
    z = np.asarray(z, dtype=float)
    if q == 1.0:
        out = np.exp(z)
    else:
        base = 1.0 + (1.0 - q) * z
        if np.any(base <= 0):
            raise DomainError(f"q-exponential undefined: 1 + (1-q) z <= 0 at q={q!r}")
        out = np.exp(np.log(base) / (1.0 - q))
    return float(out) if out.ndim == 0 else out


def aversion_shift(phi: OrliczFunction, lambda_diff: float, bound: Bound) -> float:
    d1, d2 = phi.d1, phi.d2
    if Bound(bound) is Bound.UPPER:
        return (d1 * d1 * lambda_diff + d2) / d1
    return (d1 * d1 * lambda_diff - d2) / d1


def sigma2_half(model: SupJcirModel, query: RiskQuery) -> float:
    """Effective A in the Riccati exponent for the query's bound."""
    shift = aversion_shift(query.phi, query.lambda_diff, query.bound)
    if query.bound is Bound.UPPER:
        return 0.5 * model.sigma2 * (1.0 + shift)
    return 0.5 * model.sigma2 * (1.0 - shift)


def rho(query: RiskQuery, model: SupJcirModel, r: float, time_to_horizon):
    A = sigma2_half(model, query)
    if query.bound is Bound.UPPER:
        if not query.p * A < 1.0:
            raise ParameterOutOfRange(
                f"upper bound needs p < 2/(sigma^2 (1 + shift)) = {1.0 / A:.6g}, got p={query.p:.6g}"
            )
    elif not query.p < 2.0 / model.sigma2:
        raise ParameterOutOfRange(
            f"lower bound needs p < 2/sigma^2 = {2.0 / model.sigma2:.6g}, got p={query.p:.6g}"
        )
    return riccati_exponent(query.p, r, A, time_to_horizon)


# -- admissibility ------------------------------------------------------------

class Reason(enum.Enum):
    WRONG_Q = "WrongQ"
    WRONG_PHI_SHAPE = "WrongPhiShape"
    P_OUT_OF_RANGE = "POutOfRange"
    JUMP_INTEGRABILITY_FAIL = "JumpIntegrabilityFail"


@dataclass(frozen=True)
class Admissibility:
    reason: Reason | None = None
    message: str = ""

    @property
    def ok(self):
        return self.reason is None

    def __bool__(self):
        return self.ok


def _has_jumps(model):
    return not isinstance(model.jumps, NoJumps)


def admissibility_check(model: SupJcirModel, query: RiskQuery) -> Admissibility:
    """First violated hypothesis of the closed-form bound, or ok."""
    q, p, phi = query.q, query.p, query.phi
    upper = query.bound is Bound.UPPER
    if upper and not (0 < q < 1):
        return Admissibility(Reason.WRONG_Q, f"upper bound needs 0 < q < 1, got q={q!r}")
    if not upper and not q >= 1:
        return Admissibility(Reason.WRONG_Q, f"lower bound needs q >= 1, got q={q!r}")
    if upper and not phi.convex:
        return Admissibility(Reason.WRONG_PHI_SHAPE, f"upper bound needs a convex Phi, got {phi}")
    if not upper and not phi.concave:
        return Admissibility(Reason.WRONG_PHI_SHAPE, f"lower bound needs a concave Phi, got {phi}")

    beta = model.jumps.tail_rate
    if upper:
        p_cap = 1.0 / sigma2_half(model, query)
        what = "2/(sigma^2 (1 + shift))"
    else:
        p_cap = 2.0 / model.sigma2
        what = "2/sigma^2"
    if not p > 0:
        return Admissibility(Reason.P_OUT_OF_RANGE, f"p must be positive, got {p!r}")
    if not p < p_cap:
        return Admissibility(Reason.P_OUT_OF_RANGE, f"p={p:.6g} must be below {what} = {p_cap:.6g}")
    if _has_jumps(model) and not p < beta:
        return Admissibility(Reason.P_OUT_OF_RANGE, f"p={p:.6g} must be below beta = {beta:.6g}")

    if upper and _has_jumps(model):
        if phi.power is None:
            return Admissibility(
                Reason.JUMP_INTEGRABILITY_FAIL,
                "exponential Phi grows doubly exponentially against the jump measure",
            )
        if not phi.power * p / (1.0 - q) < beta:
            return Admissibility(
                Reason.JUMP_INTEGRABILITY_FAIL,
                f"growth m p/(1-q) = {phi.power * p / (1.0 - q):.6g} must be below beta = {beta:.6g}",
            )
    return Admissibility()


def require_admissible(model, query):
    verdict = admissibility_check(model, query)
    if not verdict:
        raise InadmissibleQuery(verdict.reason, verdict.message)
    return verdict


# -- tau ------------------------------------------------------------------------

def _jump_integral(model, query, rhos, lam=None):
    """Inner jump term I(rho) for an array of rho."""
    rhos = np.asarray(rhos, dtype=float)
    if not _has_jumps(model):
        return np.zeros_like(rhos)
    phi = query.phi
    if phi.power is None:
        raise Divergent("exponential Phi is not integrable against the jump measure")
    lam = query.lambda_jump if lam is None else lam
    if lam < LAMBDA_FLOOR:
        lam = 0.0
    kind, j0, j1, j2 = kernel_params(model.jumps)
    out = jump_term(rhos.ravel(), query.bound.sign, float(lam), float(query.q), float(phi.power),
                    float(phi.d1), kind, j0, j1, j2, _INNER_REL, 1e-300)
    if np.any(np.isnan(out)):
        raise Divergent(
            f"jump integral diverges for rho up to {rhos.max():.6g} "
            f"(tail rate {model.jumps.tail_rate:.6g})"
        )
    if np.any(np.isinf(out)):
        raise NonConvergent("inner jump integral did not converge")
    return out.reshape(rhos.shape)


def _drift_part(a, A, lo, hi):
    """a * int_lo^hi d rho / (1 - A rho)."""
    if A == 0.0:
        return a * (hi - lo)
    return -a / A * (math.log1p(-A * hi) - math.log1p(-A * lo))


def _theta(model, query, A, lo, hi, lam, rel_tol=1e-10):
    """int_lo^hi [a rho + I(rho)] / (rho (1 - A rho)) d rho."""
    drift = _drift_part(model.a, A, lo, hi)
    if not _has_jumps(model) or hi <= lo:
        return drift

    def g(r):
        return _jump_integral(model, query, r, lam) / (r * (1.0 - A * r))

    return drift + integrate_adaptive_gl(g, lo, hi, rel_tol, 1e-300)


def _effective(query, baseline):
    if baseline:
        return query.baseline()
    return query


def stationary_log_disutility(model: SupJcirModel, query: RiskQuery, baseline: bool = False,
                              check: bool = True) -> float:
    """tau_{-inf}; ``baseline=True`` takes the lambda -> 0 limit analytically."""
    if check:
        require_admissible(model, query)
    query = _effective(query, baseline)
    A = sigma2_half(model, query)
    return inverse_moment(model.mixing) * _theta(model, query, A, 0.0, query.p, query.lambda_jump)


def _finite_tau_substitution(model, query, horizon, A):
    # per atom: int_0^H F(rho_i(s)) ds = (1/r_i) int_{rho_i(H)}^p F / (rho (1 - A rho))
    total = 0.0
    for c, r in zip(model.mixing.weights, model.mixing.rates):
        end = riccati_exponent(query.p, r, A, horizon)
        total += c / r * _theta(model, query, A, end, query.p, query.lambda_jump)
    return total


def finite_horizon_log_disutility(model: SupJcirModel, query: RiskQuery, t: float, T: float,
                                  state, ode: OdeSpec = DEFAULT_ODE, method: str = "ode",
                                  check: bool = True) -> float:
    """log Psi_t = sum_i rho_i(T - t) x_i + tau_t for a discretely mixed model.

    ``method="ode"`` integrates the tau equation backward from tau_T = 0 with
    RK4; ``method="substitution"`` evaluates the same integral per atom by the
    change of variables to rho.
    """
    if not isinstance(model.mixing, DiscreteMixing):
        raise TypeError("finite-horizon evaluation needs a DiscreteMixing model")
    if t > T:
        raise ParameterOutOfRange("t must not exceed T")
    x = np.asarray(state, dtype=float)
    c = np.asarray(model.mixing.weights)
    r = np.asarray(model.mixing.rates)
    if x.shape != c.shape:
        raise ParameterOutOfRange(f"state has {x.size} entries, model has {c.size} atoms")
    if np.any(x < 0):
        raise ParameterOutOfRange("state must be nonnegative")
    if check:
        require_admissible(model, query)
    A = sigma2_half(model, query)
    horizon = T - t
    rho_t = riccati_exponent(query.p, r, A, horizon)
    state_term = float(np.dot(np.atleast_1d(rho_t), x))
    if horizon == 0:
        return state_term
    if method == "substitution":
        return state_term + _finite_tau_substitution(model, query, horizon, A)
    if method != "ode":
        raise ValueError(f"unknown method {method!r}")
    lam = query.lambda_jump
    a = model.a

    def rhs(s, _tau):
        rs = np.atleast_1d(riccati_exponent(query.p, r, A, s))
        return float(np.dot(c, a * rs + _jump_integral(model, query, rs, lam)))

    return state_term + solve_ode(rhs, 0.0, 0.0, horizon, ode)


# -- distortions --------------------------------------------------------------

def worst_case_distortion(model: SupJcirModel, query: RiskQuery):
    """Stationary worst-case drift tilt scale xi and jump multiplier g(z)."""
    if not query.p > 0:
        raise ParameterOutOfRange("p must be positive")
    phi, p, q, lam = query.phi, query.p, query.q, query.lambda_jump
    xi = query.lambda_diff * phi.d1 * model.sigma2 * p
    sign = query.bound.sign
    if lam == 0:
        return xi, JumpMultiplier(lambda z: np.ones_like(z), 0.0, "identity")
    if sign > 0 and phi.power is None and _has_jumps(model):
        raise ParameterOutOfRange("exponential Phi has no integrable upper-bound jump distortion")

    def inc(z):
        # Phi(e^{pz}) - 1, via expm1 for power Phi
        z = np.asarray(z, dtype=float)
        with np.errstate(over="ignore"):
            if phi.power is not None:
                return np.expm1(phi.power * p * z)
            return phi(np.exp(p * z)) - 1.0

    def g(z):
        return q_exp(sign * lam * inc(z), q)

    def log_g(z):
        x = sign * lam * inc(z)
        if q == 1.0:
            return x
        with np.errstate(over="ignore"):
            return np.log1p((1.0 - q) * x) / (1.0 - q)

    if sign > 0:
        growth = (phi.power or 0.0) * p / (1.0 - q) if q < 1 else math.inf
    else:
        growth = 0.0
    return xi, JumpMultiplier(g, growth, f"{query.bound.value}-worst-case", log_g)


@dataclass(frozen=True)
class DistortedModel:
    """Nominal model with reversion scaled by ``factor`` and jumps ``g nu``."""

    nominal: SupJcirModel
    factor: float
    xi: float
    jumps: object

    @property
    def mixing(self):
        return self.nominal.mixing.scaled(self.factor)

    def components(self):
        mix = self.nominal.mixing
        if not isinstance(mix, DiscreteMixing):
            raise TypeError("components() needs a DiscreteMixing model")
        out = []
        for c, r in zip(mix.weights, mix.rates):
            jumps = self.jumps if isinstance(self.jumps, NoJumps) else _Weighted(self.jumps, c)
            out.append(JcirComponent(self.nominal.a * c, r * self.factor, self.nominal.sigma2 * r, jumps))
        return out


@dataclass(frozen=True)
class _Weighted:
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


def distorted_model(model: SupJcirModel, query: RiskQuery) -> DistortedModel:
    xi, g = worst_case_distortion(model, query)
    if query.bound is Bound.UPPER:
        factor = 1.0 - xi
        if not factor > 0:
            raise DegenerateDistortion(f"xi = {xi:.6g} >= 1: the distorted model loses mean reversion")
    else:
        factor = 1.0 + xi
    jumps = model.jumps
    if not isinstance(jumps, NoJumps) and query.lambda_jump > 0:
        jumps = DistortedJump(jumps, g)
    return DistortedModel(model, factor, xi, jumps)


def distorted_acf(model: SupJcirModel, query: RiskQuery, h: float) -> float:
    return mixed_acf(distorted_model(model, query).mixing, h)


def _distorted_jump_moment(jumps, k):
    if isinstance(jumps, NoJumps):
        return 0.0
    if isinstance(jumps, DistortedJump):
        return weighted_integral(jumps, lambda z: z**k)
    return jump_moment(jumps, k)


def distorted_moment_ratios(model: SupJcirModel, query: RiskQuery):
    """(A, V): stationary mean and variance of the distorted model over nominal.

    Cumulants of independent factors add, and a factor with reversion kappa,
    diffusion d, drift b and jump measure nu' has mean (b + M1')/kappa and
    variance (b + M1') d / (2 kappa^2) + M2' / (2 kappa); summing over the
    mixing law gives closed forms in R for both mixing families.
    """
    dm = distorted_model(model, query)
    R, s2, k = model.R, model.sigma2, dm.factor
    m1 = _distorted_jump_moment(dm.jumps, 1)
    m2 = _distorted_jump_moment(dm.jumps, 2)
    level = model.a + m1
    mean = R * level / k
    var = R * (level * s2 / (2.0 * k * k) + m2 / (2.0 * k))
    nominal = stationary_moments(model)
    return mean / nominal.mean, var / nominal.variance


def _tsallis_density(g, q):
    g = np.asarray(g, dtype=float)
    if q == 1.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(g > 0, g * np.log(np.where(g > 0, g, 1.0)), 0.0) - g + 1.0
        return out
    return (1.0 - q - g**q + q * g) / (1.0 - q)


def entropy_rates(model: SupJcirModel, query: RiskQuery, state=None):
    """Entropy production per unit time at the worst-case controls.

    ``state`` is the vector x_i of a DiscreteMixing model; ``None`` uses the
    stationary mean state, for which sum_i r_i x_i = a + M1 for either
    mixing family.
    """
    phi, p = query.phi, query.p
    if state is None:
        load = model.a + jump_moment(model.jumps, 1)
    else:
        if not isinstance(model.mixing, DiscreteMixing):
            raise TypeError("an explicit state needs a DiscreteMixing model")
        x = np.asarray(state, dtype=float)
        if x.shape != (len(model.mixing),) or np.any(x < 0):
            raise ParameterOutOfRange("state must be a nonnegative vector, one entry per atom")
        load = float(np.dot(model.mixing.rates, x))
    diff = 0.5 * (query.lambda_diff * phi.d1 * model.sigma * p) ** 2 * load
    if query.lambda_jump == 0 or not _has_jumps(model):
        return diff, 0.0
    _, g = worst_case_distortion(model, query)
    q = query.q

    def integrand(z):
        return np.maximum(_tsallis_density(g(z), q), 0.0)

    # D(g) grows like g, so the quadrature scale follows g's tail rate
    envelope = JumpMultiplier(lambda z: np.ones_like(z), g.growth_rate)
    jump = weighted_integral(DistortedJump(model.jumps, envelope), integrand)
    return diff, jump


# -- report ----------------------------------------------------------------------

def normalized_disutility(model: SupJcirModel, query: RiskQuery) -> RiskReport:
    require_admissible(model, query)
    tau = stationary_log_disutility(model, query, check=False)
    base = stationary_log_disutility(model, query, baseline=True, check=False)
    U = safe_exp(tau - base)
    notes = []
    xi, _ = worst_case_distortion(model, query)
    theta_eff = omega = rates = A = V = None
    try:
        dm = distorted_model(model, query)
    except DegenerateDistortion as exc:
        notes.append(str(exc))
    else:
        mix = dm.mixing
        if isinstance(mix, GammaMixing):
            theta_eff, omega = mix.theta, mix.omega
        else:
            rates = mix.rates
        A, V = distorted_moment_ratios(model, query)
    ent_d, ent_j = entropy_rates(model, query)
    return RiskReport(
        log_disutility=tau,
        disutility=safe_exp(tau),
        baseline_log_disutility=base,
        baseline=safe_exp(base),
        normalized_U=U,
        xi=xi,
        acf_theta_eff=theta_eff,
        acf_omega=omega,
        distorted_rates=rates,
        normalized_A=A,
        normalized_V=V,
        entropy_diff=ent_d,
        entropy_jump=ent_j,
        notes=notes,
    )
