"""Empirical statistics and the two-step (ACF, then moments) model fit."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DegenerateEmpirical, FitFailed, InvariantViolation, ZeroVariance
from .jumps import ExponentialJump, NoJumps
from .mixing import GammaMixing
from .process import Moments, SupJcirModel, stationary_moments

__all__ = [
    "TimeSeries",
    "EmpiricalStats",
    "FitResult",
    "empirical_acf",
    "empirical_moments",
    "empirical_stats",
    "fit_acf",
    "moment_error",
    "fit_moments",
    "DEFAULT_MAX_LAG",
]

DEFAULT_MAX_LAG = 52
TIE_TOL = 1e-16  # moment metrics closer than this are treated as equal
OFF_GRID = 0.25  # fraction of a step an observation may sit off the lag grid


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.ndim != 1 or t.shape != v.shape:
            raise InvariantViolation("TimeSeries: equal lengths", "times and values must be 1-d of equal length")
        if t.size < 8:
            raise InvariantViolation("TimeSeries: at least 8 observations", f"got {t.size}")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(v)):
            raise InvariantViolation("TimeSeries: finite", "times and values must be finite")
        if np.any(np.diff(t) <= 0):
            raise InvariantViolation("TimeSeries: times strictly increasing")

    def __len__(self):
        return self.values.size

    @property
    def step(self):
        """Nominal sampling step, the median time increment."""
        return float(np.median(np.diff(self.times)))


@dataclass(frozen=True)
class EmpiricalStats:
    mean: float
    variance: float
    skewness: float
    acf: tuple

    def __post_init__(self):
        if self.variance < 0:
            raise InvariantViolation("EmpiricalStats: variance >= 0")
        if self.acf and (self.acf[0][0] != 0 or self.acf[0][1] != 1.0):
            raise InvariantViolation("EmpiricalStats: acf(0) = 1")

    @property
    def moments(self):
        return Moments(self.mean, self.variance, self.skewness)


@dataclass
class FitResult:
    model: SupJcirModel
    y: float
    error_metric: float
    include_skew: bool
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.error_metric >= 0:
            raise InvariantViolation("FitResult: error_metric >= 0")


# -- empirical statistics -------------------------------------------------------

def _grid(series):
    """Lag-grid index of each observation, -1 for off-grid or duplicate slots."""
    step = series.step
    pos = (series.times - series.times[0]) / step
    idx = np.rint(pos).astype(np.int64)
    keep = np.abs(pos - idx) <= OFF_GRID
    _, first = np.unique(idx, return_index=True)
    unique = np.zeros(idx.size, dtype=bool)
    unique[first] = True
    idx[~(keep & unique)] = -1
    return idx, step


def empirical_acf(series: TimeSeries, max_lag_steps: int = DEFAULT_MAX_LAG):
    """Biased sample ACF on the nominal lag grid, as (lag in time units, value).

    One global mean and the lag-0 sum of squares are used for every lag;
    observations more than a quarter step off the grid take no part in pairs.
    """
    n = len(series)
    if not 0 < max_lag_steps < n / 2:
        raise ValueError(f"max_lag_steps must lie in (0, {n / 2:g}), got {max_lag_steps}")
    idx, step = _grid(series)
    on = idx >= 0
    x = series.values[on]
    dev = x - x.mean()
    denom = float(np.dot(dev, dev))
    if denom == 0.0:
        raise ZeroVariance("all values are equal; the autocorrelation is undefined")
    slots = np.full(int(idx[on].max()) + 1, np.nan)
    slots[idx[on]] = dev
    out = [(0.0, 1.0)]
    for k in range(1, max_lag_steps + 1):
        prod = slots[:-k] * slots[k:]
        out.append((k * step, float(np.nansum(prod) / denom)))
    return out


def empirical_moments(series: TimeSeries) -> Moments:
    """Mean, population variance and population skewness."""
    x = np.asarray(series.values if isinstance(series, TimeSeries) else series, dtype=float)
    if x.size < 8 and isinstance(series, TimeSeries):
        raise InvariantViolation("TimeSeries: at least 8 observations")
    mean = float(np.mean(x))
    dev = x - mean
    var = float(np.mean(dev * dev))
    if var == 0.0:
        raise ZeroVariance("zero variance: skewness is undefined")
    skew = float(np.mean(dev**3)) / var**1.5
    return Moments(mean, var, skew)


def empirical_stats(series: TimeSeries, max_lag_steps: int = DEFAULT_MAX_LAG) -> EmpiricalStats:
    m = empirical_moments(series)
    return EmpiricalStats(m.mean, m.variance, m.skewness, tuple(empirical_acf(series, max_lag_steps)))


# -- step 1: ACF ------------------------------------------------------------------

def _acf_model(lags, theta, omega):
    return (1.0 + theta * lags) ** (-(omega - 1.0))


def fit_acf(emp, max_residual: float | None = None):
    """Least-squares fit of (1 + theta h)^-(omega - 1) to an empirical ACF.

    Nelder-Mead from a fixed 3x3 start grid in (log theta, log(omega - 1));
    the best final residual wins. Returns ``(theta, omega, residual)``.
    """
    pts = [(float(h), float(v)) for h, v in emp if h > 0]
    lags = np.array([h for h, _ in pts])
    vals = np.array([v for _, v in pts])
    if np.sum(vals > 0) < 3:
        raise FitFailed("the ACF fit needs at least 3 positive-lag points with positive values")
    if max_residual is None:
        max_residual = 0.25 * lags.size
    h_med = float(np.median(lags))

    def loss(x):
        th, om = math.exp(x[0]), 1.0 + math.exp(x[1])
        with np.errstate(over="ignore"):
            r = vals - _acf_model(lags, th, om)
        return float(np.dot(r, r))

    best = None
    for t0 in (0.01, 0.1, 1.0):
        for w0 in (1.2, 2.0, 4.0):
            x0 = np.array([math.log(t0 / h_med), math.log(w0 - 1.0)])
            res = minimize(loss, x0, method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-20, "maxiter": 20000, "maxfev": 40000})
            # restart once from the end point; simplex collapse is common on flat valleys
            res = minimize(loss, res.x, method="Nelder-Mead",
                           options={"xatol": 1e-13, "fatol": 1e-22, "maxiter": 20000, "maxfev": 40000})
            if best is None or res.fun < best.fun:
                best = res
    theta, omega = math.exp(best.x[0]), 1.0 + math.exp(best.x[1])
    if not best.fun <= max_residual:
        raise FitFailed(f"ACF fit residual {best.fun:.6g} exceeds the ceiling {max_residual:.6g}")
    if omega - 1.0 < 1e-6 or theta * lags.max() < 1e-8:
        raise FitFailed(f"ACF shows no decay to fit (omega -> 1+: theta={theta:.6g}, omega={omega:.9g})")
    return theta, omega, float(best.fun)


# -- step 2: moments --------------------------------------------------------------

def _rel(model_value, emp_value, what):
    if emp_value == 0:
        raise DegenerateEmpirical(f"empirical {what} is zero; its relative error is undefined")
    return (model_value - emp_value) / emp_value


def moment_error(model_stats: Moments, emp: Moments, include_skew: bool = True) -> float:
    """Sum of squared relative errors in mean, variance and (optionally) skewness."""
    err = _rel(model_stats.mean, emp.mean, "mean") ** 2
    err += _rel(model_stats.variance, emp.variance, "variance") ** 2
    if include_skew:
        err += _rel(model_stats.skewness, emp.skewness, "skewness") ** 2
    return err


def _build(beta, sigma, a, y, mixing):
    if y == 1.0:
        return SupJcirModel(a, sigma, NoJumps(), mixing)
    mu = (1.0 - y) * beta * a / y
    return SupJcirModel(a, sigma, ExponentialJump(mu, beta), mixing)


def fit_moments(emp: Moments, theta: float, omega: float, y: float, include_skew: bool = True,
                max_error: float = 1.0) -> FitResult:
    """Fit (beta, sigma, a) with R fixed by (theta, omega) and mu tied to y.

    ``y`` is the share of the mean carried by the drift; the jump intensity
    is ``mu = (1 - y) beta a / y`` (no jumps at ``y = 1``).
    """
    if not 0 < y <= 1:
        raise ValueError(f"y must lie in (0, 1], got {y!r}")
    if not (emp.mean > 0 and emp.variance > 0):
        raise DegenerateEmpirical("empirical mean and variance must be positive")
    mixing = GammaMixing(omega, theta)
    R = 1.0 / (theta * (omega - 1.0))
    jumpy = y < 1.0

    def unpack(x):
        if jumpy:
            return math.exp(x[0]), math.exp(x[1]), math.exp(x[2])
        return 1.0, math.exp(x[0]), math.exp(x[1])

    def loss(x):
        try:
            beta, sigma, a = unpack(x)
            return moment_error(stationary_moments(_build(beta, sigma, a, y, mixing)), emp, include_skew)
        except (InvariantViolation, OverflowError, ZeroDivisionError):
            return math.inf

    # the mean pins a exactly; variance splits between diffusion and jumps
    a0 = y * emp.mean / R
    s2_all = 2.0 * y * emp.variance / (R * a0)
    starts = []
    for frac in (0.25, 0.5, 0.9):
        sig0 = math.sqrt(s2_all * frac)
        if jumpy:
            # jump share of variance (1 - frac) fixes beta given a
            jump_var = (1.0 - frac) * emp.variance
            b_mid = (1.0 - y) * R * a0 / (y * jump_var)
            for k in (0.5, 1.0, 2.0):
                starts.append(np.log([b_mid * k, sig0, a0]))
        else:
            starts.append(np.log([sig0, a0]))

    results = []
    for x0 in starts:
        res = minimize(loss, x0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-24, "maxiter": 40000, "maxfev": 80000})
        res = minimize(loss, res.x, method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-26, "maxiter": 40000, "maxfev": 80000})
        if math.isfinite(res.fun):
            results.append(res)
    if not results:
        raise FitFailed("moment fit: no start produced a finite error")
    # mean, variance and skewness can be matched exactly by two (beta, sigma)
    # pairs; near-equal metrics are ties, resolved by the smallest beta
    floor = min(r.fun for r in results)
    tied = [r for r in results if r.fun <= floor + TIE_TOL]
    res = min(tied, key=lambda r: (unpack(r.x)[0], r.fun))
    beta, sigma, a = unpack(res.x)
    model = _build(beta, sigma, a, y, mixing)
    stats = stationary_moments(model)
    err = moment_error(stats, emp, include_skew)
    if not err <= max_error:
        raise FitFailed(f"moment fit error {err:.6g} exceeds the ceiling {max_error:.6g}")
    diag = {
        "R": R,
        "theta": theta,
        "omega": omega,
        "model_mean": stats.mean,
        "model_variance": stats.variance,
        "model_skewness": stats.skewness,
        "rel_err_mean": _rel(stats.mean, emp.mean, "mean"),
        "rel_err_variance": _rel(stats.variance, emp.variance, "variance"),
        "rel_err_skewness": _rel(stats.skewness, emp.skewness, "skewness") if emp.skewness else math.nan,
        "starts": len(starts),
    }
    return FitResult(model, y, err, include_skew, diag)
