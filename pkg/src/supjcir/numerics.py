"""Quadrature on (0, inf) and a one-step ODE integrator.

Both routines are deliberately plain: composite midpoint panels with
Richardson extrapolation for integrals, classical RK4 with global step
halving for ODEs. The midpoint rule never evaluates the integrand at a panel
endpoint, so integrable singularities at the origin (``z**-alpha`` with
``alpha < 1``) are handled by grading panels dyadically toward zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, NonConvergent

__all__ = [
    "QuadratureSpec",
    "OdeSpec",
    "DEFAULT_QUADRATURE",
    "DEFAULT_ODE",
    "integrate_semi_infinite",
    "integrate_interval",
    "solve_ode",
    "integrate_adaptive_gl",
]

_MAX_ROMBERG_LEVEL = 9  # 3**9 = 19683 points per panel
_MAX_HEAD_PANELS = 1100  # dyadic halvings toward 0 (below 1e-300 of the scale)
_MAX_TAIL_PANELS = 200


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    truncation: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvariantViolation("tolerances strictly positive")
        if not self.truncation > 0:
            raise InvariantViolation("truncation point strictly positive")

    def scaled(self, truncation):
        return QuadratureSpec(self.rel_tol, self.abs_tol, truncation)


@dataclass(frozen=True)
class OdeSpec:
    initial_step: float = 0.1
    error_control: float = 1e-10
    max_steps: int = 1 << 20

    def __post_init__(self):
        if not self.initial_step > 0:
            raise InvariantViolation("initial-step > 0")
        if not self.error_control > 0:
            raise InvariantViolation("error-control > 0")
        if self.max_steps < 1:
            raise InvariantViolation("max-steps >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()
DEFAULT_ODE = OdeSpec()


def _evaluate(f, x):
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _panel(f, lo, hi, rel_tol, abs_tol):
    """Romberg-extrapolated composite midpoint rule on [lo, hi].

    Refinement triples the panel count so old midpoints are reused.
    Returns ``(value, error_estimate)``.
    """
    width = hi - lo
    n = 1
    mid = _evaluate(f, np.array([lo + 0.5 * width]))
    m = width * float(mid[0])
    table = [[m]]
    for level in range(1, _MAX_ROMBERG_LEVEL + 1):
        n_new = 3 * n
        h = width / n_new
        j = np.arange(n_new)
        j = j[j % 3 != 1]
        m = m / 3.0 + h * float(np.sum(_evaluate(f, lo + (j + 0.5) * h)))
        n = n_new
        row = [m]
        for k in range(1, level + 1):
            prev = row[k - 1]
            row.append(prev + (prev - table[level - 1][k - 1]) / (9.0**k - 1.0))
        table.append(row)
        if level >= 2:
            err = abs(row[-1] - table[level - 1][-1])
            if err <= max(abs_tol, rel_tol * abs(row[-1])):
                return row[-1], err
    if not all(math.isfinite(v) for v in table[-1]):
        raise NonConvergent(f"non-finite integrand on panel [{lo:g}, {hi:g}]")
    raise NonConvergent(
        f"panel [{lo:g}, {hi:g}] did not converge "
        f"(last change {abs(table[-1][-1] - table[-2][-1]):.3g})"
    )


def integrate_interval(f, lo, hi, spec=DEFAULT_QUADRATURE):
    """Integrate a smooth vectorized ``f`` over the finite interval [lo, hi]."""
    if hi == lo:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    value, _ = _panel(f, lo, hi, spec.rel_tol / 4, spec.abs_tol / 4)
    return sign * value


def _remainder_small(contribs, total, spec):
    """Geometric-series estimate of the untouched remainder."""
    if len(contribs) < 3:
        return False
    last, prev = abs(contribs[-1]), abs(contribs[-2])
    budget = 0.5 * max(spec.abs_tol, spec.rel_tol * abs(total))
    if last == 0.0 and prev == 0.0:
        return True
    if prev == 0.0:
        return False
    ratio = last / prev
    if ratio >= 1.0:
        return False
    return last * ratio / (1.0 - ratio) <= budget


def integrate_semi_infinite(f, spec=DEFAULT_QUADRATURE):
    """Integrate ``f`` over (0, inf).

    ``f`` must accept a numpy array of abscissae. The domain is cut at
    ``spec.truncation`` into dyadic panels shrinking toward 0 and doubling
    toward infinity; each side stops once a geometric-tail estimate of what
    remains falls under the tolerance budget.
    """
    scale = spec.truncation
    rel, atol = spec.rel_tol / 4, spec.abs_tol / 4
    total = 0.0

    head = []
    hi = scale
    for _ in range(_MAX_HEAD_PANELS):
        lo = 0.5 * hi
        v, _ = _panel(f, lo, hi, rel, atol)
        head.append(v)
        total += v
        hi = lo
        if _remainder_small(head, total, spec):
            break
    else:
        raise NonConvergent("integrand not integrable at 0 within the panel cap")

    tail = []
    lo = scale
    for _ in range(_MAX_TAIL_PANELS):
        hi = 2.0 * lo
        v, _ = _panel(f, lo, hi, rel, atol)
        tail.append(v)
        total += v
        lo = hi
        if _remainder_small(tail, total, spec):
            break
    else:
        raise NonConvergent("tail did not decay within the doubling cap")

    if not math.isfinite(total):
        raise NonConvergent("integral is not finite")
    return total


_GL_LOW = np.polynomial.legendre.leggauss(32)
_GL_HIGH = np.polynomial.legendre.leggauss(64)


def _gl(f, lo, hi, rule):
    x, w = rule
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return half * float(np.dot(w, _evaluate(f, mid + half * x)))


def integrate_adaptive_gl(f, lo, hi, rel_tol=1e-11, abs_tol=1e-15, max_depth=30):
    """Adaptive Gauss-Legendre on [lo, hi] for smooth vectorized ``f``.

    Each panel is accepted when the 32- and 64-point rules agree; otherwise
    it is bisected. Endpoints are never evaluated.
    """
    if hi == lo:
        return 0.0
    total = 0.0
    stack = [(lo, hi, 0)]
    while stack:
        a, b, depth = stack.pop()
        coarse = _gl(f, a, b, _GL_LOW)
        fine = _gl(f, a, b, _GL_HIGH)
        if not (math.isfinite(coarse) and math.isfinite(fine)):
            raise NonConvergent(f"non-finite integrand on [{a:g}, {b:g}]")
        if abs(fine - coarse) <= max(abs_tol * (b - a) / (hi - lo), rel_tol * abs(fine)):
            total += fine
            continue
        if depth >= max_depth:
            raise NonConvergent(f"Gauss-Legendre bisection exceeded depth {max_depth}")
        m = 0.5 * (a + b)
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    return total


def _rk4(rhs, y0, t0, t1, n):
    h = (t1 - t0) / n
    y = y0
    t = t0
    for i in range(n):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        t = t0 + (i + 1) * h
    return y


def solve_ode(rhs, y0, t0, t1, spec=DEFAULT_ODE):
    """Return y(t1) for the scalar ODE y' = rhs(t, y), y(t0) = y0.

    Classical RK4 on a uniform grid; the grid is halved until two successive
    solutions agree to ``spec.error_control`` (relative to max(1, |y|)), then
    the Richardson-corrected value is returned.
    """
    y0 = float(y0)
    if t1 == t0:
        return y0
    n = max(1, math.ceil(abs(t1 - t0) / spec.initial_step))
    if n > spec.max_steps:
        raise NonConvergent("initial step already exceeds max-steps")
    coarse = _rk4(rhs, y0, t0, t1, n)
    while 2 * n <= spec.max_steps:
        n *= 2
        fine = _rk4(rhs, y0, t0, t1, n)
        diff = fine - coarse
        if abs(diff) <= spec.error_control * max(1.0, abs(fine)):
            return fine + diff / 15.0
        coarse = fine
    raise NonConvergent(f"step halving exceeded max-steps={spec.max_steps}")
