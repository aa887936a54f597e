"""Reference implementation of the inner jump integral.

For every ``rho`` this evaluates

    I(rho) = int K(Phi(exp(rho z)) - 1) nu(dz)

where ``Phi(x) = x**e`` and ``K`` is the bound-specific transform of the
Orlicz increment (``sign=+1`` upper, ``sign=-1`` lower)::

    K(u) = sign * (exp_q(sign * lam * u) - 1) / (lam * Phi'(1))   lam > 0
    K(u) = u / Phi'(1)                                             lam = 0

The integral is mapped to the real line with ``z = w / kappa``,
``w = exp(t - exp(-t))`` (a double-exponential rule for (0, inf)), where
``kappa`` is the slowest asymptotic decay rate of the integrand over the
requested ``rho``, and summed with the trapezoid rule, halving the step until
two levels agree. Node abscissae and measure weights are therefore shared by
all ``rho`` of one call. Everything is done in log space so large ``rho z``
never overflows.

Returns NaN where the integrand is not integrable (decay rate <= 0) and inf
when the step halving cap is hit.
"""

import numpy as np

T_HI = 5.0
H0 = 0.25
MAX_HALVINGS = 6


def decay_rate(rho, sign, lam, q, phi_e, beta):
    """Asymptotic exponential decay rate of the integrand in z."""
    rho = np.asarray(rho, dtype=float)
    if lam > 0 and sign > 0:
        return beta - phi_e * rho / (1.0 - q)
    if lam > 0:
        return np.full_like(rho, beta)
    return beta - phi_e * rho


def lower_t(jump_kind, alpha):
    # near z=0 the weighted integrand behaves like z**(1 - alpha)
    a = alpha if jump_kind == 2 else -1.0
    return -np.log(45.0 / (1.0 - a))


def _softplus(a):
    return np.where(a > 0, a + np.log1p(np.exp(-np.abs(a))), np.log1p(np.exp(np.minimum(a, 0.0))))


def _log_weights(t, log_kappa, jump_kind, log_j0, beta, alpha):
    """log of nu-density * dz/dt at the nodes, and log z."""
    et = np.exp(-t)
    lz = t - et - log_kappa
    with np.errstate(under="ignore"):
        z = np.exp(lz)
    if jump_kind == 1:
        lwt = log_j0 + lz - beta * z
    else:
        lwt = log_j0 - alpha * lz - beta * z
    return lwt + np.log1p(et), lz


def _log_k(lz, log_e_rho, sign, lam, q, log_d1):
    """log K(Phi(exp(rho z)) - 1) on the (rho, node) grid."""
    ly = log_e_rho[:, None] + lz[None, :]
    with np.errstate(under="ignore", divide="ignore", over="ignore"):
        y = np.exp(ly)
        ratio = np.where(y > 1e-10, -np.expm1(-y) / np.where(y > 0, y, 1.0), 1.0 - 0.5 * y)
        lu = y + ly + np.log(ratio)  # log(expm1(y))
        if lam == 0.0:
            return lu - log_d1
        lv = np.log(lam) + lu
        log_lam_d1 = np.log(lam) + log_d1
        if sign > 0:
            k = 1.0 - q
            big_l = _softplus(np.log(k) + lv) / k
            lk = big_l + np.log(-np.expm1(-big_l)) - log_lam_d1
        else:
            if q == 1.0:
                big_l = np.exp(lv)
            else:
                k = q - 1.0
                big_l = _softplus(np.log(k) + lv) / k
            lk = np.log(-np.expm1(-big_l)) - log_lam_d1
        # K(u) = u / Phi'(1) to working precision once lam * u is tiny
        return np.where(lv < -40.0, lu - log_d1, lk)


def jump_term(rho, sign, lam, q, phi_e, phi_d1, jump_kind, j0, j1, j2,
              rel_tol=1e-11, abs_tol=1e-15):
    r = np.ascontiguousarray(rho, dtype=float).ravel()
    out = np.zeros(r.shape[0])
    if jump_kind == 0 or r.size == 0:
        return out
    beta, alpha = j1, j2
    log_j0 = np.log(j0 * j1) if jump_kind == 1 else np.log(j0)
    kappa = decay_rate(r, sign, lam, q, phi_e, beta)
    out[(r > 0) & ~(kappa > 0)] = np.nan
    live = (r > 0) & (kappa > 0)
    if not live.any():
        return out
    log_kappa = np.log(kappa[live].min())
    log_e_rho = np.log(phi_e * r[live])
    log_d1 = np.log(phi_d1)

    def level_sum(t):
        lwt, lz = _log_weights(t, log_kappa, jump_kind, log_j0, beta, alpha)
        with np.errstate(under="ignore"):
            return np.exp(_log_k(lz, log_e_rho, sign, lam, q, log_d1) + lwt[None, :]).sum(axis=1)

    j_lo = int(np.floor(lower_t(jump_kind, alpha) / H0))
    j_hi = int(np.ceil(T_HI / H0))
    t = np.arange(j_lo, j_hi + 1) * H0
    total = level_sum(t)
    prev = total * H0
    done = np.zeros(log_e_rho.shape[0], dtype=bool)
    value = np.full(log_e_rho.shape[0], np.inf)
    for level in range(1, MAX_HALVINGS + 1):
        h = H0 / 2**level
        # only the midpoints of the previous grid are new
        mids = (2 * np.arange(j_lo * 2 ** (level - 1), j_hi * 2 ** (level - 1)) + 1) * h
        total = total + level_sum(mids)
        cur = total * h
        ok = ~done & (np.abs(cur - prev) <= rel_tol * np.abs(cur) + abs_tol)
        value[ok] = cur[ok]
        done |= ok
        if done.all():
            break
        prev = cur
    out[live] = value
    return out
