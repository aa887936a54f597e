# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner jump integral; same algorithm as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p, expm1, ceil, floor, fabs, INFINITY

from ._kernels_py import decay_rate, lower_t

cnp.import_array()

DEF T_HI = 5.0
DEF H0 = 0.25
DEF MAX_HALVINGS = 6


cdef inline double softplus(double a) nogil:
    if a > 0.0:
        return a + log1p(exp(-a))
    return log1p(exp(a))


cdef inline double log_k(double y, double ly, int sign, double lam, double q,
                         double log_lam, double log_k1, double log_d1) nogil:
    # log-space K for arguments where the direct form could overflow
    cdef double lu, lv, L, k
    cdef double ratio = -expm1(-y) / y if y > 1e-10 else 1.0 - 0.5 * y
    lu = y + ly + log(ratio)
    if lam == 0.0:
        return lu - log_d1
    lv = log_lam + lu
    if lv < -40.0:
        # K(u) = u / Phi'(1) to working precision once lam * u is tiny
        return lu - log_d1
    if sign > 0:
        k = 1.0 - q
        L = softplus(log_k1 + lv) / k
        return L + log(-expm1(-L)) - log_lam - log_d1
    if q == 1.0:
        L = exp(lv)
    else:
        k = q - 1.0
        L = softplus(log_k1 + lv) / k
    return log(-expm1(-L)) - log_lam - log_d1


cdef extern from "_kernel_loops.h" nogil:
    double supjcir_node_sum(int mode, long n, const double *z, const double *w,
                            double e_rho, double lam, double k, double scale,
                            double *skip, long *n_skip)


def jump_term(rho, int sign, double lam, double q, double phi_e, double phi_d1,
              int jump_kind, double j0, double j1, double j2,
              double rel_tol=1e-11, double abs_tol=1e-15):
    r_all = np.ascontiguousarray(rho, dtype=np.float64).ravel()
    out = np.zeros(r_all.shape[0], dtype=np.float64)
    if jump_kind == 0 or r_all.shape[0] == 0:
        return out
    cdef double beta = j1
    cdef double alpha = j2
    kappa_all = decay_rate(r_all, sign, lam, q, phi_e, beta)
    out[(r_all > 0) & ~(kappa_all > 0)] = np.nan
    live = (r_all > 0) & (kappa_all > 0)
    if not live.any():
        return out
    cdef double log_kappa = log(float(kappa_all[live].min()))
    cdef double[::1] e_rho = phi_e * r_all[live]
    cdef Py_ssize_t n = e_rho.shape[0]
    cdef double[::1] total = np.zeros(n)
    cdef double[::1] prev = np.zeros(n)
    cdef double[::1] value = np.full(n, INFINITY)
    cdef char[::1] done = np.zeros(n, dtype=np.int8)

    cdef double log_j0 = log(j0 * j1) if jump_kind == 1 else log(j0)
    cdef double log_d1 = log(phi_d1)
    cdef double log_lam = log(lam) if lam > 0.0 else 0.0
    cdef double log_k1 = log(fabs(1.0 - q)) if q != 1.0 else 0.0
    # node-loop variant, see _kernel_loops.h
    cdef int mode
    cdef double kpar = 0.0
    cdef double scale
    if lam == 0.0:
        mode, scale = 0, 1.0 / phi_d1
    elif sign > 0:
        mode, kpar, scale = 1, 1.0 - q, 1.0 / (lam * phi_d1)
    elif q == 1.0:
        mode, scale = 2, 1.0 / (lam * phi_d1)
    else:
        mode, kpar, scale = 3, q - 1.0, 1.0 / (lam * phi_d1)
    cdef long j_lo = <long>floor(lower_t(jump_kind, alpha) / H0)
    cdef long j_hi = <long>ceil(T_HI / H0)
    cdef long max_nodes = (j_hi - j_lo) * (1 << (MAX_HALVINGS - 1)) + 1
    cdef double[::1] zs = np.empty(max_nodes)
    cdef double[::1] lzs = np.empty(max_nodes)
    cdef double[::1] wts = np.empty(max_nodes)
    cdef double[::1] lwts = np.empty(max_nodes)
    cdef double[::1] skip = np.zeros(max_nodes)
    cdef long n_skip

    cdef long level, m, count, first
    cdef Py_ssize_t i
    cdef double h, t, et, lz, z, lwt, s, cur, log_e_rho
    cdef int remaining = <int>n

    with nogil:
        for level in range(MAX_HALVINGS + 1):
            # abscissae that are new at this level
            if level == 0:
                h = H0
                count = j_hi - j_lo + 1
                first = j_lo
            else:
                h = H0 / (1 << level)
                count = (j_hi - j_lo) * (1 << (level - 1))
                first = j_lo * (1 << (level - 1))
            for m in range(count):
                if level == 0:
                    t = (first + m) * h
                else:
                    t = (2 * (first + m) + 1) * h
                et = exp(-t)
                lz = t - et - log_kappa
                z = exp(lz)
                if jump_kind == 1:
                    lwt = log_j0 + lz - beta * z
                else:
                    lwt = log_j0 - alpha * lz - beta * z
                lwt = lwt + log1p(et)
                zs[m] = z
                lzs[m] = lz
                lwts[m] = lwt
                wts[m] = exp(lwt)
            for i in range(n):
                if done[i]:
                    continue
                s = supjcir_node_sum(mode, count, &zs[0], &wts[0], e_rho[i], lam, kpar, scale,
                                     &skip[0], &n_skip)
                if n_skip:
                    # the product may be representable when neither factor is
                    log_e_rho = log(e_rho[i])
                    for m in range(count):
                        if skip[m] != 0.0:
                            s += exp(log_k(e_rho[i] * zs[m], log_e_rho + lzs[m], sign, lam, q,
                                           log_lam, log_k1, log_d1) + lwts[m])
                total[i] += s
                cur = total[i] * h
                if level > 0 and fabs(cur - prev[i]) <= rel_tol * fabs(cur) + abs_tol:
                    value[i] = cur
                    done[i] = 1
                    remaining -= 1
                prev[i] = cur
            if remaining == 0:
                break
    out[live] = np.asarray(value)
    return out
