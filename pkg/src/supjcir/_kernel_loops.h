/* Branch-free node loops for the inner jump integral.
 *
 * supjcir_node_sum returns sum_m K(y_m) w_m over nodes whose direct
 * evaluation is safe; the others (overflow, underflowed weight, tiny y) get
 * skip[m] = 1 and are counted in `n_skip` for a log-space pass by the
 * caller. One straight-line loop per K variant so the compiler can
 * vectorize the transcendental calls.
 *
 * mode 0: lam == 0            K = u / d1
 * mode 1: upper, lam > 0      K = (exp(log1p(k lam u) / k) - 1) / (lam d1),  k = 1 - q
 * mode 2: lower, q == 1       K = (1 - exp(-lam u)) / (lam d1)
 * mode 3: lower, q != 1       K = (1 - exp(-log1p(k lam u) / k)) / (lam d1), k = q - 1
 * with u = expm1(e_rho z); `scale` carries the 1/d1 or 1/(lam d1) factor.
 */
#ifndef SUPJCIR_KERNEL_LOOPS_H
#define SUPJCIR_KERNEL_LOOPS_H

#include <math.h>

#define SUPJCIR_GUARD 300.0
#define SUPJCIR_TINY 1e-290

#define SUPJCIR_NODE_LOOP(BODY)                                              \
    _Pragma("omp simd reduction(+:s, bad)")                                  \
    for (long m = 0; m < n; m++) {                                           \
        double y = e_rho * z[m];                                             \
        int flag = (y > SUPJCIR_GUARD) | (y < SUPJCIR_TINY) | (w[m] == 0.0); \
        double u = expm1(flag ? 1.0 : y);                                    \
        double kk;                                                           \
        BODY                                                                 \
        skip[m] = (double)flag;                                              \
        bad += flag;                                                         \
        s += flag ? 0.0 : kk * w[m];                                         \
    }

#if defined(__x86_64__) && defined(__GNUC__) && !defined(__clang__)
/* 4-wide AVX2 clone picked at load time; baseline SSE2 otherwise */
#define SUPJCIR_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define SUPJCIR_CLONES
#endif

SUPJCIR_CLONES
static double supjcir_node_sum(int mode, long n, const double *z, const double *w,
                               double e_rho, double lam, double k, double scale,
                               double *skip, long *n_skip)
{
    double s = 0.0;
    int bad = 0;
    const double klam = k * lam;
    const double inv_k = (k != 0.0) ? 1.0 / k : 0.0;
    switch (mode) {
    case 0:
        SUPJCIR_NODE_LOOP(kk = u;)
        break;
    case 1:
        SUPJCIR_NODE_LOOP(
            double L = log1p(klam * u) * inv_k;
            flag |= (L > SUPJCIR_GUARD);
            kk = expm1(flag ? 0.0 : L);)
        break;
    case 2:
        SUPJCIR_NODE_LOOP(kk = -expm1(-lam * u);)
        break;
    default:
        SUPJCIR_NODE_LOOP(
            double L = log1p(klam * u) * inv_k;
            kk = -expm1(-L);)
        break;
    }
    *n_skip = bad;
    return s * scale;
}

#endif
