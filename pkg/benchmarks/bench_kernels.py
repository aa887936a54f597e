"""Compiled vs numpy inner jump integral.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time per call for both backends on a few batch
sizes and jump families, the speedup, and the largest relative difference
between the two results.
"""

import argparse
import timeit

import numpy as np

from supjcir import _kernels_py

try:
    from supjcir import _kernels
except ImportError:  # extension not built
    _kernels = None

CASES = [
    # name, sign, lam, q, phi_e, phi_d1, kind, j0, j1, j2
    ("exp-jumps upper", 1, 0.5, 0.5, 1.5, 1.5, 1, 1.0, 4.0, 0.0),
    ("tempered upper", 1, 2.0, 0.75, 1.0, 1.0, 2, 0.4, 3.0, 0.5),
    ("tempered lower", -1, 2.0, 1.5, 0.5, 0.5, 2, 0.4, 3.0, 0.9),
    ("tempered lam=0", 1, 0.0, 0.5, 1.0, 1.0, 2, 0.4, 3.0, -0.5),
]


def bench(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
        return
    print(f"{'case':<18s} {'n':>5s} {'cython':>11s} {'numpy':>11s} {'speedup':>8s} {'max rel diff':>13s}")
    for name, *params in CASES:
        sign, lam, q, phi_e, phi_d1, kind, j0, j1, j2 = params
        beta = j1
        cap = beta * (1.0 - q) / phi_e if (lam > 0 and sign > 0) else beta / phi_e
        for n in (1, 96, 2000):
            rho = np.linspace(0.01, 0.8, n) * cap
            call = (rho, sign, lam, q, phi_e, phi_d1, kind, j0, j1, j2)
            a = _kernels.jump_term(*call)
            b = _kernels_py.jump_term(*call)
            diff = float(np.max(np.abs(a - b) / np.abs(b)))
            tc = bench(_kernels.jump_term, call, args.repeat)
            tp = bench(_kernels_py.jump_term, call, args.repeat)
            print(f"{name:<18s} {n:>5d} {tc * 1e3:>9.3f}ms {tp * 1e3:>9.3f}ms {tp / tc:>7.1f}x {diff:>13.2e}")


if __name__ == "__main__":
    main()
