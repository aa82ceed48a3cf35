"""Time the compiled kernels against the numpy fallback on production-sized inputs.

Usage: python bench/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from fekete import kernels
from fekete.arith import legendre_table
from fekete.process import pattern_rows, sample_patterns
from fekete.quad import QuadConfig, _gauss_legendre, _scan_brackets, fekete_rows, cheb_nodes


def _inputs():
    table = legendre_table(10007)
    cfg = QuadConfig()
    rows = fekete_rows(table, cfg)
    C = rows.coeffs
    _, rb, lo, hi = _scan_brackets(C, cfg.scan_points)
    xg, wg = _gauss_legendre(cfg.gl_nodes)
    P = C @ np.polynomial.chebyshev.chebvander(xg, C.shape[1] - 1).T
    roots = kernels.bisect_roots(C, rb, lo, hi, 2e-12)
    ptr = np.concatenate([[0], np.cumsum(np.bincount(rb, minlength=C.shape[0]))]).astype(np.int64)
    gen = np.random.default_rng(0)
    k = gen.integers(0, table.p, 20000)
    t = gen.random(20000)
    signs = sample_patterns(500, 1, 0, 256)
    srows = gen.integers(0, 256, 20000)
    return {
        "clenshaw": (C, rb, roots),
        "bisect_roots": (C, rb, lo, hi, 2e-12),
        "remainder_log_sums": (P, xg, 0.5 * wg, ptr, roots),
        "cot_sums": (table.as_float(), k[:2000], t[:2000], 1),
        "harmonic_sums": (signs, srows, t, 0),
    }


def _time(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = kernels.backend("python")
    try:
        cy = kernels.backend("cython")
    except ImportError:
        print("compiled extension not available; only the numpy fallback can be timed")
        cy = None
    inputs = _inputs()
    print(f"{'kernel':<20}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}{'max |diff|':>14}")
    for name, a in inputs.items():
        tp, op = _time(getattr(py, name), a, args.repeat)
        if cy is None:
            print(f"{name:<20}{tp:>12.4f}{'-':>12}{'-':>10}{'-':>14}")
            continue
        tc, oc = _time(getattr(cy, name), a, args.repeat)
        diff = float(np.max(np.abs(np.asarray(op) - np.asarray(oc)))) if np.size(op) else 0.0
        print(f"{name:<20}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}{diff:>14.3g}")


if __name__ == "__main__":
    main()
