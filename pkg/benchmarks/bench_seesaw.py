"""Benchmark the two see-saw backends: the compiled Jacobi kernel vs the
pure-NumPy fallback.

Both backends run from identical precomputed random product starts, so
their minima agree to numerical precision; the comparison is wall time.

Usage: python3 benchmarks/bench_seesaw.py [--restarts N] [--repeats R]
"""

import argparse
import time
from fractions import Fraction

from circwitness._backend import SEESAW_BACKEND
from circwitness.detect import SeeSawConfig, product_min
from circwitness.witness import AlphaWitnessParams, alpha_admissible_range, witness_W_alpha


def bench(d, restarts, repeats):
    alpha = alpha_admissible_range(d).hi * Fraction(3, 4) + Fraction(1, 4) / d
    W = witness_W_alpha(AlphaWitnessParams(d, alpha))
    cfg = SeeSawConfig(restarts=restarts, seed=0)
    rows = []
    for backend in (None, "numpy"):
        # warm up once, then time the best of `repeats` runs
        res = product_min(W, d, cfg, backend=backend)
        best = min(
            _timed(lambda: product_min(W, d, cfg, backend=backend))
            for _ in range(repeats)
        )
        rows.append((res.backend, best, res.value))
    return rows


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=64)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"active backend: {SEESAW_BACKEND}")
    print(f"restarts={args.restarts}, best of {args.repeats} runs\n")
    print(f"{'d':>3}  {'backend':<14} {'time [s]':>10}  {'product min':>13}")
    for d in (3, 4, 5, 6):
        rows = bench(d, args.restarts, args.repeats)
        for name, t, val in rows:
            print(f"{d:>3}  {name:<14} {t:>10.4f}  {val:>13.3e}")
        if len(rows) == 2 and rows[0][0] != rows[1][0]:
            print(f"     speedup: {rows[1][1] / rows[0][1]:.1f}x")


if __name__ == "__main__":
    main()
