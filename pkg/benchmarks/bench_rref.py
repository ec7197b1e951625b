"""Compare the compiled row-reduction kernel against the pure-Python
fallback on random matrices over F_32003.

Run:  python3 benchmarks/bench_rref.py [--sizes 64,128,256] [--reps 5]
"""

from __future__ import annotations

import argparse
import time
from random import Random

import numpy as np

from koszul_lift import _modp_py
from koszul_lift.linalg import HAVE_COMPILED

if HAVE_COMPILED:
    from koszul_lift import _modp

P = 32003


def _bench(kernel, mats, reps: int) -> tuple[float, list[int]]:
    best = float("inf")
    ranks = []
    for _ in range(reps):
        t0 = time.perf_counter()
        ranks = []
        for m in mats:
            a = m.copy()
            pivots = np.empty(a.shape[1], dtype=np.int64)
            ranks.append(kernel.rref_mod(a, P, pivots))
        best = min(best, time.perf_counter() - t0)
    return best, ranks


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="32,64,128,256")
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = Random(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"modulus {P}, best of {args.reps} runs")
    if not HAVE_COMPILED:
        print("compiled kernel unavailable; timing the fallback only")
    header = f"{'size':>6}  {'pure (s)':>10}"
    if HAVE_COMPILED:
        header += f"  {'compiled (s)':>12}  {'speedup':>8}"
    print(header)

    for n in sizes:
        mats = [
            np.array(
                [[rng.randrange(P) for _ in range(n)] for _ in range(n)],
                dtype=np.int64,
            )
            for _ in range(3)
        ]
        t_pure, r_pure = _bench(_modp_py, mats, args.reps)
        line = f"{n:>6}  {t_pure:>10.4f}"
        if HAVE_COMPILED:
            t_fast, r_fast = _bench(_modp, mats, args.reps)
            assert r_pure == r_fast, "kernels disagree on rank"
            line += f"  {t_fast:>12.4f}  {t_pure / t_fast:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
