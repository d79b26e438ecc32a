"""Compare the compiled kernels against the NumPy fallback.

Times the three hot paths (sparse matvec, iterated PGF, Chebyshev PGF) on
line-graph operators of increasing size and prints one row per case.

    python benchmarks/compare_backends.py [--sizes 64,256,1024,4096] [--reps 2000]
"""

import argparse
import time

import numpy as np

import dttops as d
from dttops import backend


def time_call(fn, reps):
    fn()  # settle allocations
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    return float(np.median(times))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,256,1024,4096")
    ap.add_argument("--reps", type=int, default=2000)
    ap.add_argument("--degree", type=int, default=8)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    names = d.available_backends()
    if "cython" not in names:
        print("compiled extension not built; timing the python backend only")

    rng = np.random.default_rng(0)
    print(f"{'case':<18}{'n':>6}" + "".join(f"{nm + ' ns':>14}" for nm in names) + f"{'speedup':>10}")
    for n in sizes:
        z = d.build_dct2(n, 1)
        lap = d.to_laplacian(z)
        x = rng.normal(size=n)
        g = rng.normal(size=args.degree + 1)
        cheb = d.monomial_to_chebyshev(g, 4.0)
        cases = {
            "matvec": lambda: z @ x,
            "pgf": lambda: d.apply_pgf(z, g, x),
            "pgf-chebyshev": lambda: d.apply_pgf_chebyshev(lap, cheb, x, 4.0),
        }
        for label, fn in cases.items():
            row = f"{label:<18}{n:>6}"
            measured = {}
            for nm in names:
                backend.use_backend(nm)
                measured[nm] = time_call(fn, args.reps)
                row += f"{measured[nm]:>14.0f}"
            if len(names) == 2:
                row += f"{measured['python'] / measured['cython']:>9.1f}x"
            print(row)
    backend.use_backend("auto")


if __name__ == "__main__":
    main()
