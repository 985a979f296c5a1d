"""Timing comparison of the numba and numpy shot-propagation kernels.

Run from the repository root:

    python benchmarks/benchmark_kernels.py [--shots N]

Both implementations consume identical pre-scaled noise draws; the script
checks they emit bit-identical outputs and reports throughput for each
machine circuit.
"""

import argparse
import time

import numpy as np

from ecloner import _kernels


def _time(fn, *args, repeats=3):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=1_000_000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    noise = rng.standard_normal((args.shots, _kernels.NOISE_COLUMNS))
    gain = np.sqrt(2.0)
    s = np.sqrt(0.5)

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is available")

    print(f"shots: {args.shots:,}")
    header = f"{'circuit':<8} {'backend':<7} {'time [s]':>9} {'Mshots/s':>9}"
    print(header)
    print("-" * len(header))

    jobs = [("local", (noise, gain, gain)), ("global", (noise, s, gain, gain))]
    for name, fn_args in jobs:
        numpy_fn = getattr(_kernels, f"propagate_{name}_numpy")
        numpy_fn(*fn_args)  # warm the cache lines
        t_numpy, out_numpy = _time(numpy_fn, *fn_args)
        print(f"{name:<8} {'numpy':<7} {t_numpy:>9.4f} {args.shots / t_numpy / 1e6:>9.2f}")
        if _kernels.HAVE_NUMBA:
            numba_fn = getattr(_kernels, f"propagate_{name}_numba")
            numba_fn(*fn_args)  # trigger compilation before timing
            t_numba, out_numba = _time(numba_fn, *fn_args)
            speedup = t_numpy / t_numba
            print(
                f"{name:<8} {'numba':<7} {t_numba:>9.4f} {args.shots / t_numba / 1e6:>9.2f}"
                f"   ({speedup:.2f}x vs numpy)"
            )
            identical = np.array_equal(out_numpy, out_numba)
            print(f"{name:<8} outputs bit-identical: {identical}")
            if not identical:
                raise SystemExit(f"{name}: backends disagree")


if __name__ == "__main__":
    main()
