"""Benchmark the GF(2) rank kernels: numba @njit against the numpy fallback.

Run as:  python benchmarks/bench_gf2.py
The numba path includes a warmup call so JIT compilation is not billed to
the measurement.  Set HOMLAB_NO_NUMBA=1 to confirm the fallback is the one
being exercised end to end (the numba column then reads n/a).
"""

import time

import numpy as np

from homlab.gf2 import _rank_numpy, gf2_rank, using_numba


def bench(fn, a, repeat=5):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(a)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    rng = np.random.default_rng(42)
    sizes = [(64, 64), (256, 256), (512, 512), (1024, 1024), (2048, 1024)]

    if using_numba():
        gf2_rank(np.eye(4, dtype=np.uint8))  # JIT warmup

    header = f"{'shape':>12} {'rank':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for m, n in sizes:
        a = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
        r_np, t_np = bench(lambda x: _rank_numpy(x), a)
        shape = f"{m}x{n}"
        if using_numba():
            r_nb, t_nb = bench(lambda x: gf2_rank(x), a)
            assert r_np == r_nb, "kernel disagreement"
            print(f"{shape:>12} {r_np:>6} {t_np:>12.5f} {t_nb:>12.5f} "
                  f"{t_np / t_nb:>8.2f}x")
        else:
            print(f"{shape:>12} {r_np:>6} {t_np:>12.5f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
