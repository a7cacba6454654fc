"""Benchmark the mod-p row reduction kernel: numba JIT vs numpy fallback.

Run as a script; pass a size and prime to override the defaults:

    python benchmarks/bench_modp.py [size] [prime]

Set CYCHOM_NO_NUMBA=1 to force the numpy path regardless of what is
installed.  The two paths must produce identical pivots; this is checked
before timing.
"""

import sys
import time

import numpy as np

from cychom import _modp


def random_matrix(rng, rows, cols, p, density=0.3):
    a = rng.integers(0, p, size=(rows, cols), dtype=np.int64)
    mask = rng.random((rows, cols)) < density
    return a * mask


def bench(fn, a, p, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(a.copy(), p)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv):
    size = int(argv[1]) if len(argv) > 1 else 400
    p = int(argv[2]) if len(argv) > 2 else 2
    rng = np.random.default_rng(0)
    a = random_matrix(rng, size, size, p)

    _, piv_np = _modp._rref_modp_numpy(a.copy(), p)
    print(f"matrix {size}x{size} mod {p}, rank {len(piv_np)}")

    t_np = bench(_modp._rref_modp_numpy, a, p)
    print(f"numpy fallback : {t_np * 1000:8.2f} ms")

    if _modp.using_numba():
        _, piv_jit = _modp._rref_modp_jit(a.copy(), p)
        assert list(piv_jit) == list(piv_np), "paths disagree on pivots"
        _modp._rref_modp_jit(a.copy(), p)  # warm the JIT cache
        t_jit = bench(_modp._rref_modp_jit, a, p)
        print(f"numba kernel   : {t_jit * 1000:8.2f} ms "
              f"({t_np / t_jit:.1f}x speedup)")
    else:
        print("numba kernel   : unavailable "
              "(not installed or CYCHOM_NO_NUMBA set)")


if __name__ == "__main__":
    main(sys.argv)
