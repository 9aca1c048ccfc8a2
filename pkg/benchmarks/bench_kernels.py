"""Compare the numba and numpy integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the FLEXCONE_DISABLE_NUMBA flag
only matters for the library's default choice.  The first numba call
(compilation or cache load) is timed separately.
"""

import argparse
import time

import numpy as np

from flexcone import _kernels as K


def simplex_case(n, size):
    # lattice points of the dilated simplex x >= 0, sum x <= size in a box
    lo = np.zeros(n, dtype=np.int64)
    hi = np.full(n, size, dtype=np.int64)
    A = np.vstack([np.ones((1, n), dtype=np.int64), -np.eye(n, dtype=np.int64)])
    b = np.concatenate([[size], np.zeros(n, dtype=np.int64)])
    return lo, hi, A, b


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [("box_points 3d size 40", K.box_points_numpy, getattr(K, "box_points_numba", None),
              simplex_case(3, 40)),
             ("box_points 4d size 20", K.box_points_numpy, getattr(K, "box_points_numba", None),
              simplex_case(4, 20)),
             ("exponent_vectors k=8 deg 5", K.exponent_vectors_numpy,
              getattr(K, "exponent_vectors_numba", None), (8, 5))]
    print(f"default backend: {K.backend()}")
    print(f"{'case':30} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, f_np, f_nb, data in cases:
        t_np, out_np = best_of(lambda: f_np(*data), args.repeat)
        if f_nb is None:
            print(f"{name:30} {t_np:10.4f} {'n/a':>10} {'':>8}")
            continue
        t0 = time.perf_counter()
        f_nb(*data)
        first = time.perf_counter() - t0
        t_nb, out_nb = best_of(lambda: f_nb(*data), args.repeat)
        assert np.array_equal(out_np, out_nb), name
        print(f"{name:30} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x  (first call {first:.2f}s)")


if __name__ == "__main__":
    main()
