"""Benchmark the hot kernels: numba-jitted versions against pure numpy.

Run from the repository root:

    python3 benchmarks/bench_kernels.py --n 1000000 --repeat 5

The causal-membership count and the spacelike-slack scan are timed on the
same random inputs for both backends (best of ``--repeat``); the numba
functions are called once before timing so compilation is excluded.
"""

import argparse
import time

import numpy as np

from btzgeo import _kernels
from btzgeo._kernels import _count_members_np, _min_delta_np


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1_000_000, help="pool size")
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    tau = rng.uniform(0.0, 2.0, args.n)
    r = rng.uniform(0.0, 1.0, args.n)
    r[rng.uniform(0.0, 1.0, args.n) < 0.05] = 0.0
    th = rng.uniform(0.0, 2.0 * np.pi, args.n)
    query = (0.8, 0.4, 1.0)

    side = max(16, int(np.sqrt(args.n)))
    radii = rng.uniform(0.01, 2.0, side)
    f_r = rng.normal(size=(side, side))
    f_th = rng.normal(size=(side, side))

    rows = []
    count_np, count = best_of(
        lambda: _count_members_np(tau, r, th, *query, True), args.repeat
    )
    scan_np, scan = best_of(lambda: _min_delta_np(radii, f_r, f_th), args.repeat)

    if _kernels.BACKEND == "numba":
        from btzgeo._kernels import _count_members_nb, _min_delta_nb

        _count_members_nb(tau, r, th, *query, True)  # compile
        _min_delta_nb(radii, f_r, f_th)
        count_nb, count2 = best_of(
            lambda: _count_members_nb(tau, r, th, *query, True), args.repeat
        )
        scan_nb, scan2 = best_of(lambda: _min_delta_nb(radii, f_r, f_th), args.repeat)
        assert count == count2, "backend disagreement on counts"
        assert np.allclose(scan, scan2, atol=1e-12), "backend disagreement on scan"
        rows.append(("count_causal_members", count_np, count_nb))
        rows.append(("min_delta_scan", scan_np, scan_nb))
    else:
        rows.append(("count_causal_members", count_np, None))
        rows.append(("min_delta_scan", scan_np, None))

    print(f"backend: {_kernels.BACKEND}   n = {args.n}   repeat = {args.repeat}")
    print(f"{'kernel':<24}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, t_np, t_nb in rows:
        if t_nb is None:
            print(f"{name:<24}{t_np * 1e3:>12.3f}{'-':>12}{'-':>10}")
        else:
            print(
                f"{name:<24}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}"
                f"{t_np / t_nb:>9.1f}x"
            )


if __name__ == "__main__":
    main()
