"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are imported side by side from the kernel modules, so
the ``VRANPLAN_DISABLE_JIT`` flag does not matter here. Compilation happens
in a warm-up call before timing.
"""
import argparse
import time

import numpy as np

from vranplan import _packing_kernels as pk
from vranplan import _slicing_kernels as sk


def _best(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _packing_case(n, seed=0):
    rng = np.random.default_rng(seed)
    cells = rng.integers(1, 6, n).astype(np.float64)
    fr1 = rng.choice([10.0, 20.0, 40.0, 80.0], n)
    fr2 = np.zeros(n)
    profit = rng.integers(0, 9, n).astype(np.float64)
    return cells, fr1, fr2, profit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rows = []

    for n in (8, 12):
        cells, fr1, fr2, profit = _packing_case(n)
        lim = (18.0, 160.0, 400.0)
        ok = pk.feasible_masks_nb(cells, fr1, fr2, *lim)
        rows.append((f"feasible_masks n={n}",
                     _best(lambda: pk.feasible_masks_nb(cells, fr1, fr2, *lim), args.repeat),
                     _best(lambda: pk.feasible_masks_np(cells, fr1, fr2, *lim), args.repeat)))
        rows.append((f"min_partition n={n}",
                     _best(lambda: pk.min_partition_nb(ok, n), args.repeat),
                     _best(lambda: pk.min_partition_np(ok, n), args.repeat)))

    cells, fr1, fr2, profit = _packing_case(8)
    rows.append(("brute force n=8 B=3",
                 _best(lambda: pk.enumerate_nb(cells, fr1, fr2, profit, 18.0, 160.0, 400.0, 3, pk.MAX_PROFIT),
                       args.repeat),
                 _best(lambda: pk.enumerate_np(cells, fr1, fr2, profit, 18.0, 160.0, 400.0, 3, pk.MAX_PROFIT),
                       args.repeat)))

    g = np.random.default_rng(1).uniform(0.1, 10, 64)
    rows.append(("stationary_power 64 UEs",
                 _best(lambda: sk.stationary_power_nb(0.3, g, 1e-9, 10.0), args.repeat),
                 _best(lambda: sk.stationary_power_np(0.3, g, 1e-9, 10.0), args.repeat)))
    g3, w3 = np.array([4.0, 1.0, 0.5]), np.ones(3)
    rows.append(("grid oracle 3 UEs res=1e-3",
                 _best(lambda: sk.grid_search_nb(g3, w3, 2.0, 1e-3), args.repeat),
                 _best(lambda: sk.grid_search_np(g3, w3, 2.0, 1e-3), args.repeat)))

    print(f"{'kernel':<30}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        print(f"{name:<30}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
