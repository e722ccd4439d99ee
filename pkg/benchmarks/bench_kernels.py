"""Compare the numba and pure-Python integer kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Workloads: all GT counts for one sl_4 and one sl_5 weight, and Kostant
partition function values for A_3 on a grid.  Results are checked to agree
before timings are reported.  Compilation time is excluded (one warm-up call).
"""
import argparse
import itertools
import time

from slkweights import _accel
from slkweights.kostant import kostant_pf


def gt_workload(lam):
    k = len(lam)
    out = []
    for head in itertools.product(range(lam[0] + 1), repeat=k - 1):
        last = sum(lam) - sum(head)
        if 0 <= last <= lam[0]:
            out.append(head + (last,))
    return out


def run_gt(lam, betas, use_numba):
    return [_accel.count_gt(lam, b, use_numba=use_numba) for b in betas]


def run_kpf(points, use_numba):
    return [kostant_pf(3, v, use_numba=use_numba) for v in points]


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1

    cases = []
    for lam in [(9, 6, 3, 0), (6, 4, 3, 1, 0)]:
        betas = gt_workload(lam)
        cases.append((f"count_gt {lam} x{len(betas)}",
                      lambda use, lam=lam, betas=betas: run_gt(lam, betas, use)))
    grid = list(itertools.product(range(0, 16, 3), repeat=3))
    cases.append((f"kostant_pf A3 x{len(grid)}", lambda use: run_kpf(grid, use)))

    print(f"{'workload':40s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, fn in cases:
        fn(True)  # compile
        t_py, r_py = timed(lambda: fn(False), args.repeat)
        t_nb, r_nb = timed(lambda: fn(True), args.repeat)
        if r_py != r_nb:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:40s} {t_py:10.3f} {t_nb:10.3f} {t_py / t_nb:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
