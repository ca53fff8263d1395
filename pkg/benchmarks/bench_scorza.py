"""Scorza contraction: numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_scorza.py [--repeat N] [--seed S]

Each backend is warmed up once (so numba compile time is excluded), then
timed on the same integer tensors; outputs are checked to be identical.
"""
import argparse
import time

import numpy as np

from lueroth_kit import _kernels
from lueroth_kit.instances import random_quartic
from lueroth_kit.scorza import _integer_tensor


def timed(fn, F, repeat):
    fn(F)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(F)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quartics", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'kernel':8} {'backend':8} {'best (ms)':>10}")
    for q in range(args.quartics):
        F, _ = _integer_tensor(random_quartic(args.seed + q, bound=3))
        for kernel in ("fast", "naive"):
            outs = {}
            for b in backends:
                fn = getattr(_kernels, f"contract_{kernel}")
                t, outs[b] = timed(lambda T: fn(T, b), F, args.repeat)
                print(f"{kernel:8} {b:8} {1e3 * t:10.2f}")
            ref = outs["numpy"]
            assert all(np.array_equal(ref, o) for o in outs.values()), "backends disagree"


if __name__ == "__main__":
    main()
