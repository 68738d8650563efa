"""Compiled versus pure-Python orbit kernel: wall time and bitwise agreement.

    python3 benchmarks/bench_flow.py [--steps N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from superfactor import _flow_py

try:
    from superfactor import _flow
except ImportError:
    _flow = None

CASES = {
    # name: (initial state, system code, parameter)
    "kepler": ([2.0, 0.1, 1.2, 0.3, 0.0, 0.8], 1, 1.0),
    "oscillator": ([1.5, 0.4, 1.0, -0.5, 0.3, 0.9], 0, 1.0),
}


def best_of(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--dt", type=float, default=0.01)
    args = ap.parse_args()
    if _flow is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'case':<12}{'python s':>12}{'cython s':>12}{'speedup':>10}  identical")
    for name, (y0, code, param) in CASES.items():
        run = lambda mod: mod.flow(y0, args.steps, args.dt, code, param, 0, 1)
        tp, (yp, sp, _) = best_of(lambda: run(_flow_py), max(1, args.repeat // 3))
        tc, (yc, sc, _) = best_of(lambda: run(_flow), args.repeat)
        same = sp == sc and yp.shape == yc.shape and np.array_equal(yp, yc)
        print(f"{name:<12}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x  {same}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
