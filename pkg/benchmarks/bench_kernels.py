"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time
from itertools import product

import numpy as np

from kloo import kernels
from kloo.ffield import ExtensionField


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def basis_sweep(kern):
    total = 0
    for n in (1, 2, 3):
        for a in product(range(1, 6), repeat=n):
            for d in product(range(1, 6), repeat=n):
                total += len(kern.basis_points(a, d))
    return total


def cases():
    # (label, family exponents, p, k): each is one S_k of a real pipeline run
    return [
        ("S_5  a=1,2 d=1,1 p=3", (1, 2), (1, 1), 3, 5),
        ("S_4  a=1,1 d=1,2 p=3", (1, 1), (1, 2), 3, 4),
        ("S_3  a=2,1 d=1,1 p=5", (2, 1), (1, 1), 5, 3),
        ("S_2  a=1,1,1 d=1,1,1 p=5", (1, 1, 1), (1, 1, 1), 5, 2),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled extension not built; only the numpy fallback is available")
    print(f"{'kernel':34s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")

    def row(label, make):
        times, outs = [], []
        for n in names:
            t, out = best_of(lambda: make(kernels.BACKENDS[n]), args.repeat)
            times.append(t)
            outs.append(out)
        same = all(np.array_equal(np.asarray(o), np.asarray(outs[0])) for o in outs)
        speed = (times[names.index("python")] / max(times[names.index("cython")], 1e-9)
                 if "cython" in names else 1.0)
        print(f"{label:34s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
              + f"  {speed:8.1f}x" + ("" if same else "  OUTPUTS DIFFER"))

    row("basis sweep n<=3, a,d<=5", basis_sweep)
    for label, a, d, p, k in cases():
        F = ExtensionField(p, k)
        g = F.primitive_element()
        N = F.order - 1
        row(f"trace table p={p} k={k}",
            lambda kern: kern.trace_power_table(p, F.modulus, g.coeffs, F.basis_traces(), N))
        table = kernels.BACKENDS["python"].trace_power_table(p, F.modulus, g.coeffs, F.basis_traces(), N)
        row(label, lambda kern: kern.count_traces(table, p, a, d, 1, 0, N))


if __name__ == "__main__":
    main()
