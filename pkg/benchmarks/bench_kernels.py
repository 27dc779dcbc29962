"""Compare the compiled and pure kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeats 5]

Benchmarks the two hot kernels on representative workloads:
  * border flood fill on a large random occupancy grid, and
  * simultaneous root iteration on batches of high-degree polynomials.
"""

import argparse
import time

import numpy as np

from polyconvex._kernels import pure

try:
    from polyconvex._kernels import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_flood(repeats):
    rng = np.random.default_rng(0)
    blocked = (rng.uniform(size=(2048, 2048)) < 0.35).astype(np.uint8)
    rows = []
    for name, impl in _backends():
        rows.append((f"flood 2048x2048 ({name})",
                     _time(lambda: impl.flood_from_border(blocked), repeats)))
    ref = np.asarray(pure.flood_from_border(blocked), dtype=bool)
    for name, impl in _backends():
        got = np.asarray(impl.flood_from_border(blocked), dtype=bool)
        assert np.array_equal(got, ref), f"{name} disagrees with pure flood"
    return rows


def bench_aberth(repeats):
    rng = np.random.default_rng(1)
    degree = 64
    batches = 50
    polys = []
    for _ in range(batches):
        c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        dc = c[1:] * np.arange(1, degree + 1)
        x0 = 1.2 * np.exp(2j * np.pi * np.arange(degree) / degree) + 0.05
        polys.append((c, dc, x0))

    def run(impl):
        for c, dc, x0 in polys:
            impl.aberth_iterate(c, dc, x0.copy(), 200, 1e-13)

    return [(f"aberth degree-{degree} x{batches} ({name})",
             _time(lambda impl=impl: run(impl), repeats))
            for name, impl in _backends()]


def _backends():
    yield "pure", pure
    if _ckernels is not None:
        yield "compiled", _ckernels


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled backend unavailable; benchmarking pure only")
    rows = bench_flood(args.repeats) + bench_aberth(args.repeats)
    width = max(len(name) for name, _ in rows)
    for name, seconds in rows:
        print(f"{name:<{width}}  {seconds * 1e3:9.2f} ms")


if __name__ == "__main__":
    main()
