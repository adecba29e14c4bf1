#!/usr/bin/env python3
"""Time the numba, numpy and python backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Workloads: one large exact product and quotient (above the int64 work
threshold), the full Dubrovnik closed
form for a few torus knots, and the B_4 Weyl-group character sum. The first
numba call of each kernel is timed separately (compile or cache load).
"""

import argparse
import cmath
import random
import time

from tki import _kernels, invariants
from tki.laurent import LaurentPoly2
from tki.liealg import build_algebra, character_weylsum_eval


def _poly_pair():
    # dense enough to cross the int64 work threshold, small coefficients
    rng = random.Random(1)
    f = LaurentPoly2({(rng.randint(-15, 15), rng.randint(-40, 40)): rng.randint(-9, 9) for _ in range(900)})
    g = LaurentPoly2({(rng.randint(-6, 6), rng.randint(-20, 20)): rng.randint(-9, 9) for _ in range(300)})
    return f, g


def _clear_caches():
    invariants._kauffman.cache_clear()
    invariants._homfly.cache_clear()


def workloads():
    f, g = _poly_pair()
    p = f * g
    dat = build_algebra("B", 4)
    t0 = cmath.exp(2j * cmath.pi / 24)

    def mul():
        return f * g

    def div():
        return _kernels.divide(p.terms, g.terms)

    def kauffman():
        _clear_caches()
        for knot in ((9, 11), (13, 14), (17, 18)):
            invariants.kauffman_torus(knot)

    def weyl():
        for lam in ((1, 0, 0, 0), (0, 1, 0, 0), (2, 1, 0, 1)):
            character_weylsum_eval(dat, lam, t0)

    return {"multiply": mul, "divide": div, "kauffman {9,11}..{17,18}": kauffman, "weyl sum B4": weyl}


def bench(repeat: int):
    names = ["numba", "numpy", "python"] if _kernels.HAVE_NUMBA else ["numpy", "python"]
    jobs = workloads()
    rows = {}
    for be in names:
        _kernels.set_backend(be)
        for label, fn in jobs.items():
            t = time.perf_counter()
            fn()
            first = time.perf_counter() - t
            best = float("inf")
            for _ in range(repeat):
                t = time.perf_counter()
                fn()
                best = min(best, time.perf_counter() - t)
            rows[(label, be)] = (first, best)
    return names, jobs, rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names, jobs, rows = bench(args.repeat)
    print(f"{'workload':28}" + "".join(f"{n:>20}" for n in names))
    for label in jobs:
        cells = "".join(f"{rows[(label, n)][1]:>12.4f}s ({rows[(label, n)][0]:5.2f})" for n in names)
        print(f"{label:28}{cells}")
    print("best of repeats; first call in parentheses")


if __name__ == "__main__":
    main()
