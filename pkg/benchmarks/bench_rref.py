"""Compiled vs pure-Python elimination kernel on invariant systems.

    python3 benchmarks/bench_rref.py [--sizes 4 6 8] [--repeat 3]

Each case builds the quasi-derivation system (n^3 equations, 2n^2 unknowns)
of an algebra and times the kernel on the integer rows alone. Random tables
are not associative; the system is still a valid elimination workload.
"""

import argparse
import random
import time

from associnv import linalg, solvers
from associnv._rref_py import rref_int as py_rref
from associnv.algebra import make_algebra, zero_algebra

try:
    from associnv._kernel import rref_int as c_rref
except ImportError:
    c_rref = None


def nilpotent_chain(n):
    # e_i e_j = e_{i+j}, truncated: associative, sparse, many free unknowns
    g = [[[int(i + j + 1 == k) for k in range(n)] for j in range(n)] for i in range(n)]
    return make_algebra(g, name=f"chain_{n}")


def random_table(n, rng, density=0.3):
    g = [
        [[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]
        for _ in range(n)
    ]
    return make_algebra(g, name=f"random_{n}")


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(sizes, repeat, seed):
    rng = random.Random(seed)
    print(f"kernel at import: {linalg.KERNEL}")
    print(f"{'case':<12} {'rows x cols':>12} {'rank':>5} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for n in sizes:
        for a in (zero_algebra(n), nilpotent_chain(n), random_table(n, rng)):
            rows = linalg._integer_rows(solvers.quasi_derivation_system(a))
            ncols = 2 * n * n
            tp, (ref, piv) = best_of(lambda: py_rref([r[:] for r in rows], ncols), repeat)
            if c_rref is None:
                tc, note = None, "not built"
            else:
                try:
                    tc, (got, gpiv) = best_of(lambda: c_rref([r[:] for r in rows], ncols), repeat)
                    assert (got, gpiv) == (ref, piv)
                    note = f"{tp / tc:7.1f}x"
                except OverflowError:
                    tc, note = None, "overflow"
            shape = f"{len(rows)} x {ncols}"
            ctext = f"{tc * 1e3:12.2f}" if tc is not None else f"{'-':>12}"
            print(f"{a.name:<12} {shape:>12} {len(piv):>5} {tp * 1e3:10.2f} {ctext} {note:>8}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    run(args.sizes, args.repeat, args.seed)


if __name__ == "__main__":
    main()
