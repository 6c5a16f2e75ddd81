"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on both backends and prints the speedup, then runs one
cold end-to-end computation per backend.
"""

import argparse
import random
import timeit

from hgmoduli import kernels
from hgmoduli.cache import MemoStore
from hgmoduli.modulirec import clear_caches, hodge_report


def _poly(rng, n):
    return [rng.randint(-1000, 1000) for _ in range(n)]


def cases(rng):
    a, b = _poly(rng, 200), _poly(rng, 200)
    prod = kernels.convolve(a, b)
    return {
        "convolve 200x200": lambda: kernels.convolve(a, b),
        "exact_div 399/200": lambda: kernels.exact_div(prod, b),
        "strom_counts G(3,6) delta=6": lambda: kernels.strom_counts(3, 6, 6),
        "strom_counts G(2,5) delta=10": lambda: kernels.strom_counts(2, 5, 10),
    }


def end_to_end():
    clear_caches()
    hodge_report(2, 5, 2, 3, MemoStore())


def bench(fn, repeat):
    number, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    rng = random.Random(7)
    rows = list(cases(rng).items()) + [("end-to-end G(2,5) n=2 d=3", end_to_end)]
    print(f"{'case':32} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    prev = kernels.backend()
    try:
        for name, fn in rows:
            times = {}
            for b in backends:
                kernels.use_backend(b)
                times[b] = bench(fn, 1 if name.startswith("end") else args.repeat)
            cells = " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
            speed = f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else ""
            print(f"{name:32} {cells} {speed}")
    finally:
        kernels.use_backend(prev)


if __name__ == "__main__":
    main()
