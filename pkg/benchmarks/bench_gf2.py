"""Compare the compiled and pure-Python GF(2) rank kernels.

Run with ``python benchmarks/bench_gf2.py``.
"""
import random
import timeit

from khsharp import gf2


def matrix(nrows, ncols, density, seed):
    rng = random.Random(seed)
    return [[c for c in range(ncols) if rng.random() < density] for _ in range(nrows)]


def main():
    print(f"compiled backend: {gf2.BACKEND}")
    print(f"{'size':>10} {'python ms':>10} {'backend ms':>11} {'speedup':>8}")
    for size in (64, 256, 512, 1024):
        rows = matrix(size, size, 0.05, size)
        assert gf2.rank(rows, size) == gf2.python_rank(rows, size)
        reps = max(1, 2048 // size)
        tp = min(timeit.repeat(lambda: gf2.python_rank(rows, size), number=reps, repeat=3)) / reps
        tc = min(timeit.repeat(lambda: gf2.rank(rows, size), number=reps, repeat=3)) / reps
        print(f"{size:>10} {tp * 1e3:>10.2f} {tc * 1e3:>11.2f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
