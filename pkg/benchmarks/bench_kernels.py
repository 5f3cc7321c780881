"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--rank 5] [--repeat 3]
"""

import argparse
import random
import time

from schottky_scale import kernels
from schottky_scale.enumeration import _enumerate_keys_cached


def random_matrices(count, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(4, 10)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.choice([0, 0, 1, 1, 2])
        out.append((n, [x for row in m for x in row]))
    return out


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=5, help="rank to enumerate (default 5)")
    ap.add_argument("--matrices", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels.compiled_backend is not None else [])
    if len(backends) == 1:
        print("compiled backend not built; timing the Python kernels only")
    mats = random_matrices(args.matrices)
    rows = []
    for name in backends:
        kernels.use_backend(name)
        canon = best_of(args.repeat, lambda: [kernels.canonical_form(n, f) for n, f in mats])
        enum = best_of(args.repeat, lambda: _enumerate_keys_cached.__wrapped__(args.rank, 1))
        rows.append((name, canon, enum))
    print(f"{'backend':8}  {'canonical_form x' + str(args.matrices):>22}  {'enumerate rank ' + str(args.rank):>18}")
    for name, canon, enum in rows:
        print(f"{name:8}  {canon:21.3f}s  {enum:17.3f}s")
    if len(rows) == 2:
        print(f"speedup   {rows[0][1] / rows[1][1]:21.1f}x  {rows[0][2] / rows[1][2]:17.1f}x")


if __name__ == "__main__":
    main()
