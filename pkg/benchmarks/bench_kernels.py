"""Compiled vs pure-Python prime-field kernels.

    python3 benchmarks/bench_kernels.py [--sizes 8,16,32,64] [--primes 2,5,65521] [--repeat 5]

Prints the best-of-``repeat`` time per call for ``matmul_mod`` and
``rref_mod`` and the speedup of the compiled module. Results are checked
to agree before timing.
"""
import argparse
import random
import sys
import timeit

from karoubi._kernels import _pure

try:
    from karoubi._kernels import _fastfp
except ImportError:
    _fastfp = None


def _table(rng, m, n, p):
    return tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(m))


def _best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10**6:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench(sizes, primes, repeat, seed=0):
    rng = random.Random(seed)
    rows = []
    for p in primes:
        for n in sizes:
            a, b = _table(rng, n, n, p), _table(rng, n, n, p)
            cases = {
                "matmul_mod": (lambda mod: lambda: mod.matmul_mod(a, b, n, n, n, p)),
                "rref_mod": (lambda mod: lambda: mod.rref_mod(a, n, n, p)),
            }
            for kernel, make in cases.items():
                pure_fn, fast_fn = make(_pure), make(_fastfp)
                if fast_fn() != pure_fn():
                    raise SystemExit(f"kernel mismatch: {kernel} p={p} n={n}")
                tp, tf = _best(pure_fn, repeat), _best(fast_fn, repeat)
                rows.append((kernel, p, n, tp, tf))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,8,16,32,64")
    ap.add_argument("--primes", default="2,5,65521")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _fastfp is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    sizes = [int(s) for s in args.sizes.split(",")]
    primes = [int(s) for s in args.primes.split(",")]
    print(f"{'kernel':<11} {'p':>6} {'n':>4} {'pure (us)':>12} {'compiled (us)':>14} {'speedup':>8}")
    for kernel, p, n, tp, tf in bench(sizes, primes, args.repeat):
        print(f"{kernel:<11} {p:>6} {n:>4} {tp * 1e6:>12.1f} {tf * 1e6:>14.1f} {tp / tf:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
