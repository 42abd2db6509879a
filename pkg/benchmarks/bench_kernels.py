"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the two hot paths (edit distance over label pairs, brute-force
isomorphism search over permuted graph pairs) on every available backend and
prints a timing table. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--pairs N] [--iso-cases N] [--size N]
"""

from __future__ import annotations

import argparse
import random
import string
import time


def load_backends():
    from bcfuse import _kernels_py

    backends = [("python", _kernels_py)]
    try:
        from bcfuse import _kernels

        backends.append(("cython", _kernels))
    except ImportError:
        pass
    return backends


def random_word(rng: random.Random, lo: int = 3, hi: int = 14) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(lo, hi)))


def make_label_pairs(rng: random.Random, n: int) -> list[tuple[str, str]]:
    return [(random_word(rng), random_word(rng)) for _ in range(n)]


def make_iso_case(rng: random.Random, n: int):
    """A random labeled digraph and a permuted twin (an isomorphic pair)."""
    codes = list(range(4))
    m1 = [rng.choice(codes) for _ in range(n * n)]
    b1 = [rng.choice(codes) for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    m2 = [0] * (n * n)
    b2 = [0] * n
    for i in range(n):
        b2[perm[i]] = b1[i]
        for j in range(n):
            m2[perm[i] * n + perm[j]] = m1[i * n + j]
    if rng.random() < 0.5:
        # Break one cell so half the cases exercise the full failing search.
        cell = rng.randrange(n * n)
        m2[cell] = (m2[cell] + 1) % (len(codes) + 1)
    return n, m1, m2, b1, b2


def bench(fn, cases) -> float:
    start = time.perf_counter()
    for case in cases:
        fn(*case)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=10000, help="label pairs for levenshtein")
    parser.add_argument("--iso-cases", type=int, default=300, help="graph pairs for iso_exists")
    parser.add_argument("--size", type=int, default=7, help="vertices per iso case (<= 10)")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    pairs = make_label_pairs(rng, args.pairs)
    iso_cases = [make_iso_case(rng, args.size) for _ in range(args.iso_cases)]

    backends = load_backends()
    rows = []
    for name, mod in backends:
        t_lev = bench(mod.levenshtein, pairs)
        t_iso = bench(mod.iso_exists, iso_cases)
        rows.append((name, t_lev, t_iso))

    base_lev = rows[0][1]
    base_iso = rows[0][2]
    print(f"{'backend':<10} {'levenshtein':>14} {'speedup':>8} {'iso_exists':>14} {'speedup':>8}")
    for name, t_lev, t_iso in rows:
        print(
            f"{name:<10} {t_lev:>12.4f} s {base_lev / t_lev:>7.1f}x"
            f" {t_iso:>12.4f} s {base_iso / t_iso:>7.1f}x"
        )
    if len(rows) == 1:
        print("compiled backend unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
