"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row checks that both paths agree, then reports the best-of-N time.
The first jit call (compilation or cache load) is excluded.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from chikit import kernels as K


def _cases():
    rng = np.random.default_rng(0)
    words = K._shuffle_table_np(6, 6)
    point = np.concatenate([[0], rng.integers(2, K.DEFAULT_PRIME - 1, size=12)]).astype(np.int64)
    sparse = np.zeros((120, 121), dtype=np.int64)
    for i in range(120):
        sparse[i, i] = 1
        sparse[i, i + 1] = -1
    return [
        ("shuffle_table(6,6)", K._shuffle_table_jit, K._shuffle_table_np, (6, 6)),
        ("perm_signs(924x12)", K._signs_jit, K._signs_np, (words,)),
        ("prefix_lattice(4,9)", K._lattice_jit, K._lattice_np, (4, 9)),
        ("chain_sum_mod(924x12)", K._chain_sum_mod_jit, K._chain_sum_mod_np,
         (words, point, K.DEFAULT_PRIME)),
        ("int_rank(120x121 band)", K._rank_jit, K._rank_np, (sparse,)),
    ]


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 0
    print(f"{'kernel':26s} {'numba ms':>10s} {'numpy ms':>10s} {'ratio':>8s}  agree")
    for name, fj, fn, a in _cases():
        rj = fj(*a)  # warm-up / compile
        rn = fn(*a)
        agree = _same(rj, rn)
        tj = min(timeit.repeat(lambda: fj(*a), number=1, repeat=args.repeat)) * 1e3
        tn = min(timeit.repeat(lambda: fn(*a), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:26s} {tj:10.3f} {tn:10.3f} {tn / max(tj, 1e-9):8.1f}  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
