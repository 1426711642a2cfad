"""Integer kernels: shuffle tables, signs, lattice enumeration, modular
shuffle sums and fraction-free rank.

Each kernel has a numba version (``*_jit``) and a vectorized numpy version
(``*_np``).  The public names dispatch on ``USE_JIT``, which is on when
numba imports and ``CHI_KIT_NO_JIT`` is unset (or ``0``).  Both versions
are always importable so tests and the benchmark can compare them.
"""
from __future__ import annotations

import os
from itertools import combinations
from math import comb

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

USE_JIT = HAVE_NUMBA and os.environ.get("CHI_KIT_NO_JIT", "0") in ("", "0")

# primes below 2**31 keep every product inside int64
DEFAULT_PRIME = 2147483629


def backend() -> str:
    return "numba" if USE_JIT else "numpy"


# --------------------------------------------------------------------------
# shuffle tables

@njit(cache=True)
def _shuffle_table_jit(m, n):
    N = m + n
    count = 1
    for i in range(m):
        count = count * (N - i) // (i + 1)
    out = np.empty((count, N), dtype=np.int64)
    idx = np.arange(m)  # positions of the first block, lexicographic
    for row in range(count):
        # tau(i) = idx[i]+1 for i < m, remaining positions increasing
        taken = np.zeros(N, dtype=np.bool_)
        for i in range(m):
            out[row, i] = idx[i] + 1
            taken[idx[i]] = True
        k = m
        for p in range(N):
            if not taken[p]:
                out[row, k] = p + 1
                k += 1
        # next combination
        i = m - 1
        while i >= 0 and idx[i] == i + N - m:
            i -= 1
        if i >= 0:
            idx[i] += 1
            for j in range(i + 1, m):
                idx[j] = idx[j - 1] + 1
    return out


def _shuffle_table_np(m, n):
    N = m + n
    rows = list(combinations(range(1, N + 1), m))
    first = np.array(rows, dtype=np.int64).reshape(len(rows), m)
    mask = np.ones((len(rows), N + 1), dtype=bool)
    mask[:, 0] = False
    np.put_along_axis(mask, first, False, axis=1)
    rest = np.nonzero(mask)[1].reshape(len(rows), n).astype(np.int64)
    return np.concatenate([first, rest], axis=1)


@njit(cache=True)
def _signs_jit(words):
    T, N = words.shape
    out = np.empty(T, dtype=np.int64)
    for r in range(T):
        inv = 0
        for i in range(N):
            for j in range(i + 1, N):
                if words[r, i] > words[r, j]:
                    inv += 1
        out[r] = 1 - 2 * (inv & 1)
    return out


def _signs_np(words):
    words = np.asarray(words, dtype=np.int64)
    if words.shape[1] < 2:
        return np.ones(words.shape[0], dtype=np.int64)
    gt = words[:, :, None] > words[:, None, :]
    inv = np.triu(gt, k=1).sum(axis=(1, 2))
    return (1 - 2 * (inv & 1)).astype(np.int64)


def shuffle_table(m: int, n: int) -> np.ndarray:
    """Rows are the one-line words of the (m, n)-shuffles, lexicographic in
    the image of the first block."""
    if m < 0 or n < 0:
        raise ValueError("shuffle type must be non-negative")
    if m + n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if m == 0 or n == 0:
        return np.arange(1, m + n + 1, dtype=np.int64).reshape(1, m + n)
    return _shuffle_table_jit(m, n) if USE_JIT else _shuffle_table_np(m, n)


def perm_signs(words) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.int64)
    if words.ndim == 1:
        words = words.reshape(1, -1)
    if words.shape[1] == 0:
        return np.ones(words.shape[0], dtype=np.int64)
    return _signs_jit(words) if USE_JIT else _signs_np(words)


# --------------------------------------------------------------------------
# prefix-sum lattice

@njit(cache=True)
def _lattice_jit(N, B):
    total = (B + 1) ** N
    J = np.empty((total, N), dtype=np.int64)
    I = np.empty((total, N), dtype=np.int64)
    inside = np.empty(total, dtype=np.bool_)
    cur = np.zeros(N, dtype=np.int64)
    for r in range(total):
        ok = True
        acc = 0
        for k in range(N):
            J[r, k] = cur[k]
            I[r, k] = cur[k] - (cur[k - 1] if k > 0 else 0)
            acc += I[r, k]
            if acc < 0:
                ok = False
        inside[r] = ok
        # odometer, last coordinate fastest
        k = N - 1
        while k >= 0:
            cur[k] += 1
            if cur[k] <= B:
                break
            cur[k] = 0
            k -= 1
    return J, I, inside


def _lattice_np(N, B):
    grids = np.indices((B + 1,) * N).reshape(N, -1).T.astype(np.int64)
    I = np.diff(grids, axis=1, prepend=0)
    inside = (np.cumsum(I, axis=1) >= 0).all(axis=1)
    return grids, I, inside


def prefix_lattice(N: int, B: int):
    """(J, I, inside): all J in [0,B]^N, their difference vectors I and the
    prefix-cone membership of each I."""
    if N < 0 or B < 0:
        raise ValueError("dimension and bound must be non-negative")
    if N == 0:
        e = np.zeros((1, 0), dtype=np.int64)
        return e, e.copy(), np.ones(1, dtype=bool)
    return _lattice_jit(N, B) if USE_JIT else _lattice_np(N, B)


# --------------------------------------------------------------------------
# modular evaluation of sums of chain products
#   sum over rows w of 1 / (x_{w1} (x_{w2}-x_{w1}) ... (1 - x_{wN}))

@njit(cache=True)
def _powmod_jit(a, e, p):
    r = 1
    a %= p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@njit(cache=True)
def _chain_sum_mod_jit(words, point, p):
    T, N = words.shape
    total = 0
    for r in range(T):
        den = 1
        prev = 0
        for k in range(N):
            cur = point[words[r, k]]
            den = (den * ((cur - prev) % p)) % p
            prev = cur
        den = (den * ((1 - prev) % p)) % p
        if den == 0:
            return -1
        total = (total + _powmod_jit(den, p - 2, p)) % p
    return total


def _powmod_np(a, e, p):
    a = a % p
    r = np.ones_like(a)
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def _chain_sum_mod_np(words, point, p):
    vals = point[words]  # T x N
    prev = np.concatenate([np.zeros((vals.shape[0], 1), dtype=np.int64), vals], axis=1)
    diffs = np.concatenate([np.diff(prev, axis=1), (1 - vals[:, -1:])], axis=1) % p
    den = np.ones(vals.shape[0], dtype=np.int64)
    for k in range(diffs.shape[1]):
        den = (den * diffs[:, k]) % p
    if (den == 0).any():
        return -1
    return int(_powmod_np(den, p - 2, p).sum() % p)


def chain_sum_mod(words, point, p: int = DEFAULT_PRIME) -> int:
    """Sum of the chain products over the rows of ``words`` modulo p, with
    variable i evaluated at ``point[i]``.  Returns -1 on a pole."""
    words = np.ascontiguousarray(words, dtype=np.int64)
    point = np.ascontiguousarray(point, dtype=np.int64) % p
    if words.shape[1] == 0:
        return 1 % p * words.shape[0] % p
    if USE_JIT:
        return int(_chain_sum_mod_jit(words, point, p))
    return _chain_sum_mod_np(words, point, p)


# --------------------------------------------------------------------------
# fraction-free rank (Bareiss); exact while all minors fit in int64

_LIMIT = 1 << 31


@njit(cache=True)
def _rank_jit(a):
    M = a.copy()
    rows, cols = M.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(cols):
                tmp = M[rank, k]
                M[rank, k] = M[piv, k]
                M[piv, k] = tmp
        pv = M[rank, c]
        for r in range(rank + 1, rows):
            f = M[r, c]
            for k in range(c + 1, cols):
                x = M[r, k]
                y = M[rank, k]
                if abs(x) >= _LIMIT or abs(y) >= _LIMIT or abs(pv) >= _LIMIT or abs(f) >= _LIMIT:
                    raise OverflowError("entries too large for int64 elimination")
                M[r, k] = (x * pv - f * y) // prev
            M[r, c] = 0
        prev = pv
        rank += 1
    return rank


def _rank_np(a):
    M = np.array(a, dtype=np.int64)
    rows, cols = M.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        pv = M[rank, c]
        if np.abs(M[rank:]).max() >= _LIMIT:
            raise OverflowError("entries too large for int64 elimination")
        below = M[rank + 1:, c:c + 1]
        M[rank + 1:, c + 1:] = (M[rank + 1:, c + 1:] * pv - below * M[rank, c + 1:]) // prev
        M[rank + 1:, c] = 0
        prev = pv
        rank += 1
    return rank


def int_rank(a) -> int:
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return int(_rank_jit(a)) if USE_JIT else int(_rank_np(a))


def n_shuffles(m: int, n: int) -> int:
    return comb(m + n, m)
