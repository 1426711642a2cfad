"""The chain character on permutations.

chi_N(x_{a1}, ..., x_{aN}) = 1 / (x_{a1} (x_{a2}-x_{a1}) ... (x_{aN}-x_{a(N-1)}) (1-x_{aN})),
with chi_0 = 1.  Variable x_i is polynomial variable i.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .algebra import MultiPoly, RatFunc, rf_equal
from .combinat.perms import Permutation, shuffle_words, shuffles
from .report import VerificationReport, timed

X = MultiPoly.var
ONE = MultiPoly.const(1)


@dataclass(frozen=True)
class ChiValue:
    arity: int
    value: RatFunc
    args: tuple


def chain_denominator(args) -> MultiPoly:
    args = tuple(args)
    if len(set(args)) != len(args):
        raise ValueError(f"repeated variable in {args}: a denominator factor would vanish")
    den = ONE
    prev = None
    for a in args:
        den = den * (X(a) if prev is None else X(a) - X(prev))
        prev = a
    if prev is not None:
        den = den * (ONE - X(prev))
    return den


def chi(N: int, args) -> ChiValue:
    args = tuple(int(a) for a in args)
    if len(args) != N:
        raise ValueError(f"chi_{N} needs {N} arguments, got {len(args)}")
    return ChiValue(N, RatFunc(ONE, chain_denominator(args)), args)


def chi_value(args) -> RatFunc:
    return chi(len(tuple(args)), args).value


# --------------------------------------------------------------------------
# F-basis

@dataclass(frozen=True)
class FBasisElement:
    perm: Permutation


class FBasisSum:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for p, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            c = t.get(p, 0) + c
            if c:
                t[p] = c
            else:
                t.pop(p, None)
        self.terms = t

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, FBasisSum) and self.terms == other.terms


def mr_product(sigma: Permutation, tau: Permutation) -> FBasisSum:
    """Shifted shuffle: interleavings of sigma's word with tau's word shifted
    by |sigma|, each with coefficient +1."""
    m = len(sigma)
    return FBasisSum([(Permutation(w), 1) for w in shuffle_words(sigma.word, tau.shifted(m))])


def character_eval(F) -> RatFunc:
    """chi on an F-basis element or (linearly) on an F-basis sum."""
    if isinstance(F, Permutation):
        F = FBasisElement(F)
    if isinstance(F, FBasisElement):
        return chi_value(F.perm.word)
    return tree_sum([chi_value(p.word) * c for p, c in sorted(F.terms.items(),
                                                              key=lambda pc: pc[0].word)])


# --------------------------------------------------------------------------
# summing chain characters over all interleavings of two words

def tree_sum(items):
    items = list(items)
    if not items:
        return RatFunc()
    while len(items) > 1:
        items = [items[i] + items[i + 1] if i + 1 < len(items) else items[i]
                 for i in range(0, len(items), 2)]
    return items[0]


def _inv(p: MultiPoly) -> RatFunc:
    return RatFunc(ONE, p)


def shuffle_chain_sum(u, v) -> RatFunc:
    """sum over interleavings w of u and v of chi(x_w), grouped by prefix.

    A[i][j] (resp. B[i][j]) sums the chain products of all interleavings of
    u[:i] and v[:j] ending in u[i-1] (resp. v[j-1]); extending a prefix by
    one letter multiplies by 1/(x_new - x_last).  Every interleaving is a
    unique path through this grid, so the total is the full sum.
    """
    m, n = len(u), len(v)
    if m + n == 0:
        return RatFunc(1)
    xu = [X(a) for a in u]
    xv = [X(b) for b in v]
    A: dict = {}
    B: dict = {}
    for i in range(m + 1):
        for j in range(n + 1):
            if i >= 1:
                if i == 1 and j == 0:
                    A[i, j] = _inv(xu[0])
                else:
                    s = RatFunc()
                    if i >= 2:
                        s = s + A[i - 1, j] * _inv(xu[i - 1] - xu[i - 2])
                    if j >= 1:
                        s = s + B[i - 1, j] * _inv(xu[i - 1] - xv[j - 1])
                    A[i, j] = s
            if j >= 1:
                if j == 1 and i == 0:
                    B[i, j] = _inv(xv[0])
                else:
                    s = RatFunc()
                    if j >= 2:
                        s = s + B[i, j - 1] * _inv(xv[j - 1] - xv[j - 2])
                    if i >= 1:
                        s = s + A[i, j - 1] * _inv(xv[j - 1] - xu[i - 1])
                    B[i, j] = s
    total = RatFunc()
    if m:
        total = total + A[m, n] * _inv(ONE - xu[-1])
    if n:
        total = total + B[m, n] * _inv(ONE - xv[-1])
    return total


def shuffle_chain_sum_terms(u, v) -> RatFunc:
    """The same sum, one interleaving at a time (independent route)."""
    return tree_sum([chi_value(w) for w in shuffle_words(tuple(u), tuple(v))])


def _random_point(rng: random.Random, nvars: int) -> dict:
    pts = {}
    used = {Fraction(0), Fraction(1)}
    for i in range(1, nvars + 1):
        while True:
            q = Fraction(rng.randint(-97, 97), rng.randint(1, 53))
            if q not in used:
                break
        used.add(q)
        pts[i] = q
    return pts


def numeric_check(words, rhs: RatFunc, nvars: int, seed: int, trials: int = 2):
    """Secondary oracle: sum of chi over explicit words against rhs at random
    rational points, then once more modulo a prime through the kernel."""
    rng = random.Random(seed)
    words = [tuple(w) for w in words]
    for _ in range(trials):
        pt = _random_point(rng, nvars)
        total = Fraction(0)
        for w in words:
            den = Fraction(1)
            prev = Fraction(0)
            for a in w:
                den *= pt[a] - prev
                prev = pt[a]
            den *= 1 - prev
            total += 1 / den
        if total != rhs.evaluate(pt):
            return False
    p = kernels.DEFAULT_PRIME
    table = np.array(words, dtype=np.int64).reshape(len(words), -1)
    for _ in range(trials):
        pt = [0] + [rng.randrange(2, p - 1) for _ in range(nvars)]
        got = kernels.chain_sum_mod(table, np.array(pt, dtype=np.int64), p)
        if got < 0:
            continue
        num = rhs.num.evaluate(lambda i: pt[i])
        den = rhs.den.evaluate(lambda i: pt[i])
        num = Fraction(num)
        den = Fraction(den)
        dd = den.numerator * num.denominator % p
        if dd == 0:
            continue
        want = num.numerator * den.denominator * pow(dd, -1, p) % p
        if got != want:
            return False
    return True


@timed
def verify_shuffle_relation(m: int, n: int, method: str = "prefix",
                            numeric: bool = True, seed: int = 0,
                            flip: bool = False) -> VerificationReport:
    """sum over Sh(m,n) of chi(x_{tau^{-1}(1)}, ...) = chi_m(x_1..x_m) chi_n(x_{m+1}..)."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be non-negative")
    u = tuple(range(1, m + 1))
    v = tuple(range(m + 1, m + n + 1))
    sh = shuffles(m, n)
    words = [t.inverse().word for t in sh]
    if method == "prefix":
        lhs = shuffle_chain_sum(u, v)
    elif method == "terms":
        lhs = tree_sum([chi_value(w) for w in words])
    else:
        raise ValueError(f"unknown method {method!r}")
    rhs = chi_value(u) * chi_value(v)
    if flip:
        rhs = -rhs
    ok = rf_equal(lhs, rhs)
    details = {"terms": len(sh), "method": method,
               "lhs_den_terms": len(lhs.den), "rhs": rhs.render()}
    if numeric:
        num_ok = numeric_check(words, rhs, m + n, seed * 1000003 + 31 * m + n)
        details["numeric_oracle"] = num_ok
        ok = ok and num_ok
    return VerificationReport("shuffle.relation", {"m": m, "n": n}, ok, details)


@timed
def verify_multiplicativity(sigma: Permutation, tau: Permutation,
                            numeric: bool = True, seed: int = 0) -> VerificationReport:
    m = len(sigma)
    prod = mr_product(sigma, tau)
    lhs = character_eval(prod)
    rhs = chi_value(sigma.word) * chi_value(tau.shifted(m))
    ok = rf_equal(lhs, rhs)
    details = {"terms": len(prod), "convention": "shifted-shuffle"}
    if numeric:
        words = [p.word for p in prod.terms]
        num_ok = numeric_check(words, rhs, m + len(tau), seed + hash(sigma.word + (0,) + tau.word) % 10007)
        details["numeric_oracle"] = num_ok
        ok = ok and num_ok
    return VerificationReport("hopf.multiplicativity",
                              {"sigma": str(sigma), "tau": str(tau)}, ok, details)
