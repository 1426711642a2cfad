"""Sparse multivariate polynomials over the rationals.

Monomials are stored as dense exponent tuples indexed by variable number
with trailing zeros trimmed, so ``()`` is the constant monomial and
``(0, 2, 1)`` is ``x1^2*x2``.  That form is canonical: every monomial has
exactly one key.  Coefficients are Python ints whenever possible and
``Fraction`` otherwise; zero coefficients are never stored.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

Mono = tuple


def _norm_coef(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div_coef(v, c):
    if type(v) is int and type(c) is int and v % c == 0:
        return v // c
    return _norm_coef(Fraction(v) / c)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple([x + y for x, y in zip(a, b)]) + a[len(b):]


def mono_div(a: Mono, b: Mono):
    """a / b as a monomial, or None if b does not divide a."""
    if len(b) > len(a):
        return None
    out = list(a)
    for i, e in enumerate(b):
        if e > out[i]:
            return None
        out[i] -= e
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _trim(m: list) -> Mono:
    while m and m[-1] == 0:
        m.pop()
    return tuple(m)


def grlex_key(m: Mono):
    return (sum(m), m)


def _heap_key(m: Mono):
    # smaller key = larger monomial in grlex; the sentinel handles padding
    return (-sum(m), tuple(-e for e in m) + (1,))


class MultiPoly:
    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping | None = None, _clean: bool = False):
        if terms is None:
            self._t = {}
        elif _clean:
            self._t = terms
        else:
            t = {}
            for m, c in terms.items():
                m = _trim(list(m))
                c = t.get(m, 0) + c
                if c:
                    t[m] = _norm_coef(c)
                else:
                    t.pop(m, None)
            self._t = t
        self._h = None

    # construction helpers
    @classmethod
    def const(cls, c) -> MultiPoly:
        c = _norm_coef(c)
        return cls({(): c} if c else {}, _clean=True)

    @classmethod
    def var(cls, i: int, power: int = 1) -> MultiPoly:
        if i < 0:
            raise ValueError("variable index must be non-negative")
        if power == 0:
            return cls.const(1)
        return cls({(0,) * i + (power,): 1}, _clean=True)

    @classmethod
    def monomial(cls, exps: Mapping[int, int], coef=1) -> MultiPoly:
        width = max(exps, default=-1) + 1
        m = [0] * width
        for v, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            m[v] = e
        return cls({_trim(m): coef})

    @classmethod
    def linear(cls, coefs: Mapping[int, object], const=0) -> MultiPoly:
        p = {(): const} if const else {}
        for v, c in coefs.items():
            if c:
                p[(0,) * v + (1,)] = _norm_coef(Fraction(c) if not isinstance(c, int) else c)
        return cls(p, _clean=True)

    # basic access
    @property
    def terms(self) -> dict:
        return self._t

    def items(self):
        return self._t.items()

    def sparse_terms(self):
        """Terms keyed by {variable: exponent} maps without zero entries."""
        return [({i: e for i, e in enumerate(m) if e}, c) for m, c in self._t.items()]

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def constant_value(self):
        return self._t.get((), 0)

    def variables(self) -> set[int]:
        vs = set()
        for m in self._t:
            vs.update(i for i, e in enumerate(m) if e)
        return vs

    def max_var(self) -> int:
        return max((len(m) - 1 for m in self._t), default=-1)

    def degree(self, v: int | None = None) -> int:
        if not self._t:
            return -1
        if v is None:
            return max(sum(m) for m in self._t)
        return max((m[v] if v < len(m) else 0) for m in self._t)

    def leading(self):
        m = max(self._t, key=grlex_key)
        return m, self._t[m]

    def lc(self):
        return self.leading()[1] if self._t else 0

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._t.values())

    # equality / hashing
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # arithmetic
    @staticmethod
    def _coerce(x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for m, c in b.items():
            c = t.get(m, 0) + c
            if c:
                t[m] = _norm_coef(c)
            else:
                del t[m]
        return MultiPoly(t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._t.items()}, _clean=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self._t)
        for m, c in other._t.items():
            c = t.get(m, 0) - c
            if c:
                t[m] = _norm_coef(c)
            else:
                del t[m]
        return MultiPoly(t, _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> MultiPoly:
        c = _norm_coef(c)
        if not c:
            return MultiPoly()
        if c == 1:
            return self
        return MultiPoly({m: _norm_coef(v * c) for m, v in self._t.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly()
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        get = t.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                t[m] = get(m, 0) + ca * cb
        return MultiPoly({m: _norm_coef(c) for m, c in t.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # content
    def content(self):
        """Positive rational c with self/c integral and primitive."""
        if not self._t:
            return 0
        nums = 0
        dens = 1
        for c in self._t.values():
            if type(c) is int:
                nums = gcd(nums, c)
            else:
                nums = gcd(nums, c.numerator)
                dens = lcm(dens, c.denominator)
        return nums if dens == 1 else Fraction(nums, dens)

    def primitive(self):
        """(c, p) with self = c*p, p integral and primitive, positive grlex LC."""
        if not self._t:
            return 0, MultiPoly()
        c = self.content()
        if self.lc() < 0:
            c = -c
        if c == 1:
            return 1, self
        if type(c) is int:
            return c, MultiPoly({m: v // c for m, v in self._t.items()}, _clean=True)
        return c, MultiPoly({m: _norm_coef(v / c) for m, v in self._t.items()}, _clean=True)

    def max_norm(self) -> int:
        return max((abs(c) for c in self._t.values()), default=0)

    # division
    def exquo(self, other: MultiPoly):
        """Exact quotient self/other, or None when other does not divide self."""
        other = self._coerce(other)
        if not other._t:
            raise ZeroDivisionError("polynomial division by zero")
        if not self._t:
            return MultiPoly()
        if other.is_constant():
            c = other._t[()]
            return MultiPoly({m: _div_coef(v, c) for m, v in self._t.items()}, _clean=True)
        # cheap degree screen
        for v in other.variables():
            if other.degree(v) > self.degree(v):
                return None
        lm, lc_ = other.leading()
        g = list(other._t.items())
        rem = dict(self._t)
        heap = [(_heap_key(m), m) for m in rem]
        heapq.heapify(heap)
        q = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = rem.pop(m, 0)
            if not c:
                continue
            qm = mono_div(m, lm)
            if qm is None:
                return None
            qc = _div_coef(c, lc_)
            q[qm] = qc
            for gm, gc in g:
                if gm == lm:
                    continue
                nm = mono_mul(qm, gm)
                old = rem.get(nm)
                nv = (old or 0) - qc * gc
                if nv:
                    rem[nm] = _norm_coef(nv)
                    if old is None:
                        heapq.heappush(heap, (_heap_key(nm), nm))
                elif old is not None:
                    del rem[nm]
        return MultiPoly(q, _clean=True)

    def divides(self, other: MultiPoly) -> bool:
        return other.exquo(self) is not None

    # substitution / evaluation
    def eval_var(self, v: int, value) -> MultiPoly:
        t: dict = {}
        cache = {}
        for m, c in self._t.items():
            if v < len(m) and m[v]:
                e = m[v]
                pw = cache.get(e)
                if pw is None:
                    pw = cache[e] = value ** e
                nm = _trim(list(m[:v]) + [0] + list(m[v + 1:]))
                c = c * pw
            else:
                nm = m
            t[nm] = t.get(nm, 0) + c
        return MultiPoly({m: _norm_coef(c) for m, c in t.items() if c}, _clean=True)

    def evaluate(self, point: Mapping[int, object] | Callable[[int], object]):
        """Evaluate at a full point (mapping or callable from index to value)."""
        get = point if callable(point) else point.__getitem__
        total = 0
        for m, c in self._t.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term * get(i) ** e
            total = total + term
        return _norm_coef(total) if isinstance(total, Fraction) else total

    def relabel(self, mapping: Mapping[int, int]) -> MultiPoly:
        occurring = self.variables()
        images = [mapping.get(v, v) for v in occurring]
        if len(set(images)) != len(images):
            raise ValueError("relabeling is not injective on the occurring variables")
        t = {}
        for m, c in self._t.items():
            exps = {mapping.get(i, i): e for i, e in enumerate(m) if e}
            width = max(exps, default=-1) + 1
            nm = [0] * width
            for i, e in exps.items():
                nm[i] = e
            t[tuple(nm)] = c
        return MultiPoly(t, _clean=True)

    def compose(self, images: Mapping[int, MultiPoly]) -> MultiPoly:
        """Substitute polynomials for variables (unlisted variables stay)."""
        if not images:
            return self
        powers: dict = {}

        def pw(v, e):
            key = (v, e)
            r = powers.get(key)
            if r is None:
                r = powers[key] = images[v] ** e
            return r

        out: dict = {}
        for m, c in self._t.items():
            keep = []
            term = None
            for i, e in enumerate(m):
                if e and i in images:
                    term = pw(i, e) if term is None else term * pw(i, e)
                    keep.append(0)
                else:
                    keep.append(e)
            base = MultiPoly({_trim(keep): c}, _clean=True)
            piece = base if term is None else base * term
            for k, v in piece._t.items():
                out[k] = out.get(k, 0) + v
        return MultiPoly({m: _norm_coef(c) for m, c in out.items() if c}, _clean=True)

    def diff(self, v: int) -> MultiPoly:
        t = {}
        for m, c in self._t.items():
            if v < len(m) and m[v]:
                nm = list(m)
                nm[v] -= 1
                t[_trim(nm)] = c * m[v]
        return MultiPoly(t, _clean=True)

    # rendering
    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def render(self, name: Callable[[int], str] | None = None) -> str:
        if not self._t:
            return "0"
        name = name or (lambda i: f"x{i}")
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(name(i))
                elif e:
                    factors.append(f"{name(i)}^{e}")
            neg = c < 0
            a = -c if neg else c
            if factors:
                body = "*".join(factors) if a == 1 else f"{a}*" + "*".join(factors)
            else:
                body = str(a)
            if k == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.render()})"


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    t: dict = {}
    for p in polys:
        for m, c in p.terms.items():
            t[m] = t.get(m, 0) + c
    return MultiPoly({m: _norm_coef(c) for m, c in t.items() if c}, _clean=True)


def X(i: int) -> MultiPoly:
    return MultiPoly.var(i)


ONE = MultiPoly.const(1)
ZERO = MultiPoly()
