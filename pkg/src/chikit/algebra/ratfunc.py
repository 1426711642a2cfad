"""Rational functions in canonical form.

``num/den`` with gcd(num, den) = 1, den integral and primitive with a
positive leading coefficient in graded-lex order.  Any rational content
lives in the numerator.  Two equal rational functions therefore have
identical ``num`` and ``den``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .gcd import poly_gcd
from .poly import MultiPoly, _norm_coef

_ONE = MultiPoly.const(1)


class RatFunc:
    __slots__ = ("num", "den", "_h")

    def __init__(self, num=0, den=None, _canonical: bool = False):
        num = MultiPoly._coerce(num)
        if den is None:
            self.num, self.den = num, _ONE
        elif _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonicalize(num, MultiPoly._coerce(den))
        self._h = None

    @classmethod
    def var(cls, i: int) -> RatFunc:
        return cls(MultiPoly.var(i))

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(MultiPoly.const(Fraction(c) if not isinstance(c, (int, Fraction)) else c))

    @staticmethod
    def _coerce(x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (MultiPoly, int, Fraction)):
            return RatFunc(x)
        raise TypeError(f"cannot use {type(x).__name__} as a rational function")

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def variables(self) -> set[int]:
        return self.num.variables() | self.den.variables()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    # arithmetic
    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return RatFunc(a.num + b.num, a.den)
        if a.den.is_constant():
            return RatFunc(a.num * b.den + b.num, b.den, _canonical=True)
        if b.den.is_constant():
            return RatFunc(a.num + b.num * a.den, a.den, _canonical=True)
        g = poly_gcd(a.den, b.den)
        if g.is_constant():
            return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den, _canonical=True)
        ad, bd = a.den.exquo(g), b.den.exquo(g)
        num = a.num * bd + b.num * ad
        if not num:
            return RatFunc()
        # common factors of num and the new denominator can only come from g
        h = poly_gcd(num, g)
        if not h.is_constant():
            num = num.exquo(h)
            g = g.exquo(h)
        return RatFunc(num, ad * bd * g, _canonical=True)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den, _canonical=True) if other else RatFunc()
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if not a.num or not b.num:
            return RatFunc()
        an, ad, bn, bd = a.num, a.den, b.num, b.den
        g1 = poly_gcd(an, bd) if not bd.is_constant() else None
        if g1 is not None and not g1.is_constant():
            an, bd = an.exquo(g1), bd.exquo(g1)
        g2 = poly_gcd(bn, ad) if not ad.is_constant() else None
        if g2 is not None and not g2.is_constant():
            bn, ad = bn.exquo(g2), ad.exquo(g2)
        return RatFunc(an * bn, ad * bd, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        c, p = self.num.primitive()
        # p has positive LC and is primitive: it is a valid denominator
        return RatFunc(self.den.scale(Fraction(1) / c), p, _canonical=True)

    def __truediv__(self, other):
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not b.num:
            raise ZeroDivisionError("division by the zero rational function")
        return self * b.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _canonical=True)

    # substitution / evaluation
    def relabel(self, mapping: Mapping[int, int]) -> RatFunc:
        occurring = self.variables()
        images = [mapping.get(v, v) for v in occurring]
        if len(set(images)) != len(images):
            raise ValueError("relabeling is not injective on the occurring variables")
        # gcd and content survive a relabel; only the sign of the
        # leading coefficient can change
        n, d = self.num.relabel(mapping), self.den.relabel(mapping)
        if d.lc() < 0:
            n, d = -n, -d
        return RatFunc(n, d, _canonical=True)

    def compose(self, images: Mapping[int, MultiPoly]) -> RatFunc:
        den = self.den.compose(images)
        if not den:
            raise ZeroDivisionError(
                f"denominator {self.den.render()} vanishes identically after substitution")
        return RatFunc(self.num.compose(images), den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("evaluation point is a pole")
        return _norm_coef(Fraction(self.num.evaluate(point)) / d)

    def render(self, name: Callable[[int], str] | None = None) -> str:
        n = self.num.render(name)
        if self.den == _ONE:
            return n
        return f"({n})/({self.den.render(name)})"

    def __repr__(self):
        return f"RatFunc({self.render()})"


def _canonicalize(num: MultiPoly, den: MultiPoly):
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return MultiPoly(), _ONE
    cd, pd = den.primitive()
    if pd.is_constant():
        return num.scale(Fraction(1) / cd), _ONE
    cn, pn = num.primitive()
    g = poly_gcd(pn, pd)
    if not g.is_constant():
        pn, pd = pn.exquo(g), pd.exquo(g)
    return pn.scale(Fraction(cn) / cd), pd


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_substitute(a: RatFunc, relabel: Mapping[int, int]) -> RatFunc:
    return a.relabel(relabel)


def cross_equal(a: RatFunc, b: RatFunc) -> bool:
    """Equality by cross multiplication; ignores canonical forms entirely."""
    return a.num * b.den == b.num * a.den


def rf_equal(a: RatFunc, b: RatFunc) -> bool:
    canon = a == b
    cross = cross_equal(a, b)
    if canon != cross:
        raise AssertionError(
            f"canonical-form and cross-multiplication equality disagree on {a!r} vs {b!r}")
    return canon


def rf_sum(items) -> RatFunc:
    total = RatFunc()
    for x in items:
        total = total + x
    return total


def rf_prod(items) -> RatFunc:
    total = RatFunc(1)
    for x in items:
        total = total * x
    return total
