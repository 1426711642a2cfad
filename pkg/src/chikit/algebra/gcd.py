"""Multivariate polynomial GCD over the integers.

The fast path is the heuristic GCD: evaluate the highest variable at a
large integer, recurse, and lift the answer back through a balanced
base-xi expansion.  A candidate is only accepted after exact trial
division, so a wrong answer is impossible; when the heuristic gives up we
fall back to a recursive primitive remainder sequence.
"""
from __future__ import annotations

from math import gcd as igcd, isqrt

from .poly import MultiPoly, _trim

_HEU_TRIES = 6


class HeuristicGCDFailed(Exception):
    pass


def _int_content(p: MultiPoly) -> int:
    g = 0
    for c in p.terms.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _divide_int(p: MultiPoly, c: int) -> MultiPoly:
    if c == 1:
        return p
    return MultiPoly({m: v // c for m, v in p.terms.items()}, _clean=True)


def _positive(p: MultiPoly) -> MultiPoly:
    return -p if p and p.lc() < 0 else p


def _common_monomial(f: MultiPoly, g: MultiPoly):
    mins = None
    for m in list(f.terms) + list(g.terms):
        if mins is None:
            mins = list(m)
        else:
            if len(m) < len(mins):
                del mins[len(m):]
            for i in range(len(mins)):
                if m[i] < mins[i]:
                    mins[i] = m[i]
    return _trim(mins or [])


def _interpolate(h: MultiPoly, xi: int, v: int) -> MultiPoly:
    half = xi // 2
    out = {}
    for m, c in h.terms.items():
        i = 0
        while c:
            r = c % xi
            if r > half:
                r -= xi
            if r:
                nm = list(m) + [0] * max(0, v + 1 - len(m))
                nm[v] = i
                out[_trim(nm)] = r
            c = (c - r) // xi
            i += 1
    return MultiPoly(out, _clean=True)


def _exquo_int(f: MultiPoly, g: MultiPoly):
    q = f.exquo(g)
    if q is None or not q.is_integral():
        return None
    return q


def _heu(f: MultiPoly, g: MultiPoly):
    """(h, f/h, g/h) for integral f, g (not both zero); h includes content."""
    if f.is_constant() or g.is_constant():
        if f.is_constant() and g.is_constant():
            a, b = f.constant_value(), g.constant_value()
            h = igcd(a, b)
            return MultiPoly.const(h), MultiPoly.const(a // h), MultiPoly.const(b // h)
        if f.is_constant():
            a = f.constant_value()
            h = igcd(a, _int_content(g))
            return MultiPoly.const(h), MultiPoly.const(a // h), _divide_int(g, h)
        b = g.constant_value()
        h = igcd(b, _int_content(f))
        return MultiPoly.const(h), _divide_int(f, h), MultiPoly.const(b // h)

    cf, cg = _int_content(f), _int_content(g)
    c = igcd(cf, cg)
    f, g = _divide_int(f, c), _divide_int(g, c)
    v = max(f.max_var(), g.max_var())

    fn, gn = f.max_norm(), g.max_norm()
    b = 2 * min(fn, gn) + 29
    xi = max(min(b, 99 * isqrt(b)),
             2 * min(fn // abs(f.lc()), gn // abs(g.lc())) + 2)

    for _ in range(_HEU_TRIES):
        ff = f.eval_var(v, xi)
        gg = g.eval_var(v, xi)
        if ff and gg:
            h, cff, cfg = _heu(ff, gg)
            hh = _interpolate(h, xi, v)
            hh = _divide_int(hh, _int_content(hh))
            qf = _exquo_int(f, hh)
            if qf is not None:
                qg = _exquo_int(g, hh)
                if qg is not None:
                    return hh.scale(c), qf, qg
            cf_ = _interpolate(cff, xi, v)
            hh = _exquo_int(f, cf_) if cf_ else None
            if hh is not None:
                qg = _exquo_int(g, hh)
                if qg is not None:
                    return hh.scale(c), cf_, qg
            cg_ = _interpolate(cfg, xi, v)
            hh = _exquo_int(g, cg_) if cg_ else None
            if hh is not None:
                qf = _exquo_int(f, hh)
                if qf is not None:
                    return hh.scale(c), qf, cg_
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    raise HeuristicGCDFailed


# --- fallback: recursive primitive PRS -------------------------------------

def _as_univariate(p: MultiPoly, v: int) -> dict:
    out: dict = {}
    for m, c in p.terms.items():
        e = m[v] if v < len(m) else 0
        nm = list(m)
        if e:
            nm[v] = 0
        out.setdefault(e, {})[_trim(nm)] = c
    return {e: MultiPoly(t, _clean=True) for e, t in out.items()}


def _from_univariate(coeffs: dict, v: int) -> MultiPoly:
    out = MultiPoly()
    xv = MultiPoly.var(v)
    for e, c in coeffs.items():
        out = out + c * (xv ** e)
    return out


def _prs_content(p: MultiPoly, v: int) -> MultiPoly:
    g = MultiPoly()
    for c in _as_univariate(p, v).values():
        g = prs_gcd(g, c)
        if g.is_constant():
            break
    return g


def prs_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """GCD by primitive remainder sequences; slow but unconditional."""
    if not f:
        return _positive(g.primitive()[1]) if g else MultiPoly()
    if not g:
        return _positive(f.primitive()[1])
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(1)
    v = max(f.max_var(), g.max_var())
    if f.degree(v) < g.degree(v):
        f, g = g, f
    if g.degree(v) == 0:
        # g is free of v: gcd divides every coefficient of f
        return prs_gcd(_prs_content(f, v), g)
    cf, cg = _prs_content(f, v), _prs_content(g, v)
    cont = prs_gcd(cf, cg)
    a = f.exquo(cf).primitive()[1]
    b = g.exquo(cg).primitive()[1]
    while b and b.degree(v) > 0:
        r = _pseudo_rem(a, b, v)
        a = b
        if not r:
            b = r
            break
        b = r.exquo(_prs_content(r, v)).primitive()[1]
    if b and b.degree(v) == 0:
        res = cont
    else:
        res = a.exquo(_prs_content(a, v)) * cont
    return _positive(res.primitive()[1])


def _pseudo_rem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    db = b.degree(v)
    ub = _as_univariate(b, v)
    lb = ub[db]
    xv = MultiPoly.var(v)
    r = a
    while r and r.degree(v) >= db:
        dr = r.degree(v)
        lr = _as_univariate(r, v)[dr]
        r = r * lb - lr * b * (xv ** (dr - db))
    return r


# --- public ----------------------------------------------------------------

def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Primitive integral GCD with positive leading coefficient (grlex)."""
    if not f and not g:
        return MultiPoly()
    if not f:
        return _positive(g.primitive()[1])
    if not g:
        return _positive(f.primitive()[1])
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(1)
    _, f = f.primitive()
    _, g = g.primitive()
    if f == g:
        return f
    mono = _common_monomial(f, g)
    if len(f) == 1 or len(g) == 1:
        return MultiPoly({mono: 1}, _clean=True)
    if mono:
        m = MultiPoly({mono: 1}, _clean=True)
        f, g = f.exquo(m), g.exquo(m)
    else:
        m = None
    if not (f.variables() & g.variables()):
        h = MultiPoly.const(1)
    else:
        try:
            h = _heu(f, g)[0]
        except HeuristicGCDFailed:
            h = prs_gcd(f, g)
        h = _positive(h.primitive()[1])
    return h * m if m is not None else h
