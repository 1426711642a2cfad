"""Differential forms with rational-function coefficients.

A form maps strictly increasing tuples of variable indices (standing for
dv_{i1} ^ ... ^ dv_{ik}) to RatFunc coefficients.  Simplex forms use
z-variables 0..N, cube forms t-variables 1..N.
"""
from __future__ import annotations

from typing import Mapping

from .algebra import MultiPoly, RatFunc, rf_equal
from .combinat.perms import Permutation, shuffles
from .hopf import chi_value, tree_sum
from .report import VerificationReport, timed

X = MultiPoly.var
ONE = MultiPoly.const(1)


def _merge_sign(a: tuple, b: tuple):
    """Sign of sorting the concatenation a+b, or 0 if they overlap."""
    if set(a) & set(b):
        return 0, None
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


class DiffForm:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for idx, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            idx = tuple(idx)
            if any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
                s = sorted(idx)
                if len(set(s)) != len(s):
                    continue
                inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx))
                          if idx[i] > idx[j])
                c = -c if inv % 2 else c
                idx = tuple(s)
            c = t.get(idx, RatFunc()) + RatFunc._coerce(c)
            if c:
                t[idx] = c
            else:
                t.pop(idx, None)
        self.terms = t

    @classmethod
    def scalar(cls, c) -> DiffForm:
        return cls({(): c})

    @classmethod
    def d(cls, i: int) -> DiffForm:
        return cls({(i,): 1})

    @property
    def degree(self) -> int:
        degs = {len(k) for k in self.terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(rf_equal(c, other.terms[k]) for k, c in self.terms.items())

    def __add__(self, other: DiffForm) -> DiffForm:
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return DiffForm(t)

    def __neg__(self):
        return DiffForm({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> DiffForm:
        c = RatFunc._coerce(c)
        return DiffForm({k: v * c for k, v in self.terms.items()})

    def wedge(self, other: DiffForm) -> DiffForm:
        out = []
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s, idx = _merge_sign(a, b)
                if s:
                    out.append((idx, ca * cb * s))
        return DiffForm(out)

    __xor__ = wedge

    def coefficient(self, idx) -> RatFunc:
        return self.terms.get(tuple(idx), RatFunc())

    def render(self, var: str = "t") -> str:
        name = lambda i: f"{var}{i}"
        parts = []
        for k in sorted(self.terms):
            dv = "^".join(f"d{var}{i}" for i in k)
            parts.append(f"[{self.terms[k].render(name)}]" + (f" {dv}" if dv else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"DiffForm({self.render()})"


Substitution = Mapping[int, MultiPoly]


def pullback(omega: DiffForm, sub: Substitution) -> DiffForm:
    """Substitute v_i = sub[i] in coefficients and expand each dv_i as
    sum_j (d sub[i] / d u_j) du_j."""
    missing = set()
    for k, c in omega.terms.items():
        missing |= (set(k) | c.variables()) - set(sub)
    if missing:
        raise ValueError(f"substitution undefined on variables {sorted(missing)}")
    dcache: dict = {}

    def dvar(i):
        f = dcache.get(i)
        if f is None:
            p = sub[i]
            f = DiffForm([((j,), RatFunc(p.diff(j))) for j in sorted(p.variables())])
            dcache[i] = f
        return f

    out = DiffForm()
    for k, c in omega.terms.items():
        try:
            coef = c.compose(sub)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError(f"pullback: {exc}") from None
        piece = DiffForm.scalar(coef)
        for i in k:
            piece = piece.wedge(dvar(i))
            if piece.is_zero():
                break
        out = out + piece
    return out


def theta_form(N: int) -> DiffForm:
    """sum_r (-1)^r dz_0/z_0 ^ ... (omit r) ... ^ dz_N/z_N; the constant 1 for N = 0."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if N == 0:
        return DiffForm.scalar(1)
    terms = []
    for r in range(N + 1):
        idx = tuple(i for i in range(N + 1) if i != r)
        den = MultiPoly.monomial({i: 1 for i in idx})
        terms.append((idx, RatFunc(MultiPoly.const((-1) ** r), den)))
    return DiffForm(terms)


def dif_substitution(N: int) -> dict:
    """z_0 = t_1, z_k = t_{k+1} - t_k, z_N = 1 - t_N (z_0 = 1 when N = 0)."""
    if N == 0:
        return {0: ONE}
    sub = {0: X(1)}
    for k in range(1, N):
        sub[k] = X(k + 1) - X(k)
    sub[N] = ONE - X(N)
    return sub


def top_form(N: int, coef, offset: int = 0) -> DiffForm:
    return DiffForm({tuple(range(offset + 1, offset + N + 1)): coef})


def pulled_theta(N: int) -> DiffForm:
    return pullback(theta_form(N), dif_substitution(N))


def shift_form(omega: DiffForm, k: int) -> DiffForm:
    """Rename t_i -> t_{i+k} (the projection to the second cube factor)."""
    sub = {}
    for idx, c in omega.terms.items():
        for v in set(idx) | c.variables():
            sub[v] = X(v + k)
    return pullback(omega, sub) if sub else omega


def cube_pushforward(omega: DiffForm, tau: Permutation, convention: str = "shuffle") -> DiffForm:
    """Pushforward along the cube permutation t -> (t_{tau(1)}, ..., t_{tau(N)})
    as the pullback along its inverse.  The sign of tau appears through the
    reordering of the differentials."""
    inv = tau.inverse() if convention == "shuffle" else tau
    sub = {j: X(inv(j)) for j in range(1, len(tau) + 1)}
    return pullback(omega, sub)


def theta_norm_sign(N: int) -> int:
    """Rational sign of the normalization (-1)^{N(N+1)/2} / (2 pi i)^N."""
    return -1 if (N * (N + 1) // 2) % 2 else 1


@timed
def verify_theta_pullback(N: int, flip: bool = False) -> VerificationReport:
    if N < 1:
        raise ValueError("N must be at least 1")
    got = pulled_theta(N)
    want = top_form(N, chi_value(range(1, N + 1)) * ((-1) ** (N + flip)))
    ok = got == want
    return VerificationReport("forms.theta_pullback", {"N": N}, ok,
                              {"theta_terms": N + 1, "pulled_terms": len(got)})


def theta_ez_sides(m: int, n: int, convention: str = "shuffle"):
    """(shuffle side, product side) as top forms on the (m+n)-cube, before
    the normalization signs."""
    N = m + n
    omega = pulled_theta(N)
    pieces = [cube_pushforward(omega, t, convention).scale(t.sign) for t in shuffles(m, n)]
    shuffle_side = DiffForm()
    # tree reduction keeps the coefficient sums balanced
    while len(pieces) > 1:
        pieces = [pieces[i] + pieces[i + 1] if i + 1 < len(pieces) else pieces[i]
                  for i in range(0, len(pieces), 2)]
    if pieces:
        shuffle_side = pieces[0]
    product_side = pulled_theta(m).wedge(shift_form(pulled_theta(n), m)).scale((-1) ** (m * n))
    return shuffle_side, product_side


@timed
def verify_theta_ez(m: int, n: int, convention: str = "shuffle") -> VerificationReport:
    """Shuffle pushforward of the normalized theta_{m+n} against the product of
    the normalized theta_m and theta_n, in cube coordinates."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be non-negative")
    N = m + n
    s_side, p_side = theta_ez_sides(m, n, convention)
    lhs = s_side.scale(theta_norm_sign(N))
    rhs = p_side.scale(theta_norm_sign(m) * theta_norm_sign(n))
    ok = lhs == rhs
    # the displayed raw forms: (-1)^N sum chi and (-1)^{mn+m+n} chi_m chi_n
    top = tuple(range(1, N + 1))
    raw_sum = tree_sum([chi_value(t.inverse().word) for t in shuffles(m, n)]) * ((-1) ** N)
    raw_prod = (chi_value(range(1, m + 1)) * chi_value(range(m + 1, N + 1))
                * ((-1) ** (m * n + m + n)))
    details = {
        "terms": len(shuffles(m, n)),
        "shuffle_side_matches_display": rf_equal(s_side.coefficient(top), raw_sum),
        "product_side_matches_display": rf_equal(p_side.coefficient(top), raw_prod),
        "normalization_signs": [theta_norm_sign(N), theta_norm_sign(m), theta_norm_sign(n)],
        "raw_sides_equal": s_side == p_side,
    }
    params = {"m": m, "n": n}
    if convention != "shuffle":
        params["convention"] = convention
    return VerificationReport("forms.theta_ez", params, ok, details)
