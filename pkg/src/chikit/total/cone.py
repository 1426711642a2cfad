"""Cone triples and the t-family pairing in a free model.

Letters are (side, index, dflag): side "a" or "b", index 1..3, dflag 1 for
the formal D of the generator.  Words have length at most 2 and stand for
exterior products.  Coefficients are rational functions in t (variable 1)
and t' (variable 2); only the parities of r and s enter the signs.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import MultiPoly, RatFunc, rf_equal
from ..report import VerificationReport, timed

T = RatFunc(MultiPoly.var(1))
T2 = RatFunc(MultiPoly.var(2))
ONE = RatFunc(1)


class FreeDga:
    """Degree bookkeeping and D on letters.

    With ``closed=True`` the relations D a1 = D a2 = 0, D a3 = a2 - a1
    (likewise for b) are imposed, so D letters never appear.
    """

    def __init__(self, r: int, s: int, closed: bool = False):
        self.r = r % 2
        self.s = s % 2
        self.closed = closed

    def letter_degree(self, letter) -> int:
        side, i, dflag = letter
        base = self.r if side == "a" else self.s
        return (base - (1 if i == 3 else 0) + dflag) % 2

    def word_degree(self, word) -> int:
        return sum(self.letter_degree(x) for x in word) % 2

    def D_letter(self, letter) -> dict:
        side, i, dflag = letter
        if dflag:
            return {}
        if self.closed:
            if i == 3:
                return {((side, 2, 0),): ONE, ((side, 1, 0),): -ONE}
            return {}
        return {((side, i, 1),): ONE}

    def gen(self, side: str, i: int, dflag: int = 0) -> FreeDgaElement:
        return FreeDgaElement(self, {((side, i, dflag),): ONE})

    def zero(self) -> FreeDgaElement:
        return FreeDgaElement(self, {})


def _acc(out: dict, w, c: RatFunc):
    v = out[w] + c if w in out else c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


class FreeDgaElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeDga, terms: dict):
        self.alg = alg
        self.terms = {w: RatFunc._coerce(c) for w, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return FreeDgaElement(self.alg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> FreeDgaElement:
        c = RatFunc._coerce(c)
        return FreeDgaElement(self.alg, {w: v * c for w, v in self.terms.items()})

    def box(self, other) -> FreeDgaElement:
        out: dict = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                if len(u) + len(v) > 2:
                    raise ValueError("words longer than 2 are outside the model")
                _acc(out, u + v, cu * cv)
        return FreeDgaElement(self.alg, out)

    def D(self) -> FreeDgaElement:
        """Leibniz rule of the exterior product:
        D(x y) = (-1)^{deg y} (Dx) y + x (Dy)."""
        alg = self.alg
        out: dict = {}
        for w, c in self.terms.items():
            if len(w) == 1:
                for u, e in alg.D_letter(w[0]).items():
                    _acc(out, u, c * e)
            elif len(w) == 2:
                x, y = w
                sign = -1 if alg.letter_degree(y) else 1
                for u, e in alg.D_letter(x).items():
                    _acc(out, u + (y,), c * e * sign)
                for u, e in alg.D_letter(y).items():
                    _acc(out, (x,) + u, c * e)
        return FreeDgaElement(alg, out)

    def substitute(self, images: dict) -> FreeDgaElement:
        """Substitute t, t' by polynomials (images: var index -> MultiPoly)."""
        return FreeDgaElement(self.alg, {w: c.compose(images) for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FreeDgaElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(rf_equal(c, other.terms[w]) for w, c in self.terms.items())

    def is_zero(self):
        return not self.terms

    def render(self) -> str:
        def letter(x):
            side, i, dflag = x
            name = ("alpha" if side == "a" else "beta") + str(i)
            return ("D" if dflag else "") + name

        name = lambda v: {1: "t", 2: "t'"}.get(v, f"v{v}")
        parts = [f"({self.terms[w].render(name)})*" + "[]".join(letter(x) for x in w)
                 for w in sorted(self.terms)]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FreeDgaElement({self.render()})"


@dataclass(frozen=True)
class ConeTriple:
    a1: object
    a2: object
    a3: object
    degree: int = 0

    def components(self):
        return (self.a1, self.a2, self.a3)

    def __add__(self, other):
        return ConeTriple(self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3, self.degree)

    def __sub__(self, other):
        return ConeTriple(self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3, self.degree)

    def scale(self, c):
        return ConeTriple(self.a1.scale(c), self.a2.scale(c), self.a3.scale(c), self.degree)

    def __eq__(self, other):
        return (isinstance(other, ConeTriple)
                and all(x == y for x, y in zip(self.components(), other.components())))

    def is_zero(self):
        return all(x.is_zero() for x in self.components())


def cone_D(A: ConeTriple, D=None) -> ConeTriple:
    """(D a1, D a2, a2 - a1 - D a3).  ``D`` defaults to the elements' own D
    method; pass ``total_D`` for BigradedElement triples."""
    D = D or (lambda x: x.D())
    return ConeTriple(D(A.a1), D(A.a2), A.a2 - A.a1 - D(A.a3), A.degree + 1)


def xi(t, a, a_prime):
    """t a + (1 - t) a'."""
    t = RatFunc._coerce(t)
    return a.scale(t) + a_prime.scale(ONE - t)


def pairing_P(t, A: ConeTriple, B: ConeTriple, s: int, signed: bool = True,
              symmetric: bool = False):
    """(-1)^s a3 [] Xi_t(b1, b2) + Xi_{1-t}(a1, a2) [] b3.

    ``signed=False`` drops (-1)^s and ``symmetric=True`` uses Xi_t on both
    sides; both exist only as negative controls.
    """
    t = RatFunc._coerce(t)
    sign = -1 if (signed and s % 2) else 1
    left_t = t if symmetric else ONE - t
    return A.a3.box(xi(t, B.a1, B.a2)).scale(sign) + xi(left_t, A.a1, A.a2).box(B.a3)


def hat_box(t, A: ConeTriple, B: ConeTriple, s: int) -> ConeTriple:
    return ConeTriple(A.a1.box(B.a1), A.a2.box(B.a2), pairing_P(t, A, B, s),
                      A.degree + B.degree)


def generic_triples(alg: FreeDga):
    A = ConeTriple(alg.gen("a", 1), alg.gen("a", 2), alg.gen("a", 3), alg.r)
    B = ConeTriple(alg.gen("b", 1), alg.gen("b", 2), alg.gen("b", 3), alg.s)
    return A, B


def cone_claim_sides(r: int, s: int, signed: bool = True, symmetric: bool = False, t=None):
    alg = FreeDga(r, s)
    A, B = generic_triples(alg)
    t = T if t is None else t
    P = lambda X, Y, deg: pairing_P(t, X, Y, deg, signed=signed, symmetric=symmetric)
    lhs = (P(A, B, s).D() + P(cone_D(A), B, s).scale((-1) ** (s % 2))
           + P(A, cone_D(B), s + 1))
    rhs = A.a2.box(B.a2) - A.a1.box(B.a1)
    return lhs, rhs


def _params(r, s):
    return {"r_parity": r % 2, "s_parity": s % 2}


@timed
def verify_cone_claim(r: int, s: int, signed: bool = True,
                      symmetric: bool = False) -> VerificationReport:
    lhs, rhs = cone_claim_sides(r, s, signed, symmetric)
    ok = lhs == rhs
    half = RatFunc(MultiPoly.const(1), MultiPoly.const(2))
    l2, r2 = cone_claim_sides(r, s, signed, symmetric, t=half)
    params = _params(r, s)
    if not signed:
        params["variant"] = "unsigned"
    if symmetric:
        params["variant"] = "symmetric"
    details = {"lhs_words": len(lhs.terms), "specialized_half": l2 == r2}
    if not ok:
        details["difference"] = (lhs - rhs).render()
    return VerificationReport("tot.cone_claim", params, ok, details)


def chain_map_sides(r: int, s: int, t=None):
    alg = FreeDga(r, s)
    A, B = generic_triples(alg)
    t = T if t is None else t
    lhs = cone_D(hat_box(t, A, B, s))
    first = hat_box(t, cone_D(A), B, s).scale((-1) ** (s % 2))
    second = hat_box(t, A, cone_D(B), s + 1)
    return lhs, first + second


@timed
def verify_hat_box_chain_map(r: int, s: int) -> VerificationReport:
    lhs, rhs = chain_map_sides(r, s)
    ok = lhs == rhs
    half = RatFunc(MultiPoly.const(1), MultiPoly.const(2))
    l2, r2 = chain_map_sides(r, s, t=half)
    return VerificationReport("tot.chain_map", _params(r, s), ok,
                              {"specialized_half": l2 == r2})


# --------------------------------------------------------------------------
# homotopy between the t-family members

def _solve(rows: list, rhs: list, ncols: int):
    """Gauss-Jordan over RatFunc.  Returns one solution (free unknowns set to
    zero) and the pivot columns, or None when inconsistent."""
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = M[row][col].inverse()
        M[row] = [x * inv for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
    if any(M[i][ncols] for i in range(row, len(M))):
        return None, pivots
    sol = [RatFunc() for _ in range(ncols)]
    for i, col in enumerate(pivots):
        sol[col] = M[i][ncols]
    return sol, pivots


def homotopy_solution(r: int, s: int, t=None, t_prime=None):
    """Find C in the span of degree-compatible length-2 words with
    D_hat(0, 0, C) = A hat_t B - A hat_t' B for closed A, B.

    Since the first two components of the right side cancel, this is the
    linear system -D C = P_t - P_t'.  Returns (C, unknown words) or
    (None, words) if there is no solution.
    """
    alg = FreeDga(r, s, closed=True)
    A, B = generic_triples(alg)
    t = T if t is None else RatFunc._coerce(t)
    tp = T2 if t_prime is None else RatFunc._coerce(t_prime)
    target = pairing_P(t, A, B, s) - pairing_P(tp, A, B, s)
    want = (r + s) % 2
    unknowns = [(("a", i, 0), ("b", j, 0)) for i in (1, 2, 3) for j in (1, 2, 3)]
    unknowns = [w for w in unknowns if alg.word_degree(w) == want]
    images = [FreeDgaElement(alg, {w: ONE}).D().scale(-1) for w in unknowns]
    eq_words = sorted(set(target.terms).union(*[im.terms for im in images]))
    rows = [[im.terms.get(w, RatFunc()) for im in images] for w in eq_words]
    rhs = [target.terms.get(w, RatFunc()) for w in eq_words]
    sol, _ = _solve(rows, rhs, len(unknowns))
    if sol is None:
        return None, unknowns
    C = FreeDgaElement(alg, {w: c for w, c in zip(unknowns, sol)})
    return C, unknowns


@timed
def verify_homotopy_t(r: int, s: int) -> VerificationReport:
    C, unknowns = homotopy_solution(r, s)
    details = {"unknowns": len(unknowns)}
    if C is None:
        details["error"] = "no solution in model span"
        return VerificationReport("tot.homotopy", _params(r, s), False, details)
    alg = C.alg
    A, B = generic_triples(alg)
    # re-check the defining equation directly
    lhs = cone_D(ConeTriple(alg.zero(), alg.zero(), C))
    rhs = hat_box(T, A, B, s) - hat_box(T2, A, B, s)
    eq_ok = lhs == rhs
    expected = A.a3.box(B.a3).scale((T - T2) * ((-1) ** (s % 2)))
    same_t = C.substitute({1: MultiPoly.var(1), 2: MultiPoly.var(1)}).is_zero()
    C10, _ = homotopy_solution(r, s, 1, 0)
    spec_ok = C10 is not None and C.substitute({1: MultiPoly.const(1), 2: MultiPoly.const(0)}) == C10
    details.update({
        "C": C.render(),
        "equation_holds": eq_ok,
        "proportional_to_a3b3": C == expected,
        "vanishes_at_equal_parameters": same_t,
        "specialization_1_0": spec_ok,
    })
    ok = eq_ok and same_t and spec_ok
    return VerificationReport("tot.homotopy", _params(r, s), ok, details)
