"""Multicomplex coefficient models, bigraded elements, the total
differential and the exterior product.

A model is a product of free factors.  A generator of a product is the
tuple of factor generators; its bidegree is (sum of a's, concatenated b's).
On a product, d acts on factor i with the sign (-1)^(a of the later
factors) and each delta^j acts on the factor owning direction j, unsigned.
That is the convention under which the exterior product satisfies
D(x [] y) = (-1)^{deg y} (Dx) [] y + x [] Dy.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction


def _acc(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _clean(vec: dict) -> dict:
    return {g: c for g, c in vec.items() if c}


class ModelError(ValueError):
    pass


class FreeModel:
    """Finitely many named generators with tabulated d and delta^j.

    ``gens``: name -> (a, b) with b a k-tuple; ``d`` and each ``deltas[j]``:
    name -> {name: integer coefficient}.
    """

    def __init__(self, gens: dict, d: dict | None = None, deltas: list | None = None,
                 k: int | None = None, name: str = "M"):
        self.gens = {g: (int(a), tuple(int(x) for x in b)) for g, (a, b) in gens.items()}
        ks = {len(b) for _, b in self.gens.values()}
        if k is None:
            k = ks.pop() if ks else 0
        elif ks and ks != {k}:
            raise ModelError("inconsistent number of directions")
        self.k = k
        self.d = {g: _clean(v) for g, v in (d or {}).items()}
        self.deltas = [{g: _clean(v) for g, v in tab.items()} for tab in (deltas or [{}] * k)]
        if len(self.deltas) != k:
            raise ModelError(f"expected {k} delta tables")
        self.name = name
        self.validate()

    # single-factor action on one generator
    def d_gen(self, g) -> dict:
        return self.d.get(g, {})

    def delta_gen(self, j: int, g) -> dict:
        return self.deltas[j].get(g, {})

    def _apply(self, fn, vec: dict) -> dict:
        out: dict = {}
        for g, c in vec.items():
            for h, e in fn(g).items():
                _acc(out, h, c * e)
        return out

    def validate(self):
        for g, (a, b) in self.gens.items():
            for h in self.d_gen(g):
                if h not in self.gens or self.gens[h] != (a + 1, b):
                    raise ModelError(f"d({g}) leaves bidegree ({a + 1}, {b})")
            for j in range(self.k):
                want = (a, tuple(x + (1 if i == j else 0) for i, x in enumerate(b)))
                for h in self.delta_gen(j, g):
                    if h not in self.gens or self.gens[h] != want:
                        raise ModelError(f"delta^{j + 1}({g}) leaves bidegree {want}")
        for g in self.gens:
            e = {g: 1}
            dd = self._apply(self.d_gen, self._apply(self.d_gen, e))
            if dd:
                raise ModelError(f"d o d != 0 on {g}")
            for j in range(self.k):
                dj = lambda x, j=j: self.delta_gen(j, x)
                if self._apply(dj, self._apply(dj, e)):
                    raise ModelError(f"delta^{j + 1} o delta^{j + 1} != 0 on {g}")
                if self._apply(self.d_gen, self._apply(dj, e)) != self._apply(dj, self._apply(self.d_gen, e)):
                    raise ModelError(f"d and delta^{j + 1} do not commute on {g}")
                for i in range(j):
                    di = lambda x, i=i: self.delta_gen(i, x)
                    if self._apply(di, self._apply(dj, e)) != self._apply(dj, self._apply(di, e)):
                        raise ModelError(f"delta^{i + 1} and delta^{j + 1} do not commute on {g}")

    def in_bidegree(self, a: int, b: tuple) -> list:
        return sorted(g for g, bd in self.gens.items() if bd == (a, tuple(b)))

    def __repr__(self):
        return f"FreeModel({self.name}, {len(self.gens)} generators, k={self.k})"


@dataclass(frozen=True)
class ProductModel:
    factors: tuple = field(default_factory=tuple)

    @classmethod
    def of(cls, m) -> ProductModel:
        if isinstance(m, ProductModel):
            return m
        return cls((m,))

    def tensor(self, other) -> ProductModel:
        return ProductModel(self.factors + ProductModel.of(other).factors)

    @property
    def k(self) -> int:
        return sum(f.k for f in self.factors)

    def bidegree(self, gen: tuple):
        a = 0
        b = ()
        for f, g in zip(self.factors, gen):
            fa, fb = f.gens[g]
            a += fa
            b += fb
        return a, b

    def d_gen(self, gen: tuple) -> dict:
        out: dict = {}
        nf = len(self.factors)
        later = [0] * nf
        acc = 0
        for i in range(nf - 1, -1, -1):
            later[i] = acc
            acc += self.factors[i].gens[gen[i]][0]
        for i, f in enumerate(self.factors):
            sign = -1 if later[i] % 2 else 1
            for h, c in f.d_gen(gen[i]).items():
                _acc(out, gen[:i] + (h,) + gen[i + 1:], sign * c)
        return out

    def delta_gen(self, j: int, gen: tuple) -> dict:
        for i, f in enumerate(self.factors):
            if j < f.k:
                return {gen[:i] + (h,) + gen[i + 1:]: c for h, c in f.delta_gen(j, gen[i]).items()}
            j -= f.k
        raise IndexError("direction out of range")

    def apply(self, fn, vec: dict) -> dict:
        out: dict = {}
        for g, c in vec.items():
            for h, e in fn(g).items():
                _acc(out, h, c * e)
        return out

    def d(self, vec: dict) -> dict:
        return self.apply(self.d_gen, vec)

    def delta(self, j: int, vec: dict) -> dict:
        return self.apply(lambda g: self.delta_gen(j, g), vec)


class BigradedElement:
    """Total degree r; terms b -> vector in M^{r-|b|, b} (generator -> coefficient)."""

    __slots__ = ("model", "r", "terms")

    def __init__(self, model, r: int, terms: dict | None = None, check: bool = True):
        self.model = ProductModel.of(model)
        self.r = r
        t = {}
        for b, vec in (terms or {}).items():
            b = tuple(b)
            vec = {(g if isinstance(g, tuple) else (g,)): c for g, c in vec.items() if c}
            if vec:
                t[b] = vec
        self.terms = t
        if check:
            self.check()

    def check(self):
        k = self.model.k
        for b, vec in self.terms.items():
            if len(b) != k or min(b, default=0) < 0:
                raise ModelError(f"bad multi-index {b}")
            for g in vec:
                if self.model.bidegree(g) != (self.r - sum(b), b):
                    raise ModelError(f"{g} is not in bidegree ({self.r - sum(b)}, {b})")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, BigradedElement) and self.model == other.model
                and (self.r == other.r or (not self.terms and not other.terms))
                and self.terms == other.terms)

    def _combine(self, other, sign):
        if self.model != other.model:
            raise ModelError("elements over different models")
        if self.terms and other.terms and self.r != other.r:
            raise ModelError("adding elements of different degrees")
        t = {b: dict(v) for b, v in self.terms.items()}
        for b, vec in other.terms.items():
            slot = t.setdefault(b, {})
            for g, c in vec.items():
                _acc(slot, g, sign * c)
        r = self.r if self.terms else other.r
        return BigradedElement(self.model, r, t, check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> BigradedElement:
        return BigradedElement(self.model, self.r,
                               {b: {g: c * v for g, v in vec.items()} for b, vec in self.terms.items()},
                               check=False)

    def __neg__(self):
        return self.scale(-1)

    def size(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def __repr__(self):
        return f"BigradedElement(r={self.r}, {self.terms})"


def delta_hat(alpha: BigradedElement, unsigned: bool = False) -> BigradedElement:
    """(delta_hat alpha)_b = sum_j (-1)^{b_j + ... + b_k} delta^j(alpha_{b - e_j})."""
    model = alpha.model
    k = model.k
    out: dict = {}
    for b, vec in alpha.terms.items():
        for j in range(k):
            tb = b[:j] + (b[j] + 1,) + b[j + 1:]
            sign = -1 if (sum(tb[j:]) % 2 and not unsigned) else 1
            img = model.delta(j, vec)
            slot = out.setdefault(tb, {})
            for g, c in img.items():
                _acc(slot, g, sign * c)
    return BigradedElement(model, alpha.r + 1, out, check=False)


def d_part(alpha: BigradedElement) -> BigradedElement:
    model = alpha.model
    return BigradedElement(model, alpha.r + 1,
                           {b: model.d(vec) for b, vec in alpha.terms.items()}, check=False)


def total_D(alpha: BigradedElement, model=None, unsigned: bool = False) -> BigradedElement:
    """D = d + (-1)^r delta_hat."""
    if model is not None and ProductModel.of(model) != alpha.model:
        raise ModelError("element does not live over the given model")
    dh = delta_hat(alpha, unsigned)
    if alpha.r % 2:
        dh = -dh
    return d_part(alpha) + dh


def box_product(alpha: BigradedElement, beta: BigradedElement) -> BigradedElement:
    """(alpha [] beta)_{a*b} = (-1)^{r|b|} alpha_a x beta_b."""
    model = alpha.model.tensor(beta.model)
    r = alpha.r
    out: dict = {}
    for a, va in alpha.terms.items():
        for b, vb in beta.terms.items():
            sign = -1 if (r * sum(b)) % 2 else 1
            slot = out.setdefault(a + b, {})
            for g, c in va.items():
                for h, e in vb.items():
                    _acc(slot, g + h, sign * c * e)
    return BigradedElement(model, alpha.r + beta.r, out, check=False)


# --------------------------------------------------------------------------
# random valid models

def _random_complex(rng: random.Random, degs: list, label: str, dim_max: int = 2):
    """Generators in consecutive degrees and a differential that is a
    random partial matching of degree-raising arrows (so it squares to 0)."""
    gens = []
    by_deg = {}
    for deg in degs:
        for i in range(rng.randint(1, dim_max)):
            g = f"{label}{deg}_{i}"
            gens.append((g, deg))
            by_deg.setdefault(deg, []).append(g)
    diff = {}
    used_src, used_tgt = set(), set()
    for g, deg in gens:
        if g in used_tgt or rng.random() < 0.3:
            continue
        cands = [h for h in by_deg.get(deg + 1, []) if h not in used_tgt and h not in used_src]
        if cands:
            h = rng.choice(cands)
            diff[g] = {h: rng.choice([1, -1, 2, -3])}
            used_src.add(g)
            used_tgt.add(h)
    return gens, diff


def random_model(rng: random.Random, k: int | None = None, name: str = "M") -> FreeModel:
    """Tensor product of k+1 small random complexes (d on the first factor,
    delta^j on factor j), then a random unimodular change of basis in each
    bidegree so the tables are no longer visibly split."""
    if k is None:
        k = rng.randint(0, 2)
    a0 = rng.randint(-2, 1)
    comp0 = _random_complex(rng, [a0, a0 + 1], "a")
    comps = [_random_complex(rng, [b0, b0 + 1], "b")
             for b0 in (rng.randint(0, 1) for _ in range(k))]
    factors = [comp0] + comps
    # enumerate tensor generators
    gens = {}
    parts = {}
    combos = [()]
    for gl, _ in factors:
        combos = [c + (g,) for c in combos for g in gl]
    for combo in combos:
        name_ = "|".join(g for g, _ in combo)
        a = combo[0][1]
        b = tuple(x[1] for x in combo[1:])
        gens[name_] = (a, b)
        parts[name_] = combo

    def lift(idx, combo):
        table = factors[idx][1]
        g = combo[idx][0]
        out = {}
        for h, c in table.get(g, {}).items():
            deg = combo[idx][1] + 1
            new = combo[:idx] + ((h, deg),) + combo[idx + 1:]
            out["|".join(x for x, _ in new)] = c
        return out

    d = {n: lift(0, parts[n]) for n in gens}
    deltas = [{n: lift(j + 1, parts[n]) for n in gens} for j in range(k)]
    model = FreeModel(gens, d, deltas, k=k, name=name)
    return _conjugate(rng, model, name)


def _conjugate(rng: random.Random, model: FreeModel, name: str) -> FreeModel:
    """Replace each generator g by g' = g + sum_{h later, same bidegree} c_h h."""
    groups = {}
    for g, bd in model.gens.items():
        groups.setdefault(bd, []).append(g)
    P = {}  # new basis vector -> old coordinates
    Pinv = {}
    for bd, gl in groups.items():
        gl = sorted(gl)
        n = len(gl)
        U = [[1 if i == j else (rng.randint(-1, 1) if j > i else 0) for j in range(n)]
             for i in range(n)]
        # inverse of unit upper triangular by back substitution
        Ui = [[0] * n for _ in range(n)]
        for col in range(n):
            for i in range(n - 1, -1, -1):
                s = (1 if i == col else 0) - sum(U[i][j] * Ui[j][col] for j in range(i + 1, n))
                Ui[i][col] = s
        for i, g in enumerate(gl):
            P[g] = {gl[j]: U[i][j] for j in range(n) if U[i][j]}
            # old g in terms of new basis: row i of Ui
            Pinv[g] = {gl[j]: Ui[i][j] for j in range(n) if Ui[i][j]}

    def transport(fn):
        out = {}
        for g in model.gens:
            img_old = {}
            for h, c in P[g].items():
                for x, e in fn(h).items():
                    _acc(img_old, x, c * e)
            img_new = {}
            for x, c in img_old.items():
                for y, e in Pinv[x].items():
                    _acc(img_new, y, c * e)
            out[g] = img_new
        return out

    d = transport(model.d_gen)
    deltas = [transport(lambda g, j=j: model.delta_gen(j, g)) for j in range(model.k)]
    return FreeModel(model.gens, d, deltas, k=model.k, name=name)


def random_element(rng: random.Random, model, r: int | None = None,
                   max_b: int = 2, density: float = 0.7) -> BigradedElement:
    model = ProductModel.of(model)
    gens_by_bd: dict = {}
    combos = [()]
    for f in model.factors:
        combos = [c + (g,) for c in combos for g in f.gens]
    for g in combos:
        gens_by_bd.setdefault(model.bidegree(g), []).append(g)
    if r is None:
        r = rng.choice(sorted({a + sum(b) for a, b in gens_by_bd}))
    terms = {}
    for (a, b), gl in sorted(gens_by_bd.items()):
        if a + sum(b) != r or max(b, default=0) > max_b:
            continue
        vec = {g: rng.randint(-3, 3) for g in gl if rng.random() < density}
        if any(vec.values()):
            terms[b] = vec
    return BigradedElement(model, r, terms)


def e1_model(p_max: int) -> FreeModel:
    """Monomials x^{b1} y^{b2} in bidegree (0, (b1, b2)), zero d, and
    delta^j(x^b) = x^{b + e_j} when b_j is odd, 0 otherwise."""
    gens = {(b1, b2): (0, (b1, b2)) for b1 in range(p_max + 2) for b2 in range(p_max + 2)
            if b1 + b2 <= p_max + 1}
    deltas = [{}, {}]
    for (b1, b2) in gens:
        if b1 % 2 and (b1 + 1, b2) in gens:
            deltas[0][(b1, b2)] = {(b1 + 1, b2): 1}
        if b2 % 2 and (b1, b2 + 1) in gens:
            deltas[1][(b1, b2)] = {(b1, b2 + 1): 1}
    return FreeModel(gens, {}, deltas, k=2, name="E1")
