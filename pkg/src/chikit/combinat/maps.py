"""Concrete coordinate maps between simplices, cubes and their products,
and integer formal sums of such maps.

A space is a tuple of factors ``("S", a)`` (simplex with barycentric
coordinates z_0..z_a) or ``("C", a)`` (cube with coordinates t_1..t_a).
Coordinates of a product are numbered consecutively, factor by factor.
A map stores one polynomial per target coordinate in the flat source
coordinates.  On simplex factors of the source the first coordinate is
eliminated through z_0 = 1 - z_1 - ... - z_a, so two maps that agree on
the simplex get identical components.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra.poly import MultiPoly
from .perms import Permutation, shuffles

Space = tuple

ONE = MultiPoly.const(1)
ZERO = MultiPoly()


def simplex(a: int) -> Space:
    return (("S", a),)


def cube(a: int) -> Space:
    return (("C", a),)


def n_coords(space: Space) -> int:
    return sum(a + 1 if kind == "S" else a for kind, a in space)


def _offsets(space: Space):
    off = 0
    out = []
    for kind, a in space:
        out.append(off)
        off += a + 1 if kind == "S" else a
    return out


def _affine_images(space: Space) -> dict:
    images = {}
    for (kind, a), off in zip(space, _offsets(space)):
        if kind == "S":
            images[off] = ONE - MultiPoly.linear({off + i: 1 for i in range(1, a + 1)})
    return images


def space_str(space: Space) -> str:
    return " x ".join(("D" if k == "S" else "C") + str(a) for k, a in space)


@dataclass(frozen=True)
class CoordMap:
    source: Space
    target: Space
    components: tuple

    @classmethod
    def make(cls, source: Space, target: Space, components) -> CoordMap:
        comps = tuple(components)
        if len(comps) != n_coords(target):
            raise ValueError(f"expected {n_coords(target)} components, got {len(comps)}")
        images = _affine_images(source)
        comps = tuple(c.compose(images) if images else c for c in comps)
        return cls(tuple(source), tuple(target), comps)

    def factor_components(self):
        out = []
        for (kind, a), off in zip(self.target, _offsets(self.target)):
            w = a + 1 if kind == "S" else a
            out.append(self.components[off:off + w])
        return out

    def compose(self, inner: CoordMap) -> CoordMap:
        """self o inner."""
        if self.source != inner.target:
            raise ValueError(
                f"cannot compose: {space_str(self.source)} != {space_str(inner.target)}")
        images = dict(enumerate(inner.components))
        return CoordMap.make(inner.source, self.target,
                             (c.compose(images) for c in self.components))

    def times(self, other: CoordMap) -> CoordMap:
        shift = n_coords(self.source)
        moved = [c.relabel({i: i + shift for i in c.variables()}) for c in other.components]
        return CoordMap.make(self.source + other.source, self.target + other.target,
                             self.components + tuple(moved))

    def evaluate(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def sort_key(self):
        return (self.source, self.target,
                tuple(tuple(sorted(c.terms.items())) for c in self.components))

    def render(self) -> str:
        names = []
        for (kind, a), off in zip(self.source, _offsets(self.source)):
            if kind == "S":
                names += [f"z{i}" for i in range(a + 1)]
            else:
                names += [f"t{i}" for i in range(1, a + 1)]
        if len(self.source) > 1:
            names = [f"{n}_{k}" for k, n in enumerate(names)]
        fmt = lambda i: names[i]
        return "(" + ", ".join(c.render(fmt) for c in self.components) + ")"


class FormalMapSum:
    """Integer combination of coordinate maps with a common source/target."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for f, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            c = t.get(f, 0) + c
            if c:
                t[f] = c
            else:
                t.pop(f, None)
        self.terms = t

    @classmethod
    def single(cls, f: CoordMap, c: int = 1) -> FormalMapSum:
        return cls({f: c})

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, FormalMapSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: FormalMapSum) -> FormalMapSum:
        t = dict(self.terms)
        for f, c in other.terms.items():
            t[f] = t.get(f, 0) + c
        return FormalMapSum(t)

    def __neg__(self):
        return FormalMapSum({f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> FormalMapSum:
        return FormalMapSum({f: k * c for f, c in self.terms.items()}) if k else FormalMapSum()

    def compose(self, inner: FormalMapSum) -> FormalMapSum:
        return compose_sums(self, inner)

    def times(self, other: FormalMapSum) -> FormalMapSum:
        out = []
        for f, a in self.terms.items():
            for g, b in other.terms.items():
                out.append((f.times(g), a * b))
        return FormalMapSum(out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda fc: fc[0].sort_key())

    def mass(self) -> int:
        return sum(self.terms.values())

    def render(self) -> list[str]:
        return [f"{c:+d} {f.render()}" for f, c in self.sorted_terms()]


def compose_sums(f: FormalMapSum, g: FormalMapSum) -> FormalMapSum:
    """Bilinear composition f o g."""
    out = []
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            out.append((a.compose(b), ca * cb))
    return FormalMapSum(out)


# --------------------------------------------------------------------------
# map families

def identity_map(space: Space) -> CoordMap:
    return CoordMap.make(space, space, (MultiPoly.var(i) for i in range(n_coords(space))))


def face_map(r: int, b: int) -> CoordMap:
    """Delta^{b-1} -> Delta^b, inserting 0 at position r."""
    if b < 1 or not 0 <= r <= b:
        raise ValueError(f"face index {r} out of range for Delta^{b}")
    z = [MultiPoly.var(i) for i in range(b)]
    return CoordMap.make(simplex(b - 1), simplex(b), z[:r] + [ZERO] + z[r:])


def degeneracy(k: int, N: int) -> CoordMap:
    """Delta^N -> Delta^{N-1}, adding coordinates k and k+1."""
    if N < 1 or not 0 <= k <= N - 1:
        raise ValueError(f"degeneracy index {k} out of range for Delta^{N}")
    z = [MultiPoly.var(i) for i in range(N + 1)]
    return CoordMap.make(simplex(N), simplex(N - 1), z[:k] + [z[k] + z[k + 1]] + z[k + 2:])


def phi_map(N: int) -> CoordMap:
    """Delta^N -> cube^N, prefix sums (z0, z0+z1, ..., z0+...+z_{N-1})."""
    comps = []
    acc = ZERO
    for i in range(N):
        acc = acc + MultiPoly.var(i)
        comps.append(acc)
    return CoordMap.make(simplex(N), cube(N), comps)


def dif_map(N: int) -> CoordMap:
    """cube^N -> Delta^N, (t1, t2-t1, ..., 1-tN); t_j is flat coordinate j-1."""
    if N == 0:
        return CoordMap.make(cube(0), simplex(0), [ONE])
    t = [MultiPoly.var(i) for i in range(N)]
    comps = [t[0]] + [t[i] - t[i - 1] for i in range(1, N)] + [ONE - t[N - 1]]
    return CoordMap.make(cube(N), simplex(N), comps)


def _block_sums(N: int, cuts) -> list:
    """Merge z_0..z_N into consecutive blocks starting at the given cuts."""
    bounds = [0] + list(cuts) + [N + 1]
    return [MultiPoly.linear({i: 1 for i in range(bounds[k], bounds[k + 1])})
            for k in range(len(bounds) - 1)]


def _check_shuffle(tau: Permutation, m: int, n: int):
    if len(tau) != m + n or not tau.is_shuffle(m):
        raise ValueError(f"{tau} is not an ({m},{n}) shuffle")


def lambda_map(tau: Permutation, m: int, n: int | None = None) -> CoordMap:
    """Delta^{m+n} -> Delta^m x Delta^n for a shuffle tau.

    The first factor keeps the cuts tau(1..m) (it merges z_{j-1}, z_j for
    j in tau(m+1..m+n)); the second keeps the cuts tau(m+1..m+n).
    """
    if n is None:
        n = len(tau) - m
    _check_shuffle(tau, m, n)
    N = m + n
    first = _block_sums(N, tau.word[:m])
    second = _block_sums(N, tau.word[m:])
    return CoordMap.make(simplex(N), simplex(m) + simplex(n), first + second)


def lambda_by_degeneracies(tau: Permutation, m: int, n: int) -> CoordMap:
    """The same map built as a composite of single degeneracies."""
    _check_shuffle(tau, m, n)
    N = m + n

    def chain(indices):
        f = identity_map(simplex(N))
        dim = N
        for k in sorted(indices, reverse=True):
            f = degeneracy(k, dim).compose(f)
            dim -= 1
        return f

    a = chain([tau.word[j] - 1 for j in range(m, N)])
    b = chain([tau.word[j] - 1 for j in range(m)])
    return CoordMap.make(simplex(N), a.target + b.target, a.components + b.components)


def cube_action(tau: Permutation, m: int, n: int | None = None,
                convention: str = "shuffle") -> CoordMap:
    """cube^{m+n} -> cube^m x cube^n.

    ``shuffle``: t -> (t_{tau(1)}, ..., t_{tau(m+n)}), the form that matches
    the simplicial shuffle map under prefix-sum coordinates.
    ``inverse``: t -> (t_{tau^{-1}(1)}, ...), kept as a negative control.
    """
    if n is None:
        n = len(tau) - m
    N = m + n
    if convention == "shuffle":
        idx = tau.word
    elif convention == "inverse":
        idx = tau.inverse().word
    else:
        raise ValueError(f"unknown convention {convention!r}")
    comps = [MultiPoly.var(i - 1) for i in idx]
    return CoordMap.make(cube(N), cube(m) + cube(n), comps)


def ez_simplicial(m: int, n: int) -> FormalMapSum:
    if m < 0 or n < 0:
        return FormalMapSum()
    return FormalMapSum([(lambda_map(t, m, n), t.sign) for t in shuffles(m, n)])


def ez_cubical(m: int, n: int, convention: str = "shuffle") -> FormalMapSum:
    if m < 0 or n < 0:
        return FormalMapSum()
    return FormalMapSum([(cube_action(t, m, n, convention), t.sign) for t in shuffles(m, n)])


def face_sum(b: int) -> FormalMapSum:
    """delta = sum_r (-1)^r iota_r : Delta^{b-1} -> Delta^b."""
    return FormalMapSum([(face_map(r, b), (-1) ** r) for r in range(b + 1)])


def identity_sum(space: Space) -> FormalMapSum:
    return FormalMapSum.single(identity_map(space))
