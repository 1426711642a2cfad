"""Lattice-point transforms of prefix-sum cones and their shuffle subdivision."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass

from . import kernels
from .algebra import MultiPoly, RatFunc, rf_equal
from .combinat.perms import Permutation, shuffles
from .hopf import chi_value, tree_sum
from .report import VerificationReport, timed

X = MultiPoly.var
ONE = MultiPoly.const(1)


@dataclass(frozen=True)
class PrefixCone:
    """{t : t_{p(1)} >= 0, t_{p(1)} + t_{p(2)} >= 0, ...} with p = perm^{-1}."""

    N: int
    perm: Permutation | None = None

    def __post_init__(self):
        if self.perm is not None and len(self.perm) != self.N:
            raise ValueError("permutation size does not match the cone dimension")

    @property
    def order(self) -> tuple:
        """1-based coordinate order p(1), ..., p(N)."""
        if self.perm is None:
            return tuple(range(1, self.N + 1))
        return self.perm.inverse().word

    def contains(self, point) -> bool:
        acc = 0
        for i in self.order:
            acc += point[i - 1]
            if acc < 0:
                return False
        return True


@dataclass(frozen=True)
class ConeTransform:
    cone: PrefixCone
    closed_form: RatFunc


def transform_closed_form(c: PrefixCone) -> RatFunc:
    """Product of geometric series: prod_k x_{a(k+1)}/(x_{a(k+1)} - x_{a(k)}) * 1/(1 - x_{aN}).

    Built from the geometric series in y_k = x_{a_k}/x_{a_{k+1}} and
    y_N = x_{a_N}; it does not go through the chain character.
    """
    a = c.order
    if not a:
        return RatFunc(1)
    val = RatFunc(1)
    for k in range(len(a) - 1):
        val = val * RatFunc(X(a[k + 1]), X(a[k + 1]) - X(a[k]))
    return val * RatFunc(ONE, ONE - X(a[-1]))


def cone_transform(c: PrefixCone) -> ConeTransform:
    return ConeTransform(c, transform_closed_form(c))


def bridge_identity(N: int) -> bool:
    """transform of C_N equals (x_1...x_N) chi_N(x_1, ..., x_N)."""
    mono = RatFunc(MultiPoly.monomial({i: 1 for i in range(1, N + 1)}))
    return rf_equal(transform_closed_form(PrefixCone(N)), mono * chi_value(range(1, N + 1)))


@timed
def verify_bridge(N: int, flip: bool = False) -> VerificationReport:
    ok = bridge_identity(N)
    if flip:
        mono = RatFunc(MultiPoly.monomial({i: 1 for i in range(1, N + 1)}))
        ok = rf_equal(transform_closed_form(PrefixCone(N)), -mono * chi_value(range(1, N + 1)))
    return VerificationReport("cone.bridge", {"N": N}, ok, {})


# --------------------------------------------------------------------------
# lattice enumeration

def _laurent_mul(a: Counter, b: Counter) -> Counter:
    out = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return Counter({e: c for e, c in out.items() if c})


def _y_exponent(N: int, k: int) -> tuple:
    """Exponent vector in x of y_k = x_k/x_{k+1} (k < N) or y_N = x_N."""
    e = [0] * N
    e[k - 1] = 1
    if k < N:
        e[k] = -1
    return tuple(e)


def truncated_product(N: int, B: int, power: int = 1) -> Counter:
    """prod_k sum_{j=0}^{B} y_k^{j*power} as a Laurent polynomial in x."""
    out = Counter({(0,) * N: 1})
    for k in range(1, N + 1):
        y = _y_exponent(N, k)
        series = Counter({tuple(j * power * v for v in y): 1 for j in range(B + 1)})
        out = _laurent_mul(out, series)
    return out


def enumerate_oracle(N: int, B: int, csv_path=None) -> dict:
    """Enumerate J in [0,B]^N, map to I with i_1 = j_1, i_k = j_k - j_{k-1}.

    Returns a dict with the accumulated Laurent sum and the outcomes of
    (a) cone membership, (b) agreement with the truncated product
    expansion, and (c) the telescoping identity
    S_B * prod(1 - y_k) = prod(1 - y_k^{B+1}).
    """
    if N < 0 or B < 0:
        raise ValueError("N and B must be non-negative")
    J, I, inside = kernels.prefix_lattice(N, B)
    cone = PrefixCone(N)
    members_ok = bool(inside.all()) and all(cone.contains(row) for row in I.tolist())
    acc = Counter(tuple(row) for row in I.tolist())
    expansion = truncated_product(N, B)
    left = acc
    for k in range(1, N + 1):
        y = _y_exponent(N, k)
        left = _laurent_mul(left, Counter({(0,) * N: 1, y: -1}))
    right = Counter({(0,) * N: 1})
    for k in range(1, N + 1):
        y = _y_exponent(N, k)
        right = _laurent_mul(right, Counter({(0,) * N: 1, tuple((B + 1) * v for v in y): -1}))
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"j{k}" for k in range(1, N + 1)] + [f"i{k}" for k in range(1, N + 1)]
                       + ["in_cone"])
            for jr, ir, ok in zip(J.tolist(), I.tolist(), inside.tolist()):
                w.writerow(jr + ir + [int(ok)])
    return {
        "points": int(J.shape[0]),
        "sum": acc,
        "membership": members_ok,
        "matches_expansion": acc == expansion,
        "telescoping": left == right,
        "distinct_exponents": len(acc) == J.shape[0],
    }


@timed
def verify_lattice(N: int, B: int, flip: bool = False) -> VerificationReport:
    res = enumerate_oracle(N, B)
    ok = res["membership"] and res["matches_expansion"] and res["telescoping"]
    if flip:
        # compare against the expansion with one factor's sign reversed
        bad = truncated_product(N, B)
        bad = Counter({e: (-c if e[0] else c) for e, c in bad.items()})
        ok = ok and res["sum"] == bad
    details = {k: v for k, v in res.items() if k != "sum"}
    return VerificationReport("cone.lattice", {"N": N, "B": B}, ok, details)


def laurent_render(s: Counter) -> str:
    """1 + x1 + x1^2 style rendering for small sums (ascending exponents)."""
    parts = []
    for e, c in sorted(s.items(), key=lambda ec: (sum(ec[0]), ec[0])):
        fs = [f"x{i + 1}" + (f"^{v}" if v != 1 else "") for i, v in enumerate(e) if v]
        body = "*".join(fs) if fs else "1"
        parts.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(parts) if parts else "0"


# --------------------------------------------------------------------------
# shuffle subdivision

def _inv(p):
    return RatFunc(ONE, p)


def subdivision_sum(m: int, n: int) -> RatFunc:
    """sum over tau in Sh(m,n) of the transform of C^tau_{m+n}, grouped by
    prefix over interleavings of (1..m) and (m+1..m+n).

    Each closed form is prod x_{w(k+1)}/(x_{w(k+1)} - x_{w(k)}) / (1 - x_{wN});
    the first letter contributes no factor.
    """
    u = list(range(1, m + 1))
    v = list(range(m + 1, m + n + 1))
    if m + n == 0:
        return RatFunc(1)
    A: dict = {}
    B: dict = {}
    step = lambda new, last: RatFunc(X(new), X(new) - X(last))
    for i in range(m + 1):
        for j in range(n + 1):
            if i >= 1:
                if i == 1 and j == 0:
                    A[i, j] = RatFunc(1)
                else:
                    s = RatFunc()
                    if i >= 2:
                        s = s + A[i - 1, j] * step(u[i - 1], u[i - 2])
                    if j >= 1:
                        s = s + B[i - 1, j] * step(u[i - 1], v[j - 1])
                    A[i, j] = s
            if j >= 1:
                if j == 1 and i == 0:
                    B[i, j] = RatFunc(1)
                else:
                    s = RatFunc()
                    if j >= 2:
                        s = s + B[i, j - 1] * step(v[j - 1], v[j - 2])
                    if i >= 1:
                        s = s + A[i, j - 1] * step(v[j - 1], u[i - 1])
                    B[i, j] = s
    total = RatFunc()
    if m:
        total = total + A[m, n] * _inv(ONE - X(u[-1]))
    if n:
        total = total + B[m, n] * _inv(ONE - X(v[-1]))
    return total


@timed
def verify_brion(m: int, n: int, method: str = "prefix", flip: bool = False) -> VerificationReport:
    """transform(C_m)(x_1..x_m) * transform(C_n)(x_{m+1}..) equals the sum of
    transform(C^tau_{m+n}) over shuffles tau."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be non-negative")
    left = transform_closed_form(PrefixCone(m))
    right_block = transform_closed_form(PrefixCone(n)).relabel({i: i + m for i in range(1, n + 1)})
    prod = left * right_block
    if method == "prefix":
        total = subdivision_sum(m, n)
    else:
        total = tree_sum([transform_closed_form(PrefixCone(m + n, t)) for t in shuffles(m, n)])
    if flip:
        prod = -prod
    ok = rf_equal(prod, total)
    return VerificationReport("cone.brion", {"m": m, "n": n}, ok,
                              {"terms": len(shuffles(m, n)), "method": method})
