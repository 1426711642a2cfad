"""The parity differential on homogeneous two-variable polynomials and its
cohomology, plus the sign/power normalization constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import kernels
from ..report import VerificationReport, timed


def _tau(n: int) -> int:
    return n % 2


def e1_delta(p: int, a: int, flip: bool = False) -> dict:
    """Image of x^a (meaning x^a y^{p-a}) in degree p+1, as exponent -> coefficient:
    (-1)^p tau(a) x^{a+1} + (-1)^{p-a} tau(p-a) x^a."""
    if not 0 <= a <= p:
        raise ValueError("need 0 <= a <= p")
    out: dict = {}
    # flip: parity rule on the raising term reversed (negative control; a
    # mere sign change would only rescale the basis)
    if _tau(a) != flip:
        out[a + 1] = out.get(a + 1, 0) + (-1) ** p
    if _tau(p - a):
        out[a] = out.get(a, 0) + (-1) ** (p - a)
    return {e: c for e, c in out.items() if c}


def e1_matrix(p: int, flip: bool = False) -> list:
    """Matrix of delta_hat^p: Q[x]_{<=p} -> Q[x]_{<=p+1}, column a = image of x^a."""
    M = [[Fraction(0)] * (p + 1) for _ in range(p + 2)]
    for a in range(p + 1):
        for e, c in e1_delta(p, a, flip).items():
            M[e][a] = Fraction(c)
    return M


def rref(rows: list):
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    ncols = len(M[0]) if M else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
    return M[:row], pivots


def kernel_basis(M: list, ncols: int) -> list:
    R, piv = rref(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def column_space(M: list, nrows: int) -> list:
    cols = [[M[i][j] for i in range(nrows)] for j in range(len(M[0]) if M else 0)]
    R, _ = rref(cols) if cols else ([], [])
    return R


def same_subspace(U: list, V: list) -> bool:
    ru = rref(U)[0] if U else []
    rv = rref(V)[0] if V else []
    return ru == rv


def _int_rank(M: list) -> int:
    if not M or not M[0]:
        return 0
    return kernels.int_rank(np.array([[int(x) for x in r] for r in M], dtype=np.int64))


def _is_zero_product(A: list, B: list) -> bool:
    return all(sum(A[i][k] * B[k][j] for k in range(len(B))) == 0
               for i in range(len(A)) for j in range(len(B[0])))


def _vec_render(v) -> list:
    return [[i, str(c)] for i, c in enumerate(v) if c != 0]


@dataclass
class PageRow:
    p: int
    ker_dim: int
    im_dim: int
    ker_basis: list
    im_basis: list
    exact: bool
    h_dim: int

    def to_dict(self):
        return {"p": self.p, "ker_dim": self.ker_dim, "im_prev_dim": self.im_dim,
                "ker_basis": [_vec_render(v) for v in self.ker_basis],
                "im_prev_basis": [_vec_render(v) for v in self.im_basis],
                "exact": self.exact, "cohomology_dim": self.h_dim}


@dataclass
class PageReport:
    p_max: int
    rows: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self):
        return {"p_max": self.p_max, "rows": [r.to_dict() for r in self.rows],
                "checks": dict(self.checks), "pass": self.passed}


def _page_row(p: int, flip: bool = False) -> PageRow:
    M = e1_matrix(p, flip)
    ker = kernel_basis(M, p + 1)
    if p == 0:
        im = []
    else:
        im = column_space(e1_matrix(p - 1, flip), p + 1)
    ker_rref = rref(ker)[0] if ker else []
    exact = same_subspace(ker, im) if p >= 1 else None
    rank_fraction = len(rref(M)[0]) if M else 0
    if rank_fraction != _int_rank(M):
        raise ArithmeticError(f"rank mismatch at p={p}")
    return PageRow(p, len(ker), len(im), ker_rref, im, bool(exact) if p >= 1 else True,
                   len(ker) - len(im))


def e1_page(p_max: int, threads: int = 1, flip: bool = False) -> PageReport:
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    ps = list(range(0, p_max + 1))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(lambda p: _page_row(p, flip), ps))
    else:
        rows = [_page_row(p, flip) for p in ps]
    rep = PageReport(p_max, rows)
    even_ok = True
    odd_ok = True
    for row in rows:
        p = row.p
        if p % 2 == 0:
            want = [[Fraction(1) if i == e else Fraction(0) for i in range(p + 1)]
                    for e in range(0, p + 1, 2)]
            even_ok &= row.ker_dim == p // 2 + 1 and same_subspace(row.ker_basis, want)
        else:
            odd_ok &= row.ker_dim == p // 2
    squares = all(_is_zero_product(e1_matrix(p + 1, flip), e1_matrix(p, flip))
                  for p in range(p_max))
    rep.checks = {
        "delta_squared_zero": squares,
        "even_kernels": even_ok,
        "odd_kernel_dims": odd_ok,
        "exact_for_p_ge_1": all(r.exact for r in rows if r.p >= 1),
        "cohomology_only_at_0": rows[0].h_dim == 1 and all(r.h_dim == 0 for r in rows[1:]),
    }
    return rep


@timed
def verify_e1_page(p_max: int = 20, flip: bool = False) -> VerificationReport:
    rep = e1_page(p_max, flip=flip)
    details = dict(rep.checks)
    details["dims"] = [[r.p, r.ker_dim, r.im_dim] for r in rep.rows]
    return VerificationReport("tot.e1_page", {"p_max": p_max}, rep.passed, details)


# --------------------------------------------------------------------------
# normalization constants as (sign, power of 2 pi i)

@dataclass(frozen=True)
class Constant:
    sign: int
    power: int

    def __mul__(self, other):
        if isinstance(other, int):
            return Constant(self.sign * other, self.power)
        return Constant(self.sign * other.sign, self.power + other.power)

    __rmul__ = __mul__


def _c_const(d: int, N: int, flip: bool = False) -> Constant:
    e = N * (N + 1) // 2 if flip else N * (N - 1) // 2
    return Constant(-1 if e % 2 else 1, d)


def c_const(d: int, N: int) -> Constant:
    """c_{d,N} = (-1)^{N(N-1)/2} (2 pi i)^d as (sign, power)."""
    return _c_const(d, N)


@timed
def verify_constants(p_max: int = 6, n_max: int = 12, flip: bool = False) -> VerificationReport:
    c_const = lambda d, N: _c_const(d, N, flip)
    rec1 = all(c_const(d, N) == c_const(d, N - 1) * ((-1) ** (N - 1))
               for d in range(p_max + 1) for N in range(1, n_max + 1))
    rec2 = all(c_const(p + q, m + n) == c_const(p, m) * c_const(q, n) * ((-1) ** (m * n))
               for p in range(p_max + 1) for q in range(p_max + 1 - p)
               for m in range(n_max + 1) for n in range(n_max + 1 - m))
    return VerificationReport("tot.constants", {"p_max": p_max, "n_max": n_max}, rec1 and rec2,
                              {"step_recursion": rec1, "product_recursion": rec2})
