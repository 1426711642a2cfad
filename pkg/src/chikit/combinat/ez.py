"""Checks of the shuffle-map calculus at the level of formal map sums."""
from __future__ import annotations

from ..report import VerificationReport, timed
from .maps import (FormalMapSum, compose_sums, ez_cubical, ez_simplicial, face_sum,
                   identity_sum, phi_map, simplex)


def _compare(statement, params, lhs: FormalMapSum, rhs: FormalMapSum, extra=None):
    diff = lhs - rhs
    details = {
        "lhs_terms": len(lhs),
        "rhs_terms": len(rhs),
        "difference_terms": len(diff),
    }
    if diff.terms:
        details["difference_sample"] = diff.render()[:4]
    if extra:
        details.update(extra)
    return VerificationReport(statement, params, not diff.terms, details)


@timed
def verify_ez_diagram(m: int, n: int, convention: str = "shuffle") -> VerificationReport:
    """(phi_m x phi_n) o psi_simplicial = psi_cubical o phi_{m+n}."""
    phis = FormalMapSum.single(phi_map(m)).times(FormalMapSum.single(phi_map(n)))
    lhs = compose_sums(phis, ez_simplicial(m, n))
    rhs = compose_sums(ez_cubical(m, n, convention), FormalMapSum.single(phi_map(m + n)))
    params = {"m": m, "n": n}
    if convention != "shuffle":
        params["convention"] = convention
    return _compare("ez.diagram", params, lhs, rhs)


def _psi(m, n):
    return ez_simplicial(m, n)


@timed
def verify_co_leibniz(m: int, n: int, flip: bool = False) -> VerificationReport:
    """psi_{m,n} o delta = (delta x 1) o psi_{m-1,n} + (-1)^m (1 x delta) o psi_{m,n-1}."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    lhs = compose_sums(_psi(m, n), face_sum(m + n))
    rhs = FormalMapSum()
    if m >= 1:
        rhs = rhs + compose_sums(face_sum(m).times(identity_sum(simplex(n))), _psi(m - 1, n))
    if n >= 1:
        sign = (-1) ** m * (-1 if flip else 1)
        rhs = rhs + compose_sums(identity_sum(simplex(m)).times(face_sum(n)),
                                 _psi(m, n - 1)).scale(sign)
    return _compare("ez.co_leibniz", {"m": m, "n": n}, lhs, rhs)


@timed
def verify_coassoc(m: int, n: int, r: int, flip: bool = False) -> VerificationReport:
    """(psi_{m,n} x 1_r) o psi_{m+n,r} = (1_m x psi_{n,r}) o psi_{m,n+r}.

    The difference of the two sides is the composite of the two shuffle
    stages, so this is also the check that that composite vanishes.
    """
    if min(m, n, r) < 0:
        raise ValueError("indices must be non-negative")
    lhs = compose_sums(_psi(m, n).times(identity_sum(simplex(r))), _psi(m + n, r))
    rhs = compose_sums(identity_sum(simplex(m)).times(_psi(n, r)), _psi(m, n + r))
    if flip:
        rhs = rhs.scale(-1)
    return _compare("ez.coassoc", {"m": m, "n": n, "r": r}, lhs, rhs)
