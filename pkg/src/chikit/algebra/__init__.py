from .poly import MultiPoly, X, poly_sum
from .gcd import poly_gcd, prs_gcd
from .ratfunc import RatFunc, cross_equal, rf_arith, rf_equal, rf_prod, rf_substitute, rf_sum

__all__ = [
    "MultiPoly", "X", "poly_sum", "poly_gcd", "prs_gcd", "RatFunc", "cross_equal",
    "rf_arith", "rf_equal", "rf_prod", "rf_substitute", "rf_sum",
]
