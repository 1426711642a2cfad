import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chikit.algebra import MultiPoly, RatFunc

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

NVARS = 3


@st.composite
def polys(draw, nvars=NVARS, max_terms=4, max_deg=2, coef=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[mono] = terms.get(mono, 0) + draw(st.integers(-coef, coef))
    return MultiPoly(terms)


@st.composite
def ratfuncs(draw, nvars=NVARS):
    num = draw(polys(nvars))
    den = draw(polys(nvars, max_terms=3).filter(bool))
    return RatFunc(num, den)


def to_sympy(p, syms):
    import sympy
    if isinstance(p, RatFunc):
        return to_sympy(p.num, syms) / to_sympy(p.den, syms)
    return sum((sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else c)
               * sympy.Mul(*[syms[i] ** e for i, e in enumerate(m)])
               for m, c in p.terms.items()) if p.terms else sympy.Integer(0)


@pytest.fixture
def rng():
    return random.Random(12345)
