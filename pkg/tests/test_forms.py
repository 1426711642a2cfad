import pytest
from hypothesis import given
from hypothesis import strategies as st

from chikit.algebra import MultiPoly, RatFunc, rf_equal
from chikit.combinat.perms import Permutation
from chikit.forms import (DiffForm, cube_pushforward, dif_substitution, pullback, pulled_theta,
                          theta_ez_sides, theta_form, top_form, verify_theta_ez,
                          verify_theta_pullback)
from chikit.hopf import chi_value, verify_shuffle_relation

X = MultiPoly.var
ONE = MultiPoly.const(1)


def test_theta_small():
    t1 = theta_form(1)
    want = DiffForm({(1,): RatFunc(ONE, X(1)), (0,): RatFunc(-ONE, X(0))})
    assert t1 == want
    assert theta_form(0) == DiffForm.scalar(1)
    for N in range(1, 6):
        assert len(theta_form(N)) == N + 1


def test_pullback_examples():
    sub = dif_substitution(1)
    assert pullback(DiffForm.d(0), sub) == DiffForm.d(1)
    got = pullback(theta_form(1), sub)
    assert got == top_form(1, -chi_value([1]))


def test_pullback_errors():
    with pytest.raises(ValueError):
        pullback(DiffForm.d(3), {0: X(1)})
    omega = DiffForm({(): RatFunc(ONE, X(1) - X(2))})
    with pytest.raises(ZeroDivisionError):
        pullback(omega, {1: X(5), 2: X(5)})


def test_antisymmetry():
    a, b = DiffForm.d(1), DiffForm.d(2)
    assert a ^ b == -(b ^ a)
    assert (a ^ a).is_zero()
    assert DiffForm({(2, 1): 1}) == -DiffForm({(1, 2): 1})


coef = st.sampled_from([RatFunc(X(1)), RatFunc(ONE, X(2) + 1), RatFunc(X(1) - X(3)), RatFunc(3)])


@st.composite
def forms(draw):
    k = draw(st.integers(0, 2))
    idx = draw(st.lists(st.integers(1, 3), min_size=k, max_size=k, unique=True))
    return DiffForm({tuple(idx): draw(coef)})


subs = st.sampled_from([
    {1: X(1) * X(2), 2: X(2) + 1, 3: X(1) - X(2)},
    {1: X(2), 2: X(1), 3: X(1) + X(2)},
    {1: X(1) ** 2, 2: X(1) + X(2), 3: X(2)},
])


@given(forms(), forms(), subs)
def test_pullback_respects_wedge(a, b, sub):
    assert pullback(a ^ b, sub) == pullback(a, sub) ^ pullback(b, sub)


@given(forms(), forms())
def test_graded_commutativity(a, b):
    sign = (-1) ** (a.degree * b.degree)
    assert a ^ b == (b ^ a).scale(sign)


@pytest.mark.parametrize("N", range(1, 7))
def test_theta_pullback(N):
    assert verify_theta_pullback(N).passed
    coef = pulled_theta(N).coefficient(range(1, N + 1))
    assert rf_equal(coef, chi_value(range(1, N + 1)) * (-1) ** N)


def test_theta_pullback_negative_control():
    assert not verify_theta_pullback(3, flip=True).passed


def test_theta_ez_10_sides():
    s, p = theta_ez_sides(1, 0)
    assert s == p == top_form(1, -chi_value([1]))


@pytest.mark.parametrize("m,n", [(m, s - m) for s in range(1, 6) for m in range(s + 1)])
def test_theta_ez_matches_shuffle_relation(m, n):
    rep = verify_theta_ez(m, n)
    assert rep.passed == verify_shuffle_relation(m, n, numeric=False).passed
    assert rep.details["shuffle_side_matches_display"]
    assert rep.details["product_side_matches_display"]


def test_theta_ez_inverse_convention_fails():
    assert not verify_theta_ez(2, 1, convention="inverse").passed


def test_pushforward_sign_from_reordering():
    omega = top_form(2, RatFunc(X(1)))
    got = cube_pushforward(omega, Permutation((2, 1)))
    assert got == top_form(2, RatFunc(-X(2)))
