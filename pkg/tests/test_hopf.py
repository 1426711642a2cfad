import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chikit.algebra import MultiPoly, RatFunc, rf_equal
from chikit.combinat.perms import Permutation, all_permutations
from chikit.hopf import (character_eval, chain_denominator, chi, chi_value, mr_product,
                         numeric_check, shuffle_chain_sum, shuffle_chain_sum_terms,
                         verify_multiplicativity, verify_shuffle_relation)

X = MultiPoly.var
ONE = MultiPoly.const(1)


def test_chi_examples():
    assert rf_equal(chi_value([1]), RatFunc(ONE, X(1) * (1 - X(1))))
    assert chi(0, []).value == RatFunc(1)
    assert rf_equal(chi_value([2, 1]), RatFunc(ONE, X(2) * (X(1) - X(2)) * (1 - X(1))))
    with pytest.raises(ValueError):
        chi(2, [1])
    with pytest.raises(ValueError):
        chi_value([1, 1])


def test_character_on_basis():
    assert character_eval(Permutation((1, 2))) == chi_value([1, 2])
    assert character_eval(Permutation((2, 1))) == chi_value([2, 1])
    assert character_eval(Permutation(())) == RatFunc(1)


def test_mr_product_examples():
    e = Permutation(())
    tau = Permutation((2, 1))
    assert mr_product(e, tau).terms == {tau: 1}
    one = Permutation((1,))
    assert mr_product(one, one).terms == {Permutation((1, 2)): 1, Permutation((2, 1)): 1}
    assert len(mr_product(Permutation((1, 2)), Permutation((2, 1)))) == 6


def test_shuffle_relation_11_by_hand():
    lhs = chi_value([1, 2]) + chi_value([2, 1])
    want = RatFunc(X(2) - X(1), X(1) * X(2) * (X(2) - X(1)) * (1 - X(1)) * (1 - X(2)))
    assert rf_equal(lhs, want)
    assert rf_equal(lhs, chi_value([1]) * chi_value([2]))


@pytest.mark.parametrize("m", range(0, 5))
def test_shuffle_relation_one_sided(m):
    assert verify_shuffle_relation(m, 0).passed
    assert verify_shuffle_relation(0, m).passed


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_prefix_dp_matches_term_sum(m, n):
    u, v = tuple(range(1, m + 1)), tuple(range(m + 1, m + n + 1))
    assert rf_equal(shuffle_chain_sum(u, v), shuffle_chain_sum_terms(u, v))
    assert verify_shuffle_relation(m, n, method="terms").passed


def test_shuffle_relation_negative_control():
    assert not verify_shuffle_relation(2, 1, flip=True).passed


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (1, 4)])
def test_shuffle_relation_block_symmetry(m, n):
    """The (n, m) relation is the (m, n) one with the two blocks relabeled."""
    N = m + n
    swap = {i: (i + n if i <= m else i - m) for i in range(1, N + 1)}
    u, v = tuple(range(1, m + 1)), tuple(range(m + 1, N + 1))
    lhs = shuffle_chain_sum(u, v).relabel(swap)
    assert rf_equal(lhs, shuffle_chain_sum(tuple(range(1, n + 1)), tuple(range(n + 1, N + 1))))


@given(st.permutations(range(1, 5)), st.integers(0, 2))
def test_adjacent_transposition_changes_two_factors(word, k):
    """Swapping adjacent arguments a_k, a_{k+1} of chi alters the denominator
    only in the factors that involve the swapped pair."""
    w = tuple(word)
    w2 = w[:k] + (w[k + 1], w[k]) + w[k + 2:]

    def factors(args):
        out = []
        prev = None
        for a in args:
            out.append(X(a) if prev is None else X(a) - X(prev))
            prev = a
        out.append(ONE - X(prev))
        return out

    f1, f2 = factors(w), factors(w2)
    assert chain_denominator(w) == _prod(f1)
    # up to sign exactly two factors change: the middle one only flips
    differ = [i for i in range(len(f1)) if f1[i] != f2[i] and f1[i] != -f2[i]]
    assert differ == [k, k + 2]
    assert f1[k + 1] == -f2[k + 1]


def _prod(fs):
    out = ONE
    for f in fs:
        out = out * f
    return out


def test_numeric_oracle_detects_wrong_value():
    words = [(1, 2), (2, 1)]
    right = chi_value([1]) * chi_value([2])
    assert numeric_check(words, right, 2, seed=1)
    assert not numeric_check(words, -right, 2, seed=1)


def test_multiplicativity_examples():
    e = Permutation(())
    assert verify_multiplicativity(e, e).passed
    one = Permutation((1,))
    assert verify_multiplicativity(one, one).passed


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2), (2, 2)])
def test_multiplicativity_exhaustive_small(m, n):
    for a, b in itertools.product(all_permutations(m), all_permutations(n)):
        assert verify_multiplicativity(a, b).passed
