import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chikit.algebra import MultiPoly
from chikit.combinat import ez
from chikit.combinat.maps import (CoordMap, FormalMapSum, compose_sums, cube_action, degeneracy,
                                  dif_map, ez_cubical, ez_simplicial, face_map, identity_map,
                                  identity_sum, lambda_by_degeneracies, lambda_map, phi_map,
                                  simplex, cube)
from chikit.combinat.perms import Permutation, all_permutations, shuffle_signs, shuffles

X = MultiPoly.var


def test_small_shuffle_sets():
    s11 = shuffles(1, 1)
    assert [(str(t), t.sign) for t in s11] == [("12", 1), ("21", -1)]
    assert len(shuffles(2, 1)) == 3
    assert [str(t) for t in shuffles(0, 3)] == ["123"]


def test_shuffle_22_signs():
    assert [t.sign for t in shuffles(2, 2)] == [1, -1, 1, 1, -1, 1]
    table, signs = shuffle_signs(2, 2)
    assert list(signs) == [1, -1, 1, 1, -1, 1]


@pytest.mark.parametrize("m,n", [(m, s - m) for s in range(11) for m in range(s + 1)])
def test_shuffle_count(m, n):
    sh = shuffles(m, n)
    assert len(sh) == comb(m + n, m)
    assert all(t.is_shuffle(m) for t in sh)


def test_shuffles_reject_negative():
    with pytest.raises(ValueError):
        shuffles(-1, 2)


def test_permutation_algebra():
    p = Permutation((2, 3, 1))
    assert p.compose(p.inverse()) == Permutation.identity(3)
    assert p.sign == 1 and Permutation((2, 1, 3)).sign == -1
    with pytest.raises(ValueError):
        Permutation((1, 1))


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_sign_is_multiplicative(a, b):
    a, b = Permutation(tuple(a)), Permutation(tuple(b))
    assert (a * b).sign == a.sign * b.sign


def test_face_and_degeneracy_examples():
    assert face_map(1, 2).render() == "(-z1 + 1, 0, z1)"
    assert degeneracy(0, 2).render() == "(-z2 + 1, z2)"
    # s_k o iota_k = identity
    for N in range(1, 5):
        for k in range(N):
            assert degeneracy(k, N).compose(face_map(k, N)) == identity_map(simplex(N - 1))


def test_phi_and_dif_maps():
    assert phi_map(1).render() == "(-z1 + 1)"
    assert dif_map(1).render() == "(t1, -t1 + 1)"
    for N in range(0, 6):
        assert dif_map(N).compose(phi_map(N)) == identity_map(simplex(N))
        assert phi_map(N).compose(dif_map(N)) == identity_map(cube(N))


def test_lambda_small_cases():
    assert lambda_map(Permutation(()), 0, 0).target == simplex(0) + simplex(0)
    assert lambda_map(Permutation((1,)), 1, 0).components[:2] == identity_map(simplex(1)).components
    third = Fraction(1, 3)
    for t in shuffles(1, 1):
        img = lambda_map(t, 1, 1).evaluate({0: third, 1: third, 2: third})
        assert sum(img[:2]) == 1 and sum(img[2:]) == 1
        assert all(v >= 0 for v in img)


@pytest.mark.parametrize("m,n", [(m, s - m) for s in range(7) for m in range(s + 1)])
def test_lambda_structure(m, n):
    N = m + n
    for t in shuffles(m, n):
        f = lambda_map(t, m, n)
        assert f == lambda_by_degeneracies(t, m, n)
        # with z_0 eliminated, each factor's components sum to 1
        raw = list(f.components)
        first, second = sum(raw[:m + 1], MultiPoly()), sum(raw[m + 1:], MultiPoly())
        assert first == MultiPoly.const(1) and second == MultiPoly.const(1)


def test_ez_examples():
    assert len(ez_simplicial(1, 0)) == 1
    assert list(ez_simplicial(1, 0).terms.values()) == [1]
    assert sorted(ez_cubical(1, 1).render()) == ["+1 (t1, t2)", "-1 (t2, t1)"]
    assert sorted(ez_simplicial(2, 2).terms.values()) == sorted([1, -1, 1, 1, -1, 1])
    assert len(ez_simplicial(0, 3)) == 1


def test_boundary_conventions():
    assert len(ez_simplicial(-1, 2)) == 0 and len(ez_simplicial(2, -1)) == 0


def _random_sum(rng, source, target_dim):
    terms = []
    for _ in range(rng.randint(1, 3)):
        N = source[0][1]
        k = rng.randrange(N) if N else None
        if N and k is not None and target_dim == N - 1:
            terms.append((degeneracy(k, N), rng.choice([1, -1, 2])))
        else:
            terms.append((identity_map(source), rng.choice([1, -1, 2])))
    return FormalMapSum(terms)


def test_compose_sums_laws():
    rng = random.Random(4)
    for _ in range(20):
        f = _random_sum(rng, simplex(2), 1)
        g = _random_sum(rng, simplex(2), 1)
        h = FormalMapSum([(face_map(rng.randrange(3), 2), rng.choice([1, -1]))])
        assert compose_sums(f + g, h) == compose_sums(f, h) + compose_sums(g, h)
        assert compose_sums(identity_sum(simplex(1)), f) == f
        k = FormalMapSum([(face_map(rng.randrange(2), 1), 1)])
        assert compose_sums(compose_sums(f, h), k) == compose_sums(f, compose_sums(h, k))


def test_composition_rejects_mismatched_spaces():
    with pytest.raises(ValueError):
        face_map(0, 2).compose(face_map(0, 2))


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (2, 1), (2, 2)])
def test_ez_diagram_small(m, n):
    assert ez.verify_ez_diagram(m, n).passed


@pytest.mark.parametrize("m,n", [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_ez_diagram_inverse_reading_fails(m, n):
    assert not ez.verify_ez_diagram(m, n, convention="inverse").passed


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_co_leibniz_small(m, n):
    assert ez.verify_co_leibniz(m, n).passed


def test_co_leibniz_sign_matters():
    assert not ez.verify_co_leibniz(1, 1, flip=True).passed


@pytest.mark.parametrize("m,n,r", [(1, 0, 0), (1, 1, 1), (0, 2, 1), (2, 1, 1)])
def test_coassoc_small(m, n, r):
    assert ez.verify_coassoc(m, n, r).passed
    assert not ez.verify_coassoc(m, n, r, flip=True).passed


def test_cube_action_components():
    t = Permutation((2, 1))
    assert cube_action(t, 1, 1).render() == "(t2, t1)"
    assert cube_action(Permutation((1, 3, 2)), 2, 1).render() == "(t1, t3, t2)"
    with pytest.raises(ValueError):
        cube_action(t, 1, 1, convention="other")


def test_lambda_blocks_are_nonnegative_integer_sums():
    from chikit.combinat.maps import _block_sums
    for m, n in [(1, 1), (2, 2), (3, 1)]:
        for t in shuffles(m, n):
            for cuts in (t.word[:m], t.word[m:]):
                blocks = _block_sums(m + n, cuts)
                assert all(c == 1 for b in blocks for c in b.terms.values())
                assert sum(blocks, MultiPoly()) == MultiPoly.linear({i: 1 for i in range(m + n + 1)})
