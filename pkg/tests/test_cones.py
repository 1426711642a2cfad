import csv
from collections import Counter

import pytest

from chikit.algebra import MultiPoly, RatFunc, rf_equal
from chikit.combinat.perms import Permutation, shuffles
from chikit.cones import (PrefixCone, bridge_identity, cone_transform, enumerate_oracle,
                          laurent_render, subdivision_sum, transform_closed_form, verify_brion,
                          verify_lattice)
from chikit.hopf import chi_value, shuffle_chain_sum

X = MultiPoly.var
ONE = MultiPoly.const(1)


def test_closed_form_examples():
    assert rf_equal(transform_closed_form(PrefixCone(1)), RatFunc(ONE, 1 - X(1)))
    assert transform_closed_form(PrefixCone(0)) == RatFunc(1)
    want = RatFunc(X(2), (X(2) - X(1)) * (1 - X(2)))
    assert rf_equal(transform_closed_form(PrefixCone(2)), want)
    assert cone_transform(PrefixCone(2)).closed_form == transform_closed_form(PrefixCone(2))


@pytest.mark.parametrize("N", range(0, 9))
def test_bridge_identity(N):
    assert bridge_identity(N)


def test_cone_order_follows_inverse():
    c = PrefixCone(3, Permutation((2, 3, 1)))
    assert c.order == (3, 1, 2)
    assert c.contains((1, 0, -1)) is False  # t3 < 0 first
    assert c.contains((1, -1, 0))
    assert c.contains((0, -1, 1))
    with pytest.raises(ValueError):
        PrefixCone(2, Permutation((1, 2, 3)))


def test_lattice_examples():
    res = enumerate_oracle(1, 3)
    assert laurent_render(res["sum"]) == "1 + x1 + x1^2 + x1^3"
    assert res["membership"]
    res = enumerate_oracle(2, 1)
    assert set(res["sum"]) == {(0, 0), (0, 1), (1, -1), (1, 0)}
    assert res["membership"] and res["matches_expansion"] and res["telescoping"]


@pytest.mark.parametrize("N,B", [(N, B) for N in range(1, 5) for B in range(0, 6)])
def test_lattice_oracle(N, B):
    res = enumerate_oracle(N, B)
    assert res["points"] == (B + 1) ** N
    assert res["distinct_exponents"]
    assert verify_lattice(N, B).passed


def test_lattice_negative_control():
    assert not verify_lattice(2, 2, flip=True).passed


def test_lattice_csv(tmp_path):
    path = tmp_path / "pts.csv"
    enumerate_oracle(2, 1, csv_path=path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["j1", "j2", "i1", "i2", "in_cone"]
    assert ["1", "0", "1", "-1", "1"] in rows


def test_brion_examples():
    assert verify_brion(1, 1).passed
    assert verify_brion(3, 0).passed and verify_brion(0, 2).passed
    assert not verify_brion(2, 1, flip=True).passed
    assert verify_brion(2, 2, method="terms").passed


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_brion_is_shuffle_relation_times_monomial(m, n):
    N = m + n
    mono = RatFunc(MultiPoly.monomial({i: 1 for i in range(1, N + 1)}))
    chain = shuffle_chain_sum(tuple(range(1, m + 1)), tuple(range(m + 1, N + 1)))
    assert rf_equal(subdivision_sum(m, n), mono * chain)


def test_every_shuffle_cone_transform_is_a_relabeled_chain():
    for t in shuffles(2, 2):
        c = PrefixCone(4, t)
        order = c.order
        mono = RatFunc(MultiPoly.monomial({i: 1 for i in range(1, 5)}))
        assert rf_equal(transform_closed_form(c), mono * chi_value(order))
