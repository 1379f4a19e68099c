from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adoframes import exact
from adoframes.algebra import StructureConstants
from adoframes.enveloping import (EnvelopingAlgebra, UEAElement, commutator_with_external,
                                  straighten_right_multiply)
from adoframes.errors import InputError, TerminationCapError, UnsupportedBasisError

F = Fraction


@pytest.fixture(scope="module")
def ideal_b():
    """U(b) for the ideal b = {x1, x2, x3} of A4,10 with x4 acting outside."""
    c = StructureConstants(3, [(0, 1, 2, 1)])  # [x2, x3] = x1
    d = exact.zeros(3, 3)
    d[2, 1] = F(-1)  # [x2, x4] = -x3
    d[1, 2] = F(1)   # [x3, x4] = x2
    return EnvelopingAlgebra(c, {"x4": d})


@pytest.fixture(scope="module")
def ideal_a():
    """U(a) for the abelian a = {x1, x2} with x3 acting by [x2, x3] = x1."""
    d = exact.zeros(2, 2)
    d[0, 1] = F(1)
    return EnvelopingAlgebra(StructureConstants(2), {"x3": d})


def mono(*exps, coeff=1):
    return UEAElement.monomial(exps, coeff)


def test_x2_squared_times_x3(ideal_b):
    u = ideal_b
    got = straighten_right_multiply(u, mono(0, 2, 0), 2)
    # x3 x2^2 + 2 x1 x2, written with the generators in that order
    expected = u.word(2, 1, 1) + 2 * u.word(0, 1)
    assert got == expected


@pytest.mark.parametrize("l", range(5))
def test_x2_power_times_x3(ideal_b, l):
    u = ideal_b
    lhs = u.right_multiply(mono(0, l, 0), 2)
    rhs = u.multiply(u.generator(2), mono(0, l, 0)) + l * u.multiply(u.generator(0),
                                                                  mono(0, max(l - 1, 0), 0))
    assert lhs == rhs


@pytest.mark.parametrize("m", range(5))
def test_x3_power_times_x2(ideal_b, m):
    u = ideal_b
    lhs = u.multiply(mono(0, 0, m), u.generator(1))
    rhs = mono(0, 1, m) - m * mono(1, 0, max(m - 1, 0))
    assert lhs == rhs


def test_x2x3_times_x2(ideal_b):
    got = ideal_b.right_multiply(mono(0, 1, 1), 1)
    assert got == mono(0, 2, 1) - mono(1, 1, 0)


def test_abelian_right_multiply_is_plain_product():
    u = EnvelopingAlgebra(StructureConstants(2))
    for k in range(4):
        assert u.right_multiply(mono(k, 0), 1) == mono(k, 1)


@pytest.mark.parametrize("k,l", list(product(range(4), range(4))))
def test_commutator_with_x3(ideal_a, k, l):
    got = commutator_with_external(ideal_a, mono(k, l), "x3")
    expected = l * mono(k + 1, l - 1) if l else UEAElement({}, 2)
    assert got == expected


def _bklm(k, l, m):
    out = UEAElement({}, 3)
    if l >= 1:
        out = out - l * mono(k, l - 1, m + 1)
    if l >= 2:
        out = out + F(l * (l - 1), 2) * mono(k + 1, l - 2, m)
    if m >= 1:
        out = out + m * mono(k, l + 1, m - 1)
    if m >= 2:
        out = out - F(m * (m - 1), 2) * mono(k + 1, l, m - 2)
    return out


@pytest.mark.parametrize("k,l,m", list(product(range(3), range(4), range(4))))
def test_commutator_with_x4_matches_bklm(ideal_b, k, l, m):
    assert commutator_with_external(ideal_b, mono(k, l, m), "x4") == _bklm(k, l, m)


def test_commutator_of_unit_vanishes(ideal_b, ideal_a):
    assert commutator_with_external(ideal_b, ideal_b.one(), "x4").is_zero()
    assert commutator_with_external(ideal_a, ideal_a.one(), "x3").is_zero()


def test_rel_first_two_lines(ideal_b):
    u = ideal_b
    for m in range(5):
        # x3^m x4 - x4 x3^m = m x2 x3^(m-1) - m(m-1)/2 x1 x3^(m-2)
        expected = UEAElement({}, 3)
        if m >= 1:
            expected = expected + m * mono(0, 1, m - 1)
        if m >= 2:
            expected = expected - F(m * (m - 1), 2) * mono(1, 0, m - 2)
        assert u.commutator(mono(0, 0, m), "x4") == expected
    for l in range(5):
        expected = UEAElement({}, 3)
        if l >= 1:
            expected = expected - l * mono(0, l - 1, 1)
        if l >= 2:
            expected = expected + F(l * (l - 1), 2) * mono(1, l - 2, 0)
        assert u.commutator(mono(0, l, 0), "x4") == expected


def test_bad_order_raises():
    # [x1, x2] = x2 lands on a generator that is not earlier than x1
    c = StructureConstants(2, [(1, 0, 1, 1)])
    with pytest.raises(UnsupportedBasisError):
        EnvelopingAlgebra(c)


def test_degree_cap():
    u = EnvelopingAlgebra(StructureConstants(3, [(0, 1, 2, 1)]), degree_cap=3)
    with pytest.raises(TerminationCapError):
        u.right_multiply(mono(0, 2, 1), 1)


def test_unknown_derivation(ideal_b):
    with pytest.raises(InputError):
        ideal_b.commutator(ideal_b.one(), "x5")


@pytest.fixture(scope="module")
def mats410():
    from adoframes import build_representation, catalog_lookup
    return build_representation(catalog_lookup("A4,10")).matrices


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_straightening_is_exact_in_a_faithful_rep(ideal_b, mats410, word):
    mats = mats410[:3]
    normal = ideal_b.word(*word)
    prod = exact.identity(mats[0].shape[0])
    for i in word:
        prod = prod.dot(mats[i])
    assert np.array_equal(ideal_b.evaluate(normal, mats), prod)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=5))
def test_commutator_is_exact_in_a_faithful_rep(ideal_b, mats410, word):
    mats = mats410
    a = ideal_b.word(*word)
    lhs = ideal_b.evaluate(a, mats[:3])
    got = ideal_b.evaluate(ideal_b.commutator(a, "x4"), mats[:3])
    assert np.array_equal(got, lhs.dot(mats[3]) - mats[3].dot(lhs))
