from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adoframes import exact
from adoframes.errors import InputError

F = Fraction


def test_to_fraction_accepts_strings_and_numbers():
    assert exact.to_fraction("1/2") == F(1, 2)
    assert exact.to_fraction(3) == F(3)
    assert exact.to_fraction("-2") == F(-2)
    assert exact.to_fraction(0.25) == F(1, 4)


def test_format_fraction():
    assert exact.format_fraction(F(1, 2)) == "1/2"
    assert exact.format_fraction(F(-3)) == "-3"


def test_nullspace_of_zero_matrix_is_full():
    basis = exact.exact_nullspace(exact.zeros(3, 3))
    assert len(basis) == 3


def test_nullspace_of_identity_is_empty():
    assert exact.exact_nullspace(exact.identity(4)) == []


def test_nullspace_of_stacked_adjoint_of_weyl_algebra():
    # A3,1: C^1_23 = 1; stacking ad(x_k) gives a kernel along x1 only
    from adoframes.algebra import StructureConstants
    c = StructureConstants(3, [(0, 1, 2, 1)])
    stacked = np.vstack([c.ad(k) for k in range(3)])
    basis = exact.exact_nullspace(stacked)
    assert len(basis) == 1
    assert list(basis[0]) == [1, 0, 0]


def test_rank_and_solve_in_span():
    cols = [exact.fraction_array([1, 0, 1]), exact.fraction_array([0, 1, 1])]
    assert exact.rank(np.array(cols)) == 2
    assert exact.solve_in_span(cols, [2, 3, 5]) == [2, 3]
    assert exact.solve_in_span(cols, [1, 0, 0]) is None


def test_charpoly_of_rotation_generator():
    m = exact.fraction_array([[0, -1], [1, 0]])
    assert exact.charpoly(m) == [1, 0, 1]


def test_charpoly_matches_numpy():
    rng = np.random.default_rng(3)
    m = rng.integers(-4, 5, size=(5, 5))
    ours = [float(c) for c in exact.charpoly(exact.fraction_array(m))]
    theirs = np.poly(m.astype(float))[::-1]
    assert np.allclose(ours, theirs, atol=1e-8)


def test_squarefree_decomposition():
    # (t - 1)^2 (t + 2) = t^3 - 3t + 2
    parts = exact.poly_squarefree([2, -3, 0, 1])
    assert sorted((tuple(f), m) for f, m in parts) == [((F(-1), F(1)), 2), ((F(2), F(1)), 1)]


def test_nullspace_rejects_non_matrix():
    with pytest.raises(InputError):
        exact.exact_nullspace(exact.zeros(2, 2, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_nullspace_vectors_are_annihilated(entries):
    m = exact.fraction_array(np.array(entries).reshape(3, 3))
    basis = exact.exact_nullspace(m)
    assert len(basis) + exact.rank(m) == 3
    for v in basis:
        assert exact.is_zero(m.dot(v))
