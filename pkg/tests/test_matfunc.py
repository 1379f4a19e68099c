import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm, logm

from adoframes import build_representation, catalog_lookup, sample_descriptors
from adoframes.errors import InterpolationError, LogDomainError, NumericFailure
from adoframes.matfunc import (Spectrum, eigenvalues, exp_lagrange_sylvester,
                               exp_scaling_squaring, lagrange_sylvester_coefficients,
                               log_principal)


@pytest.fixture(scope="module")
def omega410():
    return build_representation(catalog_lookup("A4,10")).numeric()


def _spectrum_dict(spec):
    return {complex(round(z.real, 9), round(z.imag, 9)): m
            for z, m in zip(spec.eigenvalues, spec.multiplicities)}


@pytest.mark.parametrize("t", [0.4, 1.0, 1.9, np.pi])
def test_a410_spectrum(omega410, t):
    m = np.einsum("k,kij->ij", [0.2, -0.7, 0.5, t], omega410)
    spec = eigenvalues(m)
    assert spec.order == 6
    got = _spectrum_dict(spec)
    want = {complex(0, 0): 2, complex(0, round(t, 9)): 1, complex(0, round(-t, 9)): 1,
            complex(0, round(2 * t, 9)): 1, complex(0, round(-2 * t, 9)): 1}
    assert got == want


def test_spectrum_of_zero_and_diagonal():
    z = eigenvalues(np.zeros((3, 3)))
    assert z.eigenvalues == (0j,) and z.multiplicities == (3,)
    d = eigenvalues(np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(d.eigenvalues, [1, 2, 3], atol=1e-12)
    assert d.multiplicities == (1, 1, 1)


def test_spectrum_detects_jordan_block():
    spec = eigenvalues(np.array([[2.0, 1.0], [0.0, 2.0]]))
    assert spec.multiplicities == (2,)
    assert spec.eigenvalues[0] == pytest.approx(2.0)


def test_exp_of_zero():
    assert np.array_equal(exp_scaling_squaring(np.zeros((3, 3))), np.eye(3))


def test_exp_of_a2_closed_form():
    a1, a2 = 0.7, -1.3
    m = np.array([[a1, a2], [0.0, 0.0]])
    want = np.array([[np.exp(a1), a2 * (np.exp(a1) - 1) / a1], [0.0, 1.0]])
    assert np.allclose(exp_scaling_squaring(m), want, rtol=1e-13, atol=1e-14)
    assert np.allclose(exp_lagrange_sylvester(m), want, rtol=1e-12, atol=1e-13)


def test_exp_of_nilpotent_unit():
    n = np.zeros((3, 3))
    n[0, 1] = 1.0
    assert np.array_equal(exp_scaling_squaring(n), np.eye(3) + n)


def test_exp_stack_matches_single():
    rng = np.random.default_rng(1)
    stack = rng.normal(size=(4, 3, 3))
    out = exp_scaling_squaring(stack)
    for m, e in zip(stack, out):
        assert np.allclose(e, exp_scaling_squaring(m), rtol=1e-14, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.1, 10.0))
def test_exp_relative_error_against_reference(seed, norm):
    m = np.random.default_rng(seed).normal(size=(4, 4))
    m *= norm / np.abs(m).sum(axis=0).max()
    ref = expm(m)
    err = np.linalg.norm(exp_scaling_squaring(m) - ref) / np.linalg.norm(ref)
    assert err < 1e-12


def test_exp_overflow():
    with pytest.raises(NumericFailure):
        exp_scaling_squaring(1e6 * np.eye(2))


def test_lagrange_sylvester_two_point():
    m = np.diag([0.0, 1.0])
    assert np.allclose(exp_lagrange_sylvester(m), np.diag([1.0, np.e]), rtol=1e-14)
    c = lagrange_sylvester_coefficients(eigenvalues(m))
    assert np.allclose(c, [1.0, np.e - 1.0], rtol=1e-14)


def _appendix_coefficients(t):
    return np.array([1.0, 1.0,
                     (7 - np.cos(t)) * np.sin(t / 2) ** 2 / (3 * t ** 2),
                     (30 * t - 32 * np.sin(t) + np.sin(2 * t)) / (24 * t ** 3),
                     2 * np.sin(t / 2) ** 4 / (3 * t ** 4),
                     (6 * t - 8 * np.sin(t) + np.sin(2 * t)) / (24 * t ** 5)])


@pytest.mark.parametrize("t", [0.3, 0.9, 1.7, np.pi])
def test_a410_interpolation_coefficients(omega410, t):
    m = np.einsum("k,kij->ij", [0.5, 0.1, -0.3, t], omega410)
    c = lagrange_sylvester_coefficients(eigenvalues(m))
    assert np.allclose(c.imag, 0.0, atol=1e-12)
    assert np.allclose(c.real, _appendix_coefficients(t), rtol=1e-10, atol=1e-13)


def test_a410_c4_at_pi(omega410):
    m = np.einsum("k,kij->ij", [0.0, 0.0, 0.0, np.pi], omega410)
    c = lagrange_sylvester_coefficients(eigenvalues(m))
    assert c[4].real == pytest.approx(2 / (3 * np.pi ** 4), rel=1e-10)


def test_lagrange_sylvester_rejects_wrong_spectrum():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(InterpolationError):
        exp_lagrange_sylvester(m, Spectrum((1j, 2 + 0j), (1, 1)))


def test_two_exponentials_agree_on_catalog_samples():
    rng = np.random.default_rng(7)
    for desc in sample_descriptors():
        om = build_representation(desc).numeric()
        for _ in range(3):
            a = rng.uniform(-1, 1, size=desc.dim)
            a /= max(1.0, np.linalg.norm(a))
            m = np.einsum("k,kij->ij", a, om)
            diff = np.abs(exp_lagrange_sylvester(m) - exp_scaling_squaring(m)).max()
            assert diff < 1e-10, desc.label()


def test_log_of_identity():
    assert np.array_equal(log_principal(np.eye(4)), np.zeros((4, 4)))


def test_log_of_nilpotent_exponential():
    n = np.zeros((3, 3))
    n[0, 1] = 0.3
    assert np.allclose(log_principal(exp_scaling_squaring(n)), n, atol=1e-15)


def test_log_gives_bch_for_bianchi_ii():
    om = build_representation(catalog_lookup("Bianchi_II")).numeric()
    a = np.einsum("k,kij->ij", [0.2, -0.3, 0.1], om)
    b = np.einsum("k,kij->ij", [-0.1, 0.25, 0.4], om)
    lhs = log_principal(exp_scaling_squaring(a) @ exp_scaling_squaring(b))
    assert np.allclose(lhs, a + b + 0.5 * (a @ b - b @ a), atol=1e-14)


def test_log_domain_error():
    with pytest.raises(LogDomainError):
        log_principal(np.diag([-1.0, 1.0]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_log_round_trip(seed):
    rng = np.random.default_rng(seed)
    m = np.eye(4) + 0.4 * rng.normal(size=(4, 4)) / 2
    if np.any(np.linalg.eigvals(m).real <= 0.05):
        return
    l = log_principal(m)
    assert np.allclose(exp_scaling_squaring(l), m, atol=1e-10)
    assert np.allclose(l, logm(m).real, atol=1e-9)
