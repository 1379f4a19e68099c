"""Eigenvalues, matrix exponentials and the principal logarithm.

Two exponentials are provided on purpose: a Taylor based scaling and
squaring method and a confluent (Hermite) interpolation method driven by an
exact characteristic polynomial. They share no code beyond numpy, so their
agreement is a meaningful check.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import exact
from .config import DEFAULT
from .errors import InputError, InterpolationError, LogDomainError, NumericFailure

__all__ = [
    "Spectrum",
    "eigenvalues",
    "durand_kerner",
    "exp_scaling_squaring",
    "exp_lagrange_sylvester",
    "lagrange_sylvester_coefficients",
    "log_principal",
    "sqrt_denman_beavers",
    "format_matrix",
]


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with algebraic multiplicities."""

    eigenvalues: tuple
    multiplicities: tuple

    @property
    def order(self):
        return sum(self.multiplicities)

    def nodes(self):
        """Eigenvalues repeated by multiplicity."""
        return [lam for lam, m in zip(self.eigenvalues, self.multiplicities)
                for _ in range(m)]

    def __iter__(self):
        return iter(zip(self.eigenvalues, self.multiplicities))


def _poly_eval(coeffs, z):
    """Horner evaluation; ``coeffs`` lowest degree first."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def durand_kerner(coeffs, tol=1e-13, max_iter=500, strict=True):
    """All roots of a polynomial by simultaneous (Weierstrass) iteration.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients, lowest degree first; the leading one must be nonzero.

    Returns
    -------
    ndarray of complex

    Raises
    ------
    NumericFailure
        If the iteration does not settle within ``max_iter`` sweeps and
        ``strict`` is set; otherwise the last iterate is returned.
    """
    c = np.asarray(coeffs, dtype=complex)
    c = c / c[-1]
    n = len(c) - 1
    if n < 1:
        return np.array([], dtype=complex)
    if n == 1:
        return np.array([-c[0]])
    radius = 1 + max(abs(c[:-1]))
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(max_iter):
        delta = np.empty(n, dtype=complex)
        for i in range(n):
            denom = np.prod([z[i] - z[j] for j in range(n) if j != i])
            if denom == 0:
                denom = 1e-300
            delta[i] = _poly_eval(c, z[i]) / denom
        z = z - delta
        if np.all(abs(delta) <= tol * (1 + abs(z))):
            return z
    if not strict:
        return z
    raise NumericFailure(f"Durand-Kerner did not converge for degree {n}")


def _polish(coeffs, z, steps=3):
    c = np.asarray(coeffs, dtype=complex)
    dc = np.array([k * c[k] for k in range(1, len(c))], dtype=complex)
    for _ in range(steps):
        d = _poly_eval(dc, z)
        if d == 0:
            break
        z = z - _poly_eval(c, z) / d
    return z


def _factor_roots(factor, config):
    coeffs = [complex(float(v)) for v in factor]
    deg = len(coeffs) - 1
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    if deg == 2:
        a, b, cc = coeffs[2], coeffs[1], coeffs[0]
        disc = np.sqrt(b * b - 4 * a * cc + 0j)
        q = -0.5 * (b + (disc if (b.conjugate() * disc).real >= 0 else -disc))
        r1 = q / a
        r2 = cc / q if q != 0 else -b / a - r1
        roots = [r1, r2]
    else:
        roots = list(durand_kerner(coeffs, max_iter=config.root_max_iter, strict=False))
    out = []
    for z in roots:
        z = _polish(coeffs, z)
        scale = sum(abs(c) * abs(z) ** k for k, c in enumerate(coeffs))
        if abs(_poly_eval(coeffs, z)) > config.root_tol * max(scale, 1.0) * 10:
            raise NumericFailure(f"root {z} of a degree {deg} factor failed the residual check")
        out.append(z)
    return out


def eigenvalues(matrix, config=DEFAULT):
    """Spectrum of a small real or rational matrix.

    The matrix is lifted to exact rationals (floats convert exactly), the
    characteristic polynomial is formed exactly and split into squarefree
    parts, which gives exact multiplicities. Roots of each part are found
    numerically; roots closer than ``cluster_tol * (1 + max|lambda|)`` are
    then merged.
    """
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError("eigenvalues need a square matrix")
    if arr.dtype == object:
        lifted = exact.fraction_array(arr)
    else:
        if np.iscomplexobj(arr):
            raise InputError("complex matrices are not supported")
        if not np.all(np.isfinite(arr)):
            raise InputError("matrix has non-finite entries")
        lifted = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            lifted[idx] = Fraction(float(arr[idx]))
    n = arr.shape[0]
    poly = exact.charpoly(lifted)
    roots, mults = [], []
    for factor, m in exact.poly_squarefree(poly):
        for z in _factor_roots(factor, config):
            roots.append(complex(z))
            mults.append(m)
    if sum(mults) != n:
        raise NumericFailure("multiplicities do not add up to the order")
    # snap conjugate pairs and real roots of a real polynomial
    snap = lambda v, z: 0.0 if abs(v) <= 1e-14 * (1 + abs(z)) else v
    roots = [complex(snap(z.real, z), snap(z.imag, z)) for z in roots]
    scale = 1 + max((abs(z) for z in roots), default=0.0)
    merged_roots, merged_mults = [], []
    for z, m in zip(roots, mults):
        for i, w in enumerate(merged_roots):
            if abs(z - w) < config.cluster_tol * scale:
                tot = merged_mults[i] + m
                merged_roots[i] = (w * merged_mults[i] + z * m) / tot
                merged_mults[i] = tot
                break
        else:
            merged_roots.append(z)
            merged_mults.append(m)
    order = sorted(range(len(merged_roots)),
                   key=lambda i: (round(merged_roots[i].real, 12),
                                  round(merged_roots[i].imag, 12)))
    return Spectrum(tuple(merged_roots[i] for i in order),
                    tuple(merged_mults[i] for i in order))


# -- exponentials -----------------------------------------------------------

def _norm1(stack):
    return np.max(np.sum(np.abs(stack), axis=-2), axis=-1)


def exp_scaling_squaring(matrix, config=DEFAULT):
    """Matrix exponential by scaling, Taylor summation and squaring.

    Accepts a single matrix or a stack of shape ``(..., m, m)``.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InputError("expected square matrices")
    if not np.all(np.isfinite(a)):
        raise NumericFailure("non-finite input to the exponential")
    norm = float(np.max(_norm1(a))) if a.size else 0.0
    s = 0
    while norm / 2 ** s >= 0.5:
        s += 1
    x = a / 2 ** s
    eye = np.broadcast_to(np.eye(a.shape[-1]), a.shape)
    total = eye.copy()
    term = eye.copy()
    k = 0
    while True:
        k += 1
        term = term @ x / k
        total = total + term
        if np.max(np.abs(term), initial=0.0) < config.taylor_tol or k > 200:
            break
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            total = total @ total
    if not np.all(np.isfinite(total)):
        raise NumericFailure("overflow in the matrix exponential")
    return total


def _divided_differences_exp(nodes, tol=1e-18):
    """Newton coefficients of the Hermite interpolant of ``exp``.

    Uses ``exp[z_0..z_k] = sum_j h_j(z_0..z_k) / (j + k)!`` with complete
    homogeneous symmetric polynomials ``h_j``, which needs no division by
    node differences and so handles repeated nodes directly.
    """
    n = len(nodes)
    radius = max((abs(z) for z in nodes), default=0.0)
    jmax = 40
    while radius ** jmax / factorial(jmax) > tol and jmax < 400:
        jmax += 20
    jmax += n + 10
    h = np.zeros(jmax + 1, dtype=complex)
    h[0] = 1.0
    out = []
    for k, z in enumerate(nodes):
        if k == 0:
            for j in range(1, jmax + 1):
                h[j] = h[j - 1] * z
        else:
            for j in range(1, jmax + 1):
                h[j] = h[j] + z * h[j - 1]
        total = 0j
        for j in range(jmax + 1 - k):
            total += h[j] / factorial(j + k)
        out.append(total)
    return out


def exp_lagrange_sylvester(matrix, spectrum=None, config=DEFAULT):
    """Matrix exponential through its Lagrange-Sylvester polynomial.

    The interpolant ``r`` matches ``exp`` and its derivatives up to order
    ``m_i - 1`` at every eigenvalue ``lambda_i``; then ``exp(M) = r(M)``.
    The nodes are shifted by ``trace(M)/n`` for accuracy.

    Raises
    ------
    InterpolationError
        When the interpolant is not finite or not real for a real input;
        use :func:`exp_scaling_squaring` instead in that case.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InputError("expected a square matrix")
    spec = eigenvalues(a, config) if spectrum is None else spectrum
    if spec.order != n:
        raise InputError("spectrum order does not match the matrix")
    mu = np.trace(a) / n
    nodes = [z - mu for z in spec.nodes()]
    coeffs = _divided_differences_exp(nodes)
    shifted = a - mu * np.eye(n)
    result = np.zeros((n, n), dtype=complex)
    basis = np.eye(n, dtype=complex)
    for k, d in enumerate(coeffs):
        result = result + d * basis
        basis = basis @ (shifted - nodes[k] * np.eye(n))
    result = np.exp(mu) * result
    if not np.all(np.isfinite(result)):
        raise InterpolationError(
            "interpolation polynomial is not finite; use exp_scaling_squaring")
    scale = max(1.0, float(np.max(np.abs(result))))
    if np.max(np.abs(result.imag)) > config.imag_tol * scale:
        raise InterpolationError(
            "interpolated exponential of a real matrix is not real (multiplicities "
            "mis-detected?); use exp_scaling_squaring")
    return result.real


def lagrange_sylvester_coefficients(spectrum):
    """Monomial coefficients ``c_k`` of ``r(t) = sum_k c_k t^k``.

    ``r`` is the Hermite interpolant of ``exp`` on the spectrum, so
    ``c_k`` are the coefficients in ``exp(M) = sum_k c_k M^k``.
    """
    nodes = spectrum.nodes()
    n = len(nodes)
    mu = sum(nodes) / n if n else 0.0
    d = _divided_differences_exp([z - mu for z in nodes])
    poly = np.zeros(n, dtype=complex)
    basis = np.zeros(n, dtype=complex)
    basis[0] = 1.0
    for k in range(n):
        poly = poly + d[k] * basis
        # basis *= (t - nodes[k])
        nb = np.zeros(n, dtype=complex)
        nb[1:] = basis[:-1]
        nb = nb - nodes[k] * basis
        basis = nb
    return np.exp(mu) * poly


# -- logarithm --------------------------------------------------------------

def sqrt_denman_beavers(matrix, config=DEFAULT):
    """Principal square root(s) by the Denman-Beavers iteration."""
    y = np.array(matrix, dtype=float)
    z = np.broadcast_to(np.eye(y.shape[-1]), y.shape).copy()
    for _ in range(config.sqrt_max_iter):
        try:
            yi = np.linalg.inv(y)
            zi = np.linalg.inv(z)
        except np.linalg.LinAlgError:
            raise LogDomainError(
                "singular iterate in the square root; use smaller coordinates") from None
        y_new = 0.5 * (y + zi)
        z_new = 0.5 * (z + yi)
        change = np.max(np.abs(y_new - y))
        y, z = y_new, z_new
        if not np.all(np.isfinite(y)):
            break
        if change <= 1e-15 * max(1.0, float(np.max(np.abs(y)))):
            return y
    raise LogDomainError("square root iteration did not converge; use smaller coordinates")


def log_principal(matrix, config=DEFAULT):
    """Principal matrix logarithm by inverse scaling and squaring.

    Accepts a single matrix or a stack of shape ``(..., m, m)``.

    Raises
    ------
    LogDomainError
        When an eigenvalue lies on the closed negative real axis or the
        square root iteration fails.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InputError("expected square matrices")
    if not np.all(np.isfinite(a)):
        raise LogDomainError("non-finite input to the logarithm")
    ev = np.linalg.eigvals(a)
    bad = (np.abs(ev.imag) <= 1e-12 * np.maximum(1.0, np.abs(ev))) & (ev.real <= 1e-14)
    if np.any(bad):
        raise LogDomainError(
            "an eigenvalue lies on the closed negative real axis; use smaller coordinates")
    eye = np.broadcast_to(np.eye(a.shape[-1]), a.shape)
    x = a
    s = 0
    while np.max(_norm1(x - eye)) >= 0.25:
        x = sqrt_denman_beavers(x, config)
        s += 1
        if s > 60:
            raise LogDomainError("too many square roots; use smaller coordinates")
    e = x - eye
    total = np.zeros_like(e)
    power = eye.copy()
    k = 0
    while True:
        k += 1
        power = power @ e
        term = power / k
        total = total + term if k % 2 else total - term
        if np.max(np.abs(term), initial=0.0) < config.taylor_tol or k > 400:
            break
    return total * 2 ** s


def format_matrix(m, precision=6):
    """Row-major text rendering of a numeric or exact matrix."""
    arr = np.asarray(m)
    rows = []
    for row in arr:
        if arr.dtype == object:
            rows.append("  ".join(exact.format_fraction(v) for v in row))
        else:
            rows.append("  ".join(f"{v: .{precision}g}" for v in row))
    return "\n".join(rows)
