"""Exact rational linear algebra on small dense matrices.

Matrices are numpy object arrays holding :class:`fractions.Fraction`.
Elimination runs on integer rows (fraction free, with content removal) so
intermediate entries stay small.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from .errors import InputError

__all__ = [
    "to_fraction",
    "fraction_array",
    "zeros",
    "identity",
    "unit_matrix",
    "is_zero",
    "row_echelon",
    "rank",
    "exact_nullspace",
    "solve_in_span",
    "charpoly",
    "poly_squarefree",
    "format_fraction",
]


def to_fraction(value):
    """Convert ``value`` to a Fraction.

    Strings such as ``"-3/4"`` or ``"0.25"`` and ints are exact. Floats are
    converted through their decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise InputError(f"not a finite number: {value!r}")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(f"not a rational number: {value!r}")


def fraction_array(values):
    """Return an object array of Fractions with the shape of ``values``."""
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    return out


def zeros(*shape):
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit_matrix(m, i, j, value=1):
    """Matrix unit ``value * e_{ij}`` of order ``m`` (0-based indices)."""
    out = zeros(m, m)
    out[i, j] = Fraction(value)
    return out


def is_zero(arr):
    return all(v == 0 for v in np.asarray(arr, dtype=object).flat)


def _integer_rows(matrix):
    rows = []
    for row in matrix:
        fr = [to_fraction(v) for v in row]
        den = reduce(lcm, (v.denominator for v in fr), 1)
        rows.append([int(v * den) for v in fr])
    return rows


def _primitive(row):
    g = reduce(gcd, row, 0)
    if g > 1:
        return [v // g for v in row]
    return row


def row_echelon(matrix):
    """Reduced echelon form over the integers.

    Returns ``(rows, pivots)`` where each pivot row has a nonzero entry in its
    pivot column and zeros in every other pivot column.
    """
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2:
        raise InputError("expected a 2-d array")
    rows = _integer_rows(arr)
    ncols = arr.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                a, b = piv[c], rows[i][c]
                rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], piv)])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix):
    arr = np.asarray(matrix, dtype=object)
    if arr.size == 0:
        return 0
    return len(row_echelon(arr)[1])


def exact_nullspace(matrix):
    """Basis of the right kernel of ``matrix`` as a list of Fraction vectors.

    Each vector has a 1 in its free coordinate, so the basis is canonical for
    a given column order.
    """
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2:
        raise InputError("expected a 2-d array")
    ncols = arr.shape[1]
    if arr.shape[0] == 0:
        rows, pivots = [], []
    else:
        rows, pivots = row_echelon(arr)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = Fraction(-row[f], row[p])
        basis.append(v)
    return basis


def solve_in_span(columns, target):
    """Exact coefficients ``c`` with ``sum c_i columns[i] == target``.

    Returns ``None`` when ``target`` is outside the span. ``columns`` must be
    linearly independent.
    """
    k = len(columns)
    target = np.asarray(target, dtype=object).ravel()
    if k == 0:
        return [] if is_zero(target) else None
    aug = np.empty((target.size, k + 1), dtype=object)
    for i, col in enumerate(columns):
        aug[:, i] = np.asarray(col, dtype=object).ravel()
    aug[:, k] = target
    rows, pivots = row_echelon(aug)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, p in zip(rows, pivots):
        coeffs[p] = Fraction(row[k], row[p])
    return coeffs


def charpoly(matrix):
    """Characteristic polynomial det(t I - M) of a rational matrix.

    Faddeev-LeVerrier recursion over Python integers after clearing
    denominators; every division in the recursion is exact. Coefficients are
    returned lowest degree first and the polynomial is monic.
    """
    arr = fraction_array(matrix)
    n = arr.shape[0]
    if arr.shape != (n, n):
        raise InputError("charpoly needs a square matrix")
    den = reduce(lcm, (v.denominator for v in arr.flat), 1)
    b = np.empty((n, n), dtype=object)
    for idx in np.ndindex(n, n):
        b[idx] = int(arr[idx] * den)
    eye = np.empty((n, n), dtype=object)
    for idx in np.ndindex(n, n):
        eye[idx] = 1 if idx[0] == idx[1] else 0
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = np.empty((n, n), dtype=object)
    m.fill(0)
    for k in range(1, n + 1):
        m = b.dot(m) + coeffs[n - k + 1] * eye
        tr = int(np.trace(b.dot(m)))
        if tr % k:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        coeffs[n - k] = -tr // k
    return [Fraction(c, den ** (n - k)) for k, c in enumerate(coeffs)]


# -- univariate polynomials over Q, lowest degree first -------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _monic(p):
    p = _trim(p)
    return [c / p[-1] for c in p] if p else p


def _polydiff(p):
    return _trim([k * p[k] for k in range(1, len(p))])


def _polydivmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(_trim(r)) >= len(b):
        r = _trim(r)
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] -= c * bc
        r = _trim(r)
        if not r:
            break
    return _trim(q), _trim(r)


def _polygcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _polydivmod(a, b)[1]
    return _monic(a)


def poly_squarefree(p):
    """Yun's squarefree decomposition of a polynomial over Q.

    Returns a list of ``(factor, multiplicity)`` with monic, squarefree,
    pairwise coprime factors of positive degree whose product (with
    multiplicities) is the monic version of ``p``.
    """
    p = _monic([to_fraction(c) for c in p])
    if len(p) <= 1:
        return []
    out = []
    dp = _polydiff(p)
    a = _polygcd(p, dp)
    b = _polydivmod(p, a)[0]
    c = _polydivmod(dp, a)[0]
    d = _trim([ci - bi for ci, bi in _zip_pad(c, _polydiff(b))])
    i = 1
    while len(b) > 1:
        a = _polygcd(b, d)
        b = _polydivmod(b, a)[0]
        c = _polydivmod(d, a)[0]
        if len(a) > 1:
            out.append((_monic(a), i))
        d = _trim([ci - bi for ci, bi in _zip_pad(c, _polydiff(b))])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def format_fraction(value):
    """Render a Fraction as ``"p"`` or ``"p/q"``."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
