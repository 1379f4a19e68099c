"""Lie algebras given by structure constants.

Convention: ``[x_k, x_l] = C[m, k, l] x_m`` with the upper index first. All
indices are 0-based in code and 1-based in text and JSON.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import json

import numpy as np

from . import exact
from .errors import InputError

__all__ = [
    "StructureConstants",
    "AlgebraDescriptor",
    "JacobiReport",
    "jacobi_check",
    "center",
    "derived_series",
    "lower_central_series",
    "is_solvable",
    "split_direct_sum",
    "algebra_from_json",
    "algebra_to_json",
]


class StructureConstants:
    """Exact structure constants of an ``n``-dimensional Lie algebra.

    Parameters
    ----------
    dim : int
    entries : iterable of (mu, kappa, lambda, value), optional
        0-based indices with ``kappa < lambda``; the antisymmetric partner is
        filled in automatically.
    table : array_like, optional
        Full ``n x n x n`` table. It is stored as given, so antisymmetry is
        checked by :func:`jacobi_check` rather than enforced.
    """

    __slots__ = ("dim", "_table")

    def __init__(self, dim, entries=(), table=None):
        if not isinstance(dim, (int, np.integer)) or dim < 1:
            raise InputError(f"dimension must be a positive integer, got {dim!r}")
        self.dim = int(dim)
        if table is not None:
            arr = exact.fraction_array(table)
            if arr.shape != (dim, dim, dim):
                raise InputError(
                    f"table shape {arr.shape} does not match dim {dim}")
            self._table = arr
        else:
            arr = exact.zeros(dim, dim, dim)
            for mu, k, l, value in entries:
                if not (0 <= mu < dim and 0 <= k < dim and 0 <= l < dim):
                    raise InputError(f"index out of range: {(mu, k, l)}")
                if k == l:
                    raise InputError("diagonal entries C[m,k,k] must vanish")
                v = exact.to_fraction(value)
                arr[mu, k, l] = v
                arr[mu, l, k] = -v
            self._table = arr
        self._table.setflags(write=False)

    @property
    def table(self):
        return self._table

    def __getitem__(self, idx):
        return self._table[idx]

    def __eq__(self, other):
        return (isinstance(other, StructureConstants) and self.dim == other.dim
                and all(a == b for a, b in zip(self._table.flat, other._table.flat)))

    def __hash__(self):
        return hash((self.dim, tuple(self._table.flat)))

    def __repr__(self):
        return f"StructureConstants(dim={self.dim}, nonzero={self.nonzero()})"

    def nonzero(self):
        """List of ``(mu, kappa, lambda, value)`` with ``kappa < lambda``."""
        n = self.dim
        return [(m, k, l, self._table[m, k, l])
                for k in range(n) for l in range(k + 1, n) for m in range(n)
                if self._table[m, k, l] != 0]

    def is_abelian(self):
        return exact.is_zero(self._table)

    def as_float(self):
        return self._table.astype(float)

    def bracket(self, u, v):
        """Exact bracket of two coefficient vectors."""
        u = exact.fraction_array(u)
        v = exact.fraction_array(v)
        n = self.dim
        out = exact.zeros(n)
        for m in range(n):
            s = Fraction(0)
            for k in range(n):
                if u[k] == 0:
                    continue
                for l in range(n):
                    if v[l] != 0 and self._table[m, k, l] != 0:
                        s += self._table[m, k, l] * u[k] * v[l]
            out[m] = s
        return out

    def ad(self, k):
        """Exact matrix of ``ad x_k``: entry ``[m, l] = C[m, k, l]``."""
        return self._table[:, k, :].copy()

    def restrict(self, indices):
        """Constants of the subalgebra spanned by ``x_i, i in indices``.

        The new basis is ordered as ``indices``. Raises if the span is not
        closed under the bracket.
        """
        idx = list(indices)
        pos = {g: i for i, g in enumerate(idx)}
        entries = []
        for a, b in product(range(len(idx)), repeat=2):
            if a >= b:
                continue
            for m in range(self.dim):
                v = self._table[m, idx[a], idx[b]]
                if v == 0:
                    continue
                if m not in pos:
                    raise InputError(
                        f"basis subset {[i + 1 for i in idx]} is not a subalgebra")
                entries.append((pos[m], a, b, v))
        return StructureConstants(len(idx), entries)

    def permuted(self, order):
        """Constants in the reordered basis ``y_i = x_{order[i]}``."""
        return self.restrict(order)


@dataclass(frozen=True)
class JacobiReport:
    """Outcome of :func:`jacobi_check`.

    ``violation`` holds the first failing 0-based index tuple: three indices
    ``(mu, kappa, lambda)`` for antisymmetry, four ``(mu, kappa, lambda,
    rho)`` for the Jacobi sum. ``residual`` is the offending value.
    """

    passed: bool
    kind: str = ""
    violation: tuple = ()
    residual: Fraction = Fraction(0)

    def __bool__(self):
        return self.passed

    def describe(self):
        if self.passed:
            return "antisymmetry and Jacobi identity hold exactly"
        one_based = tuple(i + 1 for i in self.violation)
        return f"{self.kind} fails at indices {one_based} (residual {self.residual})"


def jacobi_check(constants):
    """Exact antisymmetry and Jacobi test.

    Accepts a :class:`StructureConstants` or a raw ``n x n x n`` array.
    """
    if isinstance(constants, StructureConstants):
        table = constants.table
    else:
        table = exact.fraction_array(constants)
    if table.ndim != 3 or len(set(table.shape)) != 1:
        raise InputError(f"structure constants must be n x n x n, got {table.shape}")
    n = table.shape[0]
    for m, k, l in product(range(n), repeat=3):
        if table[m, k, l] != -table[m, l, k]:
            return JacobiReport(False, "antisymmetry", (m, k, l),
                                table[m, k, l] + table[m, l, k])
    for m, k, l, r in product(range(n), repeat=4):
        s = Fraction(0)
        for v in range(n):
            s += (table[v, k, l] * table[m, v, r] + table[v, l, r] * table[m, v, k]
                  + table[v, r, k] * table[m, v, l])
        if s != 0:
            return JacobiReport(False, "jacobi", (m, k, l, r), s)
    return JacobiReport(True)


def _as_constants(c):
    if isinstance(c, AlgebraDescriptor):
        return c.constants
    if not isinstance(c, StructureConstants):
        raise InputError("expected StructureConstants or AlgebraDescriptor")
    return c


def center(constants):
    """Exact basis of the center, as Fraction coefficient vectors."""
    c = _as_constants(constants)
    n = c.dim
    # rows indexed by (mu, kappa): sum_l C[mu, kappa, l] z_l = 0
    system = c.table.reshape(n * n, n)
    return exact.exact_nullspace(system)


def _span_basis(vectors, n):
    """Row-reduced exact basis of the span of ``vectors``."""
    vecs = [exact.fraction_array(v) for v in vectors]
    vecs = [v for v in vecs if not exact.is_zero(v)]
    if not vecs:
        return []
    rows, pivots = exact.row_echelon(np.array(vecs, dtype=object))
    out = []
    for row, p in zip(rows, pivots):
        out.append(exact.fraction_array([Fraction(x, row[p]) for x in row]))
    return out


def _bracket_span(c, a, b):
    vecs = [c.bracket(u, v) for u in a for v in b]
    return _span_basis(vecs, c.dim)


def derived_series(constants):
    """Derived series as a list of exact bases, starting with the algebra.

    Stops when a term is zero (the zero term is included as an empty list)
    or when it stabilizes; a stable term is listed twice, so a perfect
    algebra gives ``[g, g]``.
    """
    c = _as_constants(constants)
    n = c.dim
    current = [exact.fraction_array([1 if i == j else 0 for i in range(n)])
               for j in range(n)]
    series = [current]
    while current:
        nxt = _bracket_span(c, current, current)
        if len(nxt) == len(current):
            series.append(nxt)
            break
        series.append(nxt)
        current = nxt
    return series


def lower_central_series(constants):
    """Lower central series g, [g, g], [g, [g, g]], ... until stable or zero.

    As in :func:`derived_series`, a stable term is listed twice.
    """
    c = _as_constants(constants)
    n = c.dim
    full = [exact.fraction_array([1 if i == j else 0 for i in range(n)])
            for j in range(n)]
    current = full
    series = [current]
    while current:
        nxt = _bracket_span(c, full, current)
        if len(nxt) == len(current):
            series.append(nxt)
            break
        series.append(nxt)
        current = nxt
    return series


def is_solvable(constants):
    return len(derived_series(constants)[-1]) == 0


def is_nilpotent(constants):
    return len(lower_central_series(constants)[-1]) == 0


def split_direct_sum(constants):
    """Finest partition of the basis into mutually commuting ideals.

    Two basis elements are linked when some structure constant involves
    both; the blocks are the connected components of that relation, which is
    the finest basis-aligned direct sum decomposition. Blocks are returned as
    sorted lists of 0-based indices, ordered by their smallest index.
    """
    c = _as_constants(constants)
    n = c.dim
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for m, k, l in product(range(n), repeat=3):
        if c.table[m, k, l] != 0:
            union(k, l)
            union(k, m)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values(), key=lambda b: b[0])


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A named algebra with its parameter values and constants."""

    name: str
    constants: StructureConstants
    parameters: dict = field(default_factory=dict)
    section: str = ""

    @property
    def dim(self):
        return self.constants.dim

    def label(self):
        if not self.parameters:
            return self.name
        ps = ", ".join(f"{k}={exact.format_fraction(v)}"
                       for k, v in self.parameters.items())
        return f"{self.name}({ps})"

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.parameters.items())),
                     self.constants))


def algebra_to_json(algebra):
    """Serialize an algebra to the JSON schema (1-based indices)."""
    if isinstance(algebra, StructureConstants):
        algebra = AlgebraDescriptor("", algebra)
    doc = {
        "dim": algebra.dim,
        "constants": [
            {"mu": m + 1, "kappa": k + 1, "lambda": l + 1,
             "value": exact.format_fraction(v)}
            for m, k, l, v in algebra.constants.nonzero()
        ],
        "name": algebra.name,
        "params": {k: exact.format_fraction(v)
                   for k, v in algebra.parameters.items()},
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def algebra_from_json(text):
    """Parse the JSON algebra schema.

    Listed entries must have ``kappa < lambda``; the antisymmetric partner is
    implied. Validity (Jacobi) is not checked here.
    """
    try:
        doc = json.loads(text) if isinstance(text, str) else dict(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    try:
        dim = int(doc["dim"])
        raw = doc.get("constants", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"missing or bad field: {exc}") from exc
    entries = []
    for item in raw:
        try:
            m, k, l = int(item["mu"]) - 1, int(item["kappa"]) - 1, int(item["lambda"]) - 1
            value = exact.to_fraction(str(item["value"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad constant entry {item!r}") from exc
        if k >= l:
            raise InputError(f"entries must have kappa < lambda, got {item!r}")
        entries.append((m, k, l, value))
    params = {k: exact.to_fraction(str(v)) for k, v in doc.get("params", {}).items()}
    return AlgebraDescriptor(doc.get("name", ""), StructureConstants(dim, entries),
                             params)
