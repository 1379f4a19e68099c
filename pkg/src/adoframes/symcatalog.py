"""Exact checks of the closed-form frame tables.

Every table row is parsed into expressions, parameters are substituted from
the catalog descriptor, and the bracket, duality and structure equations are
tested by exact differentiation followed by seeded random evaluation.
"""

from dataclasses import dataclass, field, asdict, replace
from fractions import Fraction

import numpy as np

from . import symbolic as sym
from .catalog import catalog_lookup, resolve_name
from .config import DEFAULT
from .errors import InputError, ParameterRangeError
from .frames_tables import (A410_MATRIX, A410_THETA, COORDINATES, frame_table)
from .matfunc import exp_scaling_squaring

__all__ = [
    "SymbolicFrame",
    "SuiteResult",
    "CatalogReport",
    "symbolic_frame",
    "field_bracket",
    "verify_catalog_entry",
    "verify_a410_closed_form",
    "A410_INTERTWINER",
    "compare_with_pipeline",
    "flip_sign",
    "SUITES",
]

SUITES = ("xi brackets", "eta brackets", "xi-eta commute", "duality", "structure equation")


@dataclass(frozen=True, eq=False)
class SymbolicFrame:
    """Parsed frames of one catalog entry.

    ``xi[l][t]`` and ``eta[l][t]`` are vector field components, ``sigma[a][m]``
    are 1-form components; all are :class:`~adoframes.symbolic.Expr`.
    """

    algebra: object
    xi: tuple
    eta: tuple
    sigma: tuple
    box: dict
    coordinates: tuple
    corrections: tuple = ()
    coordinate_map: tuple = None

    @property
    def dim(self):
        return self.algebra.dim

    def evaluate(self, which, point):
        """Numeric ``(n, n)`` array of ``xi``, ``eta`` or ``sigma`` at a point."""
        env = dict(zip(self.coordinates, np.asarray(point, dtype=float)))
        rows = getattr(self, which)
        return np.array([[float(sym.evaluate(e, env)) for e in row] for row in rows])

    def render(self, which):
        return [[sym.to_prefix(e) for e in row] for row in getattr(self, which)]


def _parse_row(text, coords, params):
    comps = {c: sym.ZERO for c in coords}
    for part in text.split("|"):
        name, _, expr = part.partition("=")
        name = name.strip()
        if name not in comps:
            raise InputError(f"unknown coordinate {name!r} in {text!r}")
        comps[name] = sym.substitute(sym.parse(expr), params)
    return tuple(comps[c] for c in coords)


def symbolic_frame(name, params=None, algebra=None):
    """Build the :class:`SymbolicFrame` of a catalog entry."""
    if algebra is None:
        algebra = catalog_lookup(name, params)
    key = resolve_name(algebra.name or name)[0].key
    table = frame_table(key)
    n = algebra.dim
    coords = COORDINATES[:n]
    values = {k: sym.Const(Fraction(v)) for k, v in algebra.parameters.items()}
    parts = {}
    for which in ("xi", "eta", "sigma"):
        rows = getattr(table, which)
        if len(rows) != n:
            raise InputError(f"{key}: {which} has {len(rows)} rows, expected {n}")
        parts[which] = tuple(_parse_row(r, coords, values) for r in rows)
    box = {c: (-1.0, 1.0) for c in coords}
    box.update(table.box)
    return SymbolicFrame(algebra, parts["xi"], parts["eta"], parts["sigma"], box,
                         coords, table.corrections,
                         tuple(A410_THETA) if key == "A4,10" else None)


def field_bracket(X, Y, coords):
    """``[X, Y]^t = X^l d_l Y^t - Y^l d_l X^t`` as exact expressions."""
    out = []
    for t in range(len(coords)):
        terms = []
        for l, c in enumerate(coords):
            terms.append(sym.mul(X[l], sym.differentiate(Y[t], c)))
            terms.append(sym.mul(sym.const(-1), Y[l], sym.differentiate(X[t], c)))
        out.append(sym.add(*terms))
    return tuple(out)


def _combination(C, k, l, fields, sign=1):
    n = len(fields)
    return tuple(
        sym.add(*[sym.mul(sym.Const(sign * C[m, k, l]), fields[m][t])
                  for m in range(n) if C[m, k, l] != 0])
        for t in range(n))


@dataclass
class SuiteResult:
    name: str
    passed: bool
    comparisons: int
    witness: dict = None

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  witness={self.witness}"
        return f"{flag}  {self.name:<20s} comparisons={self.comparisons}{extra}"


@dataclass
class CatalogReport:
    algebra: str
    suites: list = field(default_factory=list)
    corrections: tuple = ()

    @property
    def passed(self):
        return all(s.passed for s in self.suites)

    def suite(self, name):
        for s in self.suites:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self):
        return {"algebra": self.algebra, "passed": self.passed,
                "suites": [asdict(s) for s in self.suites],
                "corrections": list(self.corrections)}


class _Suite:
    def __init__(self, name, frame, config):
        self.result = SuiteResult(name, True, 0)
        self.box = frame.box
        self.config = config

    def compare(self, lhs, rhs, label):
        self.result.comparisons += 1
        if not self.result.passed:
            return
        ok, witness = sym.expr_equal(lhs, rhs, self.box, trials=self.config.trials,
                                     tol=self.config.expr_tol, seed=self.config.seed,
                                     resample_cap=self.config.resample_cap)
        if not ok:
            self.result.passed = False
            self.result.witness = dict(witness, component=label)


def verify_catalog_entry(name, params=None, config=DEFAULT, frame=None):
    """Run the five exact suites on a catalog entry's tables.

    ``frame`` may be passed to check a modified :class:`SymbolicFrame`.
    """
    if frame is None:
        frame = symbolic_frame(name, params)
    C = frame.algebra.constants.table
    n, coords = frame.dim, frame.coordinates
    xi, eta, sigma = frame.xi, frame.eta, frame.sigma
    report = CatalogReport(frame.algebra.label(), corrections=frame.corrections)

    s1 = _Suite(SUITES[0], frame, config)
    s2 = _Suite(SUITES[1], frame, config)
    s3 = _Suite(SUITES[2], frame, config)
    for k in range(n):
        for l in range(n):
            if k < l:
                bx = field_bracket(xi[k], xi[l], coords)
                be = field_bracket(eta[k], eta[l], coords)
                cx = _combination(C, k, l, xi)
                ce = _combination(C, k, l, eta, sign=-1)
                for t in range(n):
                    s1.compare(bx[t], cx[t], f"[xi{k + 1},xi{l + 1}]^{coords[t]}")
                    s2.compare(be[t], ce[t], f"[eta{k + 1},eta{l + 1}]^{coords[t]}")
            bxe = field_bracket(xi[k], eta[l], coords)
            for t in range(n):
                s3.compare(bxe[t], sym.ZERO, f"[xi{k + 1},eta{l + 1}]^{coords[t]}")

    s4 = _Suite(SUITES[3], frame, config)
    for k in range(n):
        for l in range(n):
            pairing = sym.add(*[sym.mul(eta[k][t], sigma[l][t]) for t in range(n)])
            s4.compare(pairing, sym.ONE if k == l else sym.ZERO,
                       f"<eta{k + 1},sigma{l + 1}>")

    s5 = _Suite(SUITES[4], frame, config)
    for r in range(n):
        for m in range(n):
            for v in range(m + 1, n):
                lhs = sym.add(sym.differentiate(sigma[r][v], coords[m]),
                              sym.mul(sym.const(-1),
                                      sym.differentiate(sigma[r][m], coords[v])))
                rhs = sym.add(*[
                    sym.mul(sym.Const(C[r, a, t]), sigma[a][m], sigma[t][v])
                    for a in range(n) for t in range(n) if C[r, a, t] != 0])
                s5.compare(lhs, rhs, f"d sigma{r + 1} ({coords[m]},{coords[v]})")

    report.suites = [s.result for s in (s1, s2, s3, s4, s5)]
    return report


def flip_sign(frame, which, index, component=None):
    """Copy of ``frame`` with a sign flipped (fault injection).

    With ``component=None`` the whole field ``index`` is negated; otherwise
    only that coordinate component of it.
    """
    rows = list(getattr(frame, which))
    rows[index] = tuple(
        sym.mul(sym.const(-1), e) if component is None or c == component else e
        for c, e in enumerate(rows[index]))
    return replace(frame, **{which: tuple(rows)})


# Change of basis of the six dimensional representation space that carries
# exp(theta . Omega) to the printed group matrix: the fifth basis vector is
# negated and the sixth picks up minus the second.
A410_INTERTWINER = np.array([
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -1, 0],
    [0, -1, 0, 0, 0, 1],
], dtype=float)


@dataclass
class ClosedFormReport:
    samples: int
    raw_deviation: float
    intertwined_deviation: float
    rejected: int
    tol: float
    points: list = field(default_factory=list)

    @property
    def passed(self):
        return self.intertwined_deviation < self.tol

    @property
    def raw_passed(self):
        return self.raw_deviation < self.tol

    def to_dict(self):
        d = asdict(self)
        d.update(passed=self.passed, raw_passed=self.raw_passed)
        return d


def verify_a410_closed_form(rep, config=DEFAULT, samples=10, tol=1e-9):
    """Compare ``exp(theta(a) . Omega)`` with the closed-form group matrix.

    Draws ``a`` with ``a1..a3`` in ``[-1, 1]`` and ``0.1 < |a4| < 2``; points
    where ``sin(a4 / 2)`` is tiny are rejected. Both the direct deviation and
    the deviation after conjugation by :data:`A410_INTERTWINER` are reported.
    """
    if rep.dim != 4 or rep.rep_dim != 6:
        raise InputError("expected the six dimensional A4,10 representation")
    rng = np.random.default_rng(config.seed)
    theta_expr = [sym.parse(t) for t in A410_THETA]
    matrix_expr = [[sym.parse(e) for e in row] for row in A410_MATRIX]
    omega = rep.numeric()
    P = A410_INTERTWINER
    P_inv = np.linalg.inv(P)
    raw = conj = 0.0
    rejected = 0
    points = []
    while len(points) < samples:
        if rejected > config.resample_cap:
            raise ParameterRangeError("too many rejected sample points")
        a = rng.uniform(-1, 1, size=4)
        a[3] = rng.choice([-1, 1]) * rng.uniform(0.1, 2.0)
        if abs(np.sin(a[3] / 2)) < 1e-3:
            rejected += 1
            continue
        env = {f"a{i + 1}": a[i] for i in range(4)}
        theta = np.array([sym.evaluate(e, env) for e in theta_expr], dtype=float)
        computed = exp_scaling_squaring(np.einsum("k,kij->ij", theta, omega), config)
        printed = np.array([[float(sym.evaluate(e, env)) for e in row]
                            for row in matrix_expr])
        raw = max(raw, float(np.max(np.abs(computed - printed))))
        conj = max(conj, float(np.max(np.abs(P @ computed @ P_inv - printed))))
        points.append(a.tolist())
    return ClosedFormReport(samples, raw, conj, rejected, tol, points)


def compare_with_pipeline(name, params=None, config=DEFAULT, count=5, algebra=None):
    """Compare the numeric and the tabulated frames where both charts agree.

    Along coordinates complementary to the derived algebra both charts are
    additive, so those components of ``xi``, ``eta`` and ``sigma`` are the
    identity in both. Returns the largest deviation from the identity over
    both sources, or ``None`` when the derived algebra is not spanned by
    basis vectors.
    """
    from .ado import build_representation
    from .geometry import group_of, sample_points

    frame = symbolic_frame(name, params, algebra=algebra)
    C = frame.algebra.constants.table
    n = frame.dim
    derived = {m for m in range(n) for k in range(n) for l in range(n) if C[m, k, l] != 0}
    # the derived algebra is basis aligned when its rank equals the index count
    span = np.array([[float(C[m, k, l]) for m in range(n)]
                     for k in range(n) for l in range(n)])
    if np.linalg.matrix_rank(span) != len(derived):
        return None
    comp = [t for t in range(n) if t not in derived]
    if not comp:
        return 0.0
    rep = build_representation(frame.algebra, config)
    pts = sample_points(n, count, config.seed)
    for c, (lo, hi) in frame.box.items():
        i = frame.coordinates.index(c)
        pts[:, i] = np.clip(pts[:, i], lo, hi)
    xi, eta, sigma, _ = group_of(rep, config).frames(pts)
    eye = np.eye(n)
    worst = 0.0
    for p, x in enumerate(pts):
        sources = [(xi[p], eta[p], sigma[p]),
                   tuple(frame.evaluate(w, x) for w in ("xi", "eta", "sigma"))]
        for X, E, S in sources:
            worst = max(worst,
                        float(np.max(np.abs(X[:, comp] - eye[:, comp]))),
                        float(np.max(np.abs(E[:, comp] - eye[:, comp]))),
                        float(np.max(np.abs(S[comp, :] - eye[comp, :]))))
    return worst
