"""Group composition, translation frames and their identities.

Coordinates are canonical coordinates of the first kind, ``g = exp(a^k O_k)``.
The composition ``phi(a, b)`` is read off from ``log(exp(a.O) exp(b.O))`` by
projecting onto the span of the representation matrices. Frames are
derivatives of ``phi`` at the identity, computed by central differences with
one Richardson step; derivatives of frames use a second, outer difference
stencil.
"""

from dataclasses import dataclass, field, asdict
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact
from .config import DEFAULT
from .errors import (ChartBoundaryError, CoordinatesTooLargeError, InputError)
from .matfunc import exp_scaling_squaring, log_principal

__all__ = [
    "GroupElement",
    "FrameSample",
    "Group",
    "group_of",
    "compose",
    "killing_frame",
    "invariant_frame",
    "coframe",
    "frame_sample",
    "recover_structure_constants",
    "verify_identities",
    "invariant_metric_check",
    "bch_compose",
    "sample_points",
    "CheckResult",
    "IdentityReport",
]


def sample_points(n, count, seed, radius=1.0):
    """Seeded points drawn uniformly from the ball of the given radius."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(count, n))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    r = radius * rng.uniform(size=(count, 1)) ** (1.0 / n)
    return v * r


@dataclass(frozen=True, eq=False)
class GroupElement:
    """``exp(a^k O_k)`` together with its coordinates."""

    coordinates: np.ndarray
    matrix: np.ndarray
    rep: object

    def recompute(self):
        return exp_scaling_squaring(np.einsum("k,kij->ij", self.coordinates,
                                              self.rep.numeric()))


@dataclass(frozen=True, eq=False)
class FrameSample:
    """Frames at one point.

    ``xi[l, t]`` and ``eta[l, t]`` are the ``t``-th components of the
    ``l``-th vector field, ``sigma[a, m]`` is the ``m``-th component of the
    ``a``-th 1-form and ``cmat`` satisfies ``eta = cmat @ xi``.
    """

    point: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    sigma: np.ndarray
    cmat: np.ndarray


@dataclass
class CheckResult:
    name: str
    residual: float
    threshold: float
    passed: bool
    samples: int
    step: float = 0.0
    detail: str = ""

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"{flag}  {self.name:<34s} residual={self.residual:.3e} "
                f"threshold={self.threshold:.1e} samples={self.samples}")


@dataclass
class IdentityReport:
    algebra: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, residual, threshold, samples, step=0.0, detail="",
            passed=None):
        residual = float(residual)
        if passed is None:
            passed = bool(residual < threshold)
        self.checks.append(CheckResult(name, residual, threshold, passed,
                                       samples, step, detail))

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"algebra": self.algebra, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks]}


class Group:
    """Numerical group structure generated by a representation."""

    def __init__(self, rep, config=DEFAULT):
        self.rep = rep
        self.config = config
        self.n = rep.dim
        self.omega = rep.numeric()
        m = rep.rep_dim
        flat = [np.asarray(o, dtype=object).ravel() for o in rep.matrices]
        gram = exact.zeros(self.n, self.n)
        for i in range(self.n):
            for j in range(self.n):
                gram[i, j] = sum((a * b for a, b in zip(flat[i], flat[j])), Fraction(0))
        # exact inverse of the Gram matrix through exact solves
        inv = exact.zeros(self.n, self.n)
        cols = [gram[:, j] for j in range(self.n)]
        for i in range(self.n):
            e = exact.zeros(self.n)
            e[i] = Fraction(1)
            coeffs = exact.solve_in_span(cols, e)
            if coeffs is None:
                raise InputError("representation matrices are linearly dependent")
            inv[:, i] = coeffs
        self.gram = gram
        self._proj = inv.astype(float) @ self.omega.reshape(self.n, m * m)
        self._omega_flat = self.omega.reshape(self.n, m * m)
        self.constants = rep.algebra.constants.as_float()

    # -- elements and composition -------------------------------------------
    def matrix(self, coords):
        coords = np.asarray(coords, dtype=float)
        return exp_scaling_squaring(np.einsum("...k,kij->...ij", coords, self.omega),
                                    self.config)

    def element(self, coords):
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.n,):
            raise InputError(f"expected {self.n} coordinates")
        if np.linalg.norm(coords) > self.config.neighborhood:
            raise CoordinatesTooLargeError(
                f"coordinates {coords} lie outside the identity neighborhood "
                f"|a| <= {self.config.neighborhood}")
        return GroupElement(coords, self.matrix(coords), self.rep)

    def coordinates_of(self, matrix):
        """Coordinates of a group matrix and the projection residual."""
        log = log_principal(matrix, self.config)
        m = log.shape[-1]
        flat = log.reshape(log.shape[:-2] + (m * m,))
        phi = flat @ self._proj.T
        resid = np.max(np.abs(flat - phi @ self._omega_flat), axis=-1)
        return phi, resid

    def compose_batch(self, a, b):
        """``phi(a, b)`` for stacked coordinates, with projection residuals."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        prod = self.matrix(a) @ self.matrix(b)
        return self.coordinates_of(prod)

    def compose(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != (self.n,) or b.shape != (self.n,):
            raise InputError(f"expected two vectors of length {self.n}")
        phi, resid = self.compose_batch(a, b)
        resid = float(resid)
        if resid > self.config.projection_tol:
            raise CoordinatesTooLargeError(
                f"log of the product leaves the span of the representation "
                f"(residual {resid:.2e}); use smaller coordinates")
        return phi, resid

    def inverse(self, a):
        """Coordinates of the inverse element (equal to ``-a`` here)."""
        phi, _ = self.coordinates_of(np.linalg.inv(self.matrix(a)))
        return phi

    # -- frames ---------------------------------------------------------------
    def _frames_raw(self, points, step=None):
        """``xi`` and ``eta`` at each point, shapes ``(P, n, n)``."""
        h = self.config.fd_step if step is None else step
        pts = np.asarray(points, dtype=float).reshape(-1, self.n)
        n = self.n
        eye = np.eye(n)
        offsets = np.concatenate([h * eye, -h * eye, 0.5 * h * eye, -0.5 * h * eye])
        P, k = len(pts), len(offsets)
        x_rep = np.repeat(pts[:, None, :], k, axis=1)
        beta = np.broadcast_to(offsets, (P, k, n))
        a = np.concatenate([x_rep, beta], axis=1)
        b = np.concatenate([beta, x_rep], axis=1)
        phi, resid = self.compose_batch(a, b)
        if np.max(resid, initial=0.0) > self.config.projection_tol:
            raise CoordinatesTooLargeError(
                f"projection residual {np.max(resid):.2e} while differentiating; "
                "use points closer to the identity")
        out = []
        for part in (phi[:, :k], phi[:, k:]):
            plus, minus = part[:, :n], part[:, n:2 * n]
            hplus, hminus = part[:, 2 * n:3 * n], part[:, 3 * n:]
            d_full = (plus - minus) / (2 * h)
            d_half = (hplus - hminus) / h
            out.append((4 * d_half - d_full) / 3)
        return out[0], out[1]

    def frames(self, points):
        """Return ``(xi, eta, sigma, cmat)`` arrays of shape ``(P, n, n)``."""
        xi, eta = self._frames_raw(points)
        sigma = _coframe_from_eta(eta)
        cmat = eta @ np.linalg.inv(xi)
        return xi, eta, sigma, cmat

    def bundle(self, points, outer=None, richardson=True):
        """Frames and their coordinate derivatives at ``points``.

        Returns a :class:`FrameBundle`. With ``richardson=False`` plain central
        differences are used for the outer derivatives.
        """
        H = self.config.outer_step if outer is None else outer
        pts = np.asarray(points, dtype=float).reshape(-1, self.n)
        n, P = self.n, len(pts)
        eye = np.eye(n)
        offs = np.stack([H * eye, -H * eye, 0.5 * H * eye, -0.5 * H * eye], axis=1)
        stencil = pts[:, None, None, :] + offs[None]          # (P, n, 4, n)
        allpts = np.concatenate([pts, stencil.reshape(-1, n)])
        xi, eta = self._frames_raw(allpts)
        sigma = _coframe_from_eta(eta)
        return FrameBundle(pts, H, xi[:P], eta[:P], sigma[:P],
                           xi[P:].reshape(P, n, 4, n, n),
                           eta[P:].reshape(P, n, 4, n, n),
                           sigma[P:].reshape(P, n, 4, n, n), richardson)


def _coframe_from_eta(eta):
    det = np.linalg.det(eta)
    if np.any(np.abs(det) < 1e-12):
        raise ChartBoundaryError("invariant frame is singular; the chart ends here")
    return np.swapaxes(np.linalg.inv(eta), -1, -2)


@dataclass
class FrameBundle:
    """Frames at points plus values on an outer difference stencil.

    Stencil arrays have shape ``(P, d, 4, n, n)`` with offsets ``+H, -H,
    +H/2, -H/2`` along coordinate direction ``d``.
    """

    points: np.ndarray
    step: float
    xi: np.ndarray
    eta: np.ndarray
    sigma: np.ndarray
    xi_st: np.ndarray
    eta_st: np.ndarray
    sigma_st: np.ndarray
    richardson: bool = True

    def derivative(self, stencil_values):
        """``d[p, s, ...]``: derivative along coordinate ``s``."""
        v = stencil_values
        H = self.step
        d_full = (v[:, :, 0] - v[:, :, 1]) / (2 * H)
        if not self.richardson:
            return d_full
        d_half = (v[:, :, 2] - v[:, :, 3]) / H
        return (4 * d_half - d_full) / 3

    def plain(self, stencil_values, half=False):
        v = stencil_values
        if half:
            return (v[:, :, 2] - v[:, :, 3]) / self.step
        return (v[:, :, 0] - v[:, :, 1]) / (2 * self.step)

    @property
    def stencil_points(self):
        n = self.points.shape[1]
        eye = np.eye(n)
        H = self.step
        offs = np.stack([H * eye, -H * eye, 0.5 * H * eye, -0.5 * H * eye], axis=1)
        return self.points[:, None, None, :] + offs[None]


def vector_bracket(X, dX, Y, dY):
    """Pairwise brackets ``[X_k, Y_l]`` of frames.

    ``X[p, k, t]`` and ``dX[p, s, k, t] = d_s X_k^t``; returns ``B[p, k, l, t]``.
    """
    return (np.einsum("pks,pslt->pklt", X, dY) - np.einsum("pls,pskt->pklt", Y, dX))


def lie_derivative_forms(X, dX, S, dS):
    """``(L_{X_k} S^r)_m`` as ``out[p, k, r, m]``.

    ``(L_X s)_m = X^v d_v s_m + s_v d_m X^v``.
    """
    return (np.einsum("pkv,pvrm->pkrm", X, dS) + np.einsum("prv,pmkv->pkrm", S, dX))


def exterior_residual(S, dS, C):
    """Max over points of ``|d_m s^r_v - d_v s^r_m - C^r_at s^a_m s^t_v|``."""
    lhs = np.einsum("pmrv->prmv", dS) - np.einsum("pvrm->prmv", dS)
    rhs = np.einsum("rat,pam,ptv->prmv", C, S, S)
    return float(np.max(np.abs(lhs - rhs)))


@lru_cache(maxsize=256)
def _cached_group(rep, config):
    return Group(rep, config)


def group_of(rep, config=DEFAULT):
    """Shared :class:`Group` for a representation (Gram matrix built once)."""
    return _cached_group(rep, config)


def compose(rep, a, b, config=DEFAULT):
    """Composition ``phi(a, b)`` and the log projection residual."""
    return group_of(rep, config).compose(a, b)


def killing_frame(rep, x, config=DEFAULT):
    """``xi[l, t] = d phi^t(x, b) / d b^l`` at ``b = 0``."""
    return group_of(rep, config)._frames_raw(np.atleast_2d(x))[0][0]


def invariant_frame(rep, x, config=DEFAULT):
    """``eta[l, t] = d phi^t(b, x) / d b^l`` at ``b = 0``."""
    return group_of(rep, config)._frames_raw(np.atleast_2d(x))[1][0]


def coframe(rep, x, config=DEFAULT):
    """Coframe dual to the invariant frame: ``eta @ sigma.T = I``."""
    return _coframe_from_eta(invariant_frame(rep, x, config))


def frame_sample(rep, x, config=DEFAULT):
    xi, eta, sigma, cmat = group_of(rep, config).frames(np.atleast_2d(x))
    return FrameSample(np.asarray(x, dtype=float), xi[0], eta[0], sigma[0], cmat[0])


def _solve_constants(frame, brackets, cond_limit=1e6):
    """Least squares ``C[:, k, l]`` from ``B[k, l] = sum_m C[m, k, l] frame[m]``."""
    if np.linalg.cond(frame) > cond_limit:
        return None
    n = frame.shape[0]
    inv_t = np.linalg.inv(frame.T)
    C = np.zeros((n, n, n))
    for k in range(n):
        for l in range(n):
            C[:, k, l] = inv_t @ brackets[k, l]
    return C


def recover_structure_constants(rep, points=None, frame="xi", config=DEFAULT,
                                count=5):
    """Structure constants from numerically bracketed frames.

    Returns ``(C_mean, max_deviation)`` where the deviation is measured
    against the algebra's constants for ``frame="xi"`` and against their
    negation for ``frame="eta"``.
    """
    g = group_of(rep, config)
    target = g.constants if frame == "xi" else -g.constants
    if points is None:
        points = sample_points(g.n, count, config.seed)
    points = np.atleast_2d(points)
    extra_seed = config.seed + 1
    results = []
    pending = list(points)
    tries = 0
    while pending:
        b = g.bundle(np.array(pending))
        X = b.xi if frame == "xi" else b.eta
        dX = b.derivative(b.xi_st if frame == "xi" else b.eta_st)
        B = vector_bracket(X, dX, X, dX)
        rejected = 0
        for p in range(len(pending)):
            C = _solve_constants(X[p], B[p])
            if C is None:
                rejected += 1
            else:
                results.append(C)
        tries += 1
        if rejected == 0 or tries > 10:
            break
        pending = list(sample_points(g.n, rejected, extra_seed + tries))
    if not results:
        raise ChartBoundaryError("every sample point gave an ill-conditioned frame")
    results = np.array(results)
    dev = float(np.max(np.abs(results - target)))
    return results.mean(axis=0), dev


def bracket_vec(C, a, b):
    return np.einsum("mkl,...k,...l->...m", C, a, b)


def bch_compose(constants, a, b):
    """BCH series through fourth order; exact for nilpotency class <= 4."""
    C = constants.as_float() if hasattr(constants, "as_float") else np.asarray(constants)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = bracket_vec(C, a, b)
    a_ab = bracket_vec(C, a, ab)
    b_ab = bracket_vec(C, b, ab)
    b_a_ab = bracket_vec(C, b, a_ab)
    return a + b + ab / 2 + (a_ab - b_ab) / 12 - b_a_ab / 24


def _assoc_triples(n, count, seed, radius=0.4):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        v = rng.normal(size=(3, n))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        v *= radius * rng.uniform(0.2, 1.0, size=(3, 1))
        out.append(v)
    return np.array(out)


def verify_identities(rep, points=None, config=DEFAULT, count=5, convergence=True):
    """Run the identity battery and return an :class:`IdentityReport`.

    Checks: identity element, associativity, boundary values of the frames,
    ``eta = c xi``, recovered constants from both frames, ``[xi, eta] = 0``,
    duality, Lie derivatives of the coframe, the Maurer-Cartan equation, and
    second order convergence of the Maurer-Cartan residual.
    """
    g = group_of(rep, config)
    n = g.n
    C = g.constants
    if points is None:
        points = sample_points(n, count, config.seed)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if len(points) < 5:
        raise InputError("at least five sample points are required")
    report = IdentityReport(rep.algebra.label())

    # composition
    trip = _assoc_triples(n, 10, config.seed + 7)
    a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
    ab, r1 = g.compose_batch(a, b)
    bc, r2 = g.compose_batch(b, c)
    left, r3 = g.compose_batch(ab, c)
    right, r4 = g.compose_batch(a, bc)
    right_id, r5 = g.compose_batch(a, np.zeros_like(a))
    left_id, r6 = g.compose_batch(np.zeros_like(a), a)
    proj = max(float(np.max(r)) for r in (r1, r2, r3, r4, r5, r6))
    report.add("identity element", max(np.max(np.abs(right_id - a)),
                                       np.max(np.abs(left_id - a))), 1e-10, len(a))
    report.add("associativity", np.max(np.abs(left - right)),
               config.associativity_tol, len(a))

    # frames and derivatives at the sample points plus the origin
    b0 = g.bundle(np.vstack([np.zeros(n), points]))
    xi0, eta0 = b0.xi[0], b0.eta[0]
    c0 = eta0 @ np.linalg.inv(xi0)
    eye = np.eye(n)
    report.add("xi(0) = eta(0) = c(0) = I",
               max(np.max(np.abs(xi0 - eye)), np.max(np.abs(eta0 - eye)),
                   np.max(np.abs(c0 - eye))), config.identity_tol, 1, config.fd_step)
    X, E, S = b0.xi[1:], b0.eta[1:], b0.sigma[1:]
    cm = E @ np.linalg.inv(X)
    report.add("eta = c xi", np.max(np.abs(E - cm @ X)), config.duality_tol, len(X))
    report.add("duality eta.sigma = I",
               np.max(np.abs(E @ np.swapaxes(S, -1, -2) - eye)), config.duality_tol, len(X))
    derivs = tuple(b0.derivative(v)[1:] for v in (b0.xi_st, b0.eta_st, b0.sigma_st))
    res = _derivative_residuals(X, E, S, derivs, C)
    limits = {
        "[xi, xi] = C xi": config.structure_tol,
        "[eta, eta] = -C eta": config.structure_tol,
        "recovered C from xi": config.structure_tol,
        "recovered D = -C from eta": config.structure_tol,
        "[xi, eta] = 0": config.bracket_tol,
        "Lie_xi sigma = 0": config.lie_tol,
        "Lie_eta sigma = C sigma": config.lie_tol,
        "d sigma = 1/2 C sigma^sigma": config.maurer_cartan_tol,
    }
    for name, limit in limits.items():
        report.add(name, res[name], limit, len(X), b0.step)
    report.add("log projection residual", proj, config.projection_tol, 6 * len(a))

    if convergence:
        H = config.convergence_step
        bc = g.bundle(points, outer=H, richardson=False)
        full = _derivative_residuals(bc.xi, bc.eta, bc.sigma, tuple(
            bc.plain(v) for v in (bc.xi_st, bc.eta_st, bc.sigma_st)), C)
        half = _derivative_residuals(bc.xi, bc.eta, bc.sigma, tuple(
            bc.plain(v, half=True) for v in (bc.xi_st, bc.eta_st, bc.sigma_st)), C)
        floor = config.convergence_floor
        worst, ok, notes = 0.0, True, []
        for name in full:
            if half[name] < floor:
                continue
            ratio = full[name] / half[name]
            worst = max(worst, half[name])
            if ratio < config.convergence_ratio:
                ok = False
                notes.append(f"{name}: ratio {ratio:.2f}")
        detail = "; ".join(notes) or (
            f"every residual shrinks by >= {config.convergence_ratio} from step "
            f"{H:g} to {H / 2:g}, or sits below {floor:g}")
        report.add("step halving convergence", worst, 1.0, len(points), H,
                   detail, passed=ok)
    return report


def _derivative_residuals(X, E, S, derivs, C):
    """Residuals of every identity involving frame derivatives."""
    dX, dE, dS = derivs
    BX = vector_bracket(X, dX, X, dX)
    BE = vector_bracket(E, dE, E, dE)
    BXE = vector_bracket(X, dX, E, dE)
    cx = np.einsum("pmt,mkl->pklt", X, C)
    ce = np.einsum("pmt,mkl->pklt", E, -C)
    rec_x = rec_e = 0.0
    for p in range(len(X)):
        for frame, B, target in ((X[p], BX[p], C), (E[p], BE[p], -C)):
            got = _solve_constants(frame, B)
            dev = np.inf if got is None else np.max(np.abs(got - target))
            if target is C:
                rec_x = max(rec_x, dev)
            else:
                rec_e = max(rec_e, dev)
    lx = lie_derivative_forms(X, dX, S, dS)
    le = lie_derivative_forms(E, dE, S, dS)
    expected = np.einsum("rkt,ptm->pkrm", C, S)
    return {
        "[xi, xi] = C xi": float(np.max(np.abs(BX - cx))),
        "[eta, eta] = -C eta": float(np.max(np.abs(BE - ce))),
        "recovered C from xi": float(rec_x),
        "recovered D = -C from eta": float(rec_e),
        "[xi, eta] = 0": float(np.max(np.abs(BXE))),
        "Lie_xi sigma = 0": float(np.max(np.abs(lx))),
        "Lie_eta sigma = C sigma": float(np.max(np.abs(le - expected))),
        "d sigma = 1/2 C sigma^sigma": exterior_residual(S, dS, C),
    }


def invariant_metric_check(rep, gamma, points=None, config=DEFAULT, count=5):
    """Largest component of ``L_{xi_k} g`` over the sample points.

    Each point's residual is divided by ``max(1, max |g|)`` there, so metrics
    that grow large away from the identity are judged on relative error.

    ``gamma`` is a symmetric ``n x n`` array, a stack ``(k, n, n)`` of them
    (one residual per metric is returned) or a callable returning the
    ``(P, n, n)`` metric coefficients at an array of points.
    """
    g = group_of(rep, config)
    n = g.n
    if points is None:
        points = sample_points(n, count, config.seed)
    b = g.bundle(np.atleast_2d(points))
    if callable(gamma):
        return _killing_residual(b, np.asarray(gamma(b.points), dtype=float),
                                 np.asarray(gamma(b.stencil_points), dtype=float))
    arr = np.asarray(gamma, dtype=float)
    stack = arr[None] if arr.ndim == 2 else arr
    if stack.ndim != 3 or stack.shape[1:] != (n, n) or not np.allclose(
            stack, np.swapaxes(stack, 1, 2)):
        raise InputError("gamma must be a symmetric n x n array or a stack of them")
    out = []
    for gm in stack:
        out.append(_killing_residual(
            b, np.broadcast_to(gm, b.points.shape[:-1] + (n, n)),
            np.broadcast_to(gm, b.stencil_points.shape[:-1] + (n, n))))
    return out[0] if arr.ndim == 2 else np.array(out)


def _killing_residual(b, gam, gam_st):
    S = b.sigma
    metric = np.einsum("...am,...ab,...bv->...mv", S, gam, S)
    metric_st = np.einsum("...am,...ab,...bv->...mv", b.sigma_st, gam_st, b.sigma_st)
    dG = b.derivative(metric_st)                       # (P, s, m, v)
    X = b.xi
    dX = b.derivative(b.xi_st)                         # (P, s, k, t)
    lie = (np.einsum("pks,psmv->pkmv", X, dG)
           + np.einsum("psv,pmks->pkmv", metric, dX)
           + np.einsum("pms,pvks->pkmv", metric, dX))
    # relative to the size of the metric at each point, floored at 1
    scale = np.maximum(1.0, np.max(np.abs(metric), axis=(-2, -1)))
    return float(np.max(np.max(np.abs(lie), axis=(1, 2, 3)) / scale))
