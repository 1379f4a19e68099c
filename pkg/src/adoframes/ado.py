"""Faithful matrix representations from structure constants.

Three constructions are combined:

* the adjoint representation when the center is trivial,
* block diagonal sums over a basis aligned direct sum decomposition,
* for solvable indecomposable algebras with center, a chain of extensions
  ``s -> s + R h`` in which the algebra acts on a finite dimensional space
  of functionals on ``U(s)``: ideal elements by ``(x.f)(a) = f(a x)`` and
  the complement by ``(h.f)(a) = f([a, h])``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
import json

import numpy as np

from . import exact
from .algebra import (AlgebraDescriptor, StructureConstants, center,
                      is_solvable, split_direct_sum)
from .config import DEFAULT
from .enveloping import EnvelopingAlgebra, PBWMonomial, UEAElement
from .errors import (InputError, InternalConsistencyError, NotFaithfulError,
                     TerminationCapError, UnsupportedBasisError,
                     UnsupportedStructureError)

__all__ = [
    "CoefficientFunctional",
    "Representation",
    "ExtensionStep",
    "adjoint_representation",
    "abelian_representation",
    "direct_sum",
    "sigma_action",
    "ExtensionContext",
    "extend_representation",
    "find_chain",
    "build_representation",
    "representation_to_json",
    "representation_from_json",
]


@dataclass(frozen=True)
class CoefficientFunctional:
    """Finitely supported functional on PBW monomials."""

    support: tuple
    label: str = ""

    @classmethod
    def from_dict(cls, values, label=""):
        items = tuple(sorted((m if isinstance(m, PBWMonomial) else PBWMonomial(m),
                              exact.to_fraction(v))
                             for m, v in values.items() if v != 0))
        return cls(items, label)

    def as_dict(self):
        return dict(self.support)

    def __call__(self, element):
        table = self.as_dict()
        return sum((c * table.get(m, Fraction(0))
                    for m, c in element.terms.items()), Fraction(0))

    def is_zero(self):
        return not self.support

    def render(self, names=None):
        if not self.support:
            return "0"
        return ", ".join(f"{m.render(names)} -> {exact.format_fraction(v)}"
                         for m, v in self.support)


@dataclass(frozen=True)
class ExtensionStep:
    """Record of one extension ``s -> s + R h`` (1-based generator labels)."""

    ideal: tuple
    complement: int
    window: tuple
    labels: tuple
    rep_dim: int
    auxiliary: bool


@dataclass(frozen=True, eq=False)
class Representation:
    """Exact matrices ``Omega_k = rho(x_k)`` of an algebra."""

    algebra: AlgebraDescriptor
    matrices: tuple
    basis_labels: tuple = ()
    method: str = ""
    steps: tuple = ()

    def __post_init__(self):
        mats = tuple(exact.fraction_array(m) for m in self.matrices)
        if len(mats) != self.algebra.dim:
            raise InputError(
                f"{len(mats)} matrices for an algebra of dimension {self.algebra.dim}")
        m = mats[0].shape[0] if mats else 0
        for a in mats:
            if a.shape != (m, m):
                raise InputError("representation matrices must be square and equal size")
            a.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels",
                               tuple(f"e{i + 1}" for i in range(m)))

    @property
    def rep_dim(self):
        return self.matrices[0].shape[0]

    @property
    def dim(self):
        return self.algebra.dim

    def bracket_defects(self):
        """Exact ``[O_k, O_l] - C^m_kl O_m`` for every ``k < l``."""
        c = self.algebra.constants
        out = {}
        for k in range(self.dim):
            for l in range(k + 1, self.dim):
                a, b = self.matrices[k], self.matrices[l]
                d = a.dot(b) - b.dot(a)
                for m in range(self.dim):
                    if c[m, k, l] != 0:
                        d = d - c[m, k, l] * self.matrices[m]
                out[(k, l)] = d
        return out

    def bracket_residual(self):
        """Largest absolute entry of all bracket defects, as a Fraction."""
        return max((abs(v) for d in self.bracket_defects().values() for v in d.flat),
                   default=Fraction(0))

    def rank(self):
        return exact.rank(np.array([m.ravel() for m in self.matrices], dtype=object))

    def is_faithful(self):
        return self.rank() == self.dim

    def validate(self):
        if self.bracket_residual() != 0:
            raise InternalConsistencyError(
                f"{self.algebra.label()}: matrices violate the bracket relations")
        if not self.is_faithful():
            raise InternalConsistencyError(
                f"{self.algebra.label()}: matrices are linearly dependent")
        return self

    def numeric(self):
        """Float array of shape ``(n, m, m)``."""
        return np.array([m.astype(float) for m in self.matrices])

    def describe(self):
        lines = []
        for k, m in enumerate(self.matrices):
            lines.append(f"rho(x{k + 1}) = {matrix_units(m)}")
        return "\n".join(lines)


def matrix_units(m):
    """Render an exact matrix as a combination of units ``e_{i,j}``."""
    parts = []
    for (i, j), v in np.ndenumerate(m):
        if v == 0:
            continue
        mag = abs(v)
        coef = "" if mag == 1 else exact.format_fraction(mag)
        sign = "-" if v < 0 else "+"
        parts.append((sign, f"{coef}e{i + 1},{j + 1}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, t in parts[1:]:
        s += f" {sign} {t}"
    return s


def _descriptor(algebra):
    if isinstance(algebra, AlgebraDescriptor):
        return algebra
    if isinstance(algebra, StructureConstants):
        return AlgebraDescriptor("", algebra)
    raise InputError("expected an AlgebraDescriptor or StructureConstants")


def adjoint_representation(algebra):
    """Adjoint matrices ``(Omega_k)[m, n] = C[m, k, n]``.

    Raises
    ------
    NotFaithfulError
        When the center is nonzero.
    """
    a = _descriptor(algebra)
    if center(a.constants):
        raise NotFaithfulError(
            f"{a.label() or 'algebra'} has a nonzero center; the adjoint map is not faithful")
    mats = [a.constants.ad(k) for k in range(a.dim)]
    return Representation(a, mats, tuple(f"x{i + 1}" for i in range(a.dim)),
                          "adjoint")


def abelian_representation(n, style="diagonal", algebra=None):
    """Faithful representation of the ``n``-dimensional abelian algebra.

    ``style="nilpotent"`` gives ``rho(x_i) = e_{1,i+1}`` of size ``n + 1``;
    ``style="diagonal"`` gives ``rho(x_i) = e_{i,i}`` of size ``n``.
    """
    if n < 1:
        raise InputError("dimension must be at least 1")
    if algebra is None:
        algebra = AlgebraDescriptor(f"{n}A1" if n > 1 else "A1", StructureConstants(n))
    algebra = _descriptor(algebra)
    if not algebra.constants.is_abelian():
        raise InputError("abelian_representation needs an abelian algebra")
    if style == "nilpotent":
        mats = [exact.unit_matrix(n + 1, 0, i + 1) for i in range(n)]
        labels = ("c11",) + tuple(f"c1{i + 2}" for i in range(n))
    elif style == "diagonal":
        mats = [exact.unit_matrix(n, i, i) for i in range(n)]
        labels = tuple(f"e{i + 1}" for i in range(n))
    else:
        raise InputError(f"unknown style {style!r}")
    return Representation(algebra, mats, labels, f"abelian-{style}")


def direct_sum(algebra, blocks, reps):
    """Block diagonal representation from representations of the summands.

    ``blocks[b]`` lists the 0-based generators carried by ``reps[b]``, in the
    order of that representation's matrices.
    """
    a = _descriptor(algebra)
    sizes = [r.rep_dim for r in reps]
    total = sum(sizes)
    mats = [exact.zeros(total, total) for _ in range(a.dim)]
    offset = 0
    labels = []
    for block, rep, size in zip(blocks, reps, sizes):
        for pos, g in enumerate(block):
            mats[g][offset:offset + size, offset:offset + size] = rep.matrices[pos]
        tag = "+".join(f"x{g + 1}" for g in block)
        labels.extend(f"{tag}:{lab}" for lab in rep.basis_labels)
        offset += size
    steps = tuple(s for r in reps for s in r.steps)
    return Representation(a, mats, tuple(labels), "direct-sum", steps)


# -- extension by a complement generator -----------------------------------

def _weights(constants, ideal, h):
    """Integer weights making brackets and the action of ``h`` non-decreasing.

    Requires ``w_m >= w_k + w_l`` whenever ``C[m, k, l] != 0`` inside the
    ideal and ``w_m >= w_k`` whenever ``[x_k, h]`` has an ``x_m`` component.
    """
    w = {i: 1 for i in ideal}
    for _ in range(4 * len(ideal) + 4):
        changed = False
        for k, l, m in product(ideal, ideal, ideal):
            if k < l and constants[m, k, l] != 0 and w[m] < w[k] + w[l]:
                w[m] = w[k] + w[l]
                changed = True
        for k, m in product(ideal, ideal):
            if constants[m, k, h] != 0 and m != k and w[m] < w[k]:
                w[m] = w[k]
                changed = True
        if not changed:
            return w
    raise UnsupportedBasisError(
        "no grading of the ideal is compatible with the brackets; "
        "the functional window cannot be bounded")


class ExtensionContext:
    """State of one extension step ``g = s + R h``.

    Parameters
    ----------
    constants : StructureConstants
        Constants of ``g``.
    ideal : sequence of int
        0-based generators spanning the ideal ``s``.
    h : int
        0-based complement generator.
    degree_cap : int
    """

    def __init__(self, constants, ideal, h, degree_cap=DEFAULT.degree_cap):
        self.g = constants
        n = constants.dim
        ideal = list(ideal)
        if h in ideal or sorted(ideal + [h]) != list(range(n)):
            raise InputError("ideal and complement must partition the basis")
        for k, x in product(ideal, range(n)):
            for m in range(n):
                if constants[m, k, x] != 0 and m not in ideal:
                    raise InputError(
                        f"span of {[i + 1 for i in ideal]} is not an ideal")
        self.h = h
        w = _weights(constants, ideal, h)
        # heavier generators first, so brackets land on earlier elements
        self.order = sorted(ideal, key=lambda i: (-w[i], i))
        self.weights = [w[i] for i in self.order]
        s_consts = constants.restrict(self.order)
        s = len(self.order)
        deriv = exact.zeros(s, s)
        for a, k in enumerate(self.order):
            for b, m in enumerate(self.order):
                deriv[b, a] = constants[m, k, h]
        names = [f"x{i + 1}" for i in self.order]
        self.uea = EnvelopingAlgebra(s_consts, {"h": deriv}, degree_cap, names)
        self.window = self._window(max(self.weights))

    def _window(self, wmax):
        s = len(self.order)
        monos = []

        def rec(i, current, weight):
            if i == s:
                monos.append(tuple(current))
                return
            k = 0
            while weight + k * self.weights[i] <= wmax:
                rec(i + 1, current + [k], weight + k * self.weights[i])
                k += 1

        rec(0, [], 0)
        monos.sort(key=lambda m: (sum(m), tuple(-k for k in m)))
        return tuple(monos)

    def generator_position(self, g):
        """Position of the 0-based ``g`` generator inside the ideal order."""
        return self.order.index(g)

    def act(self, g, values):
        """Apply generator ``g`` (0-based, of ``g``) to a functional.

        ``values`` maps window monomials (exponent tuples) to Fractions. The
        result is again supported on the window.
        """
        out = {}
        for mono in self.window:
            elem = UEAElement.monomial(mono)
            if g == self.h:
                image = self.uea.commutator(elem, "h")
            else:
                image = self.uea.right_multiply(elem, self.generator_position(g))
            v = sum((c * values.get(m.exponents, Fraction(0))
                     for m, c in image.terms.items()), Fraction(0))
            if v != 0:
                out[mono] = v
        return out

    def vector(self, values):
        return np.array([values.get(m, Fraction(0)) for m in self.window], dtype=object)

    def functional(self, values, label=""):
        return CoefficientFunctional.from_dict(values, label)


def sigma_action(context, x, f, ideal_flag=None):
    """Action of generator ``x`` on a coefficient functional.

    ``ideal_flag`` may be given to assert whether ``x`` lies in the ideal
    (right multiplication rule) or is the complement (commutator rule).
    """
    if ideal_flag is not None and bool(ideal_flag) == (x == context.h):
        raise InputError("ideal_flag does not match the generator")
    values = {m.exponents: v for m, v in f.support}
    return CoefficientFunctional.from_dict(context.act(x, values))


def _initial_labels(rho0, context, ideal_order_in_rho0):
    labels = ["c11"]
    for g in context.order:
        mat = rho0.matrices[ideal_order_in_rho0.index(g)]
        nz = [(i, j) for (i, j), v in np.ndenumerate(mat) if v != 0]
        i, j = nz[0] if nz else (0, 0)
        labels.append(f"c{i + 1}{j + 1}")
    return labels


def extend_representation(rho0, constants, ideal, h, config=DEFAULT):
    """Extend a representation of an ideal to ``g = s + R h``.

    Parameters
    ----------
    rho0 : Representation
        Faithful representation of the ideal; matrix ``i`` represents
        ``x_{ideal[i]}``. It fixes the labels of the starting functionals.
    constants : StructureConstants
        Constants of ``g``.
    ideal : sequence of int
        Generators of ``s`` (0-based, in ``g``).
    h : int
        Complement generator.

    Returns
    -------
    Representation
        Matrices ``rho(x)[i, j]`` = coefficient of basis functional ``i`` in
        ``x . (basis functional j)``.
    """
    ideal = list(ideal)
    if rho0.dim != len(ideal):
        raise InputError("rho0 must have one matrix per ideal generator")
    if not rho0.is_faithful():
        raise NotFaithfulError("rho0 must be faithful on the ideal")
    ctx = ExtensionContext(constants, ideal, h, config.degree_cap)
    n = constants.dim
    funcs = [{(0,) * len(ctx.order): Fraction(1)}]
    for pos in range(len(ctx.order)):
        mono = [0] * len(ctx.order)
        mono[pos] = 1
        funcs.append({tuple(mono): Fraction(1)})
    labels = _initial_labels(rho0, ctx, ideal)
    vectors = [ctx.vector(f) for f in funcs]
    n_new = 0
    frontier = list(range(len(funcs)))
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > config.closure_round_cap:
            raise TerminationCapError(
                f"functional closure did not stabilize in {config.closure_round_cap} rounds")
        new_frontier = []
        for idx in frontier:
            for g in range(n):
                image = ctx.act(g, funcs[idx])
                vec = ctx.vector(image)
                if exact.is_zero(vec) or exact.solve_in_span(vectors, vec) is not None:
                    continue
                lead = next(v for v in vec if v != 0)
                image = {m: v / lead for m, v in image.items()}
                funcs.append(image)
                vectors.append(ctx.vector(image))
                n_new += 1
                labels.append(f"f{n_new}")
                new_frontier.append(len(funcs) - 1)
        frontier = new_frontier
    m = len(funcs)
    mats = []
    for g in range(n):
        mat = exact.zeros(m, m)
        for j, f in enumerate(funcs):
            coords = exact.solve_in_span(vectors, ctx.vector(ctx.act(g, f)))
            if coords is None:
                raise InternalConsistencyError("functional span is not invariant")
            for i, c in enumerate(coords):
                mat[i, j] = c
        mats.append(mat)
    algebra = AlgebraDescriptor("", constants)
    rep = Representation(algebra, mats, tuple(labels), "extension")
    if rep.bracket_residual() != 0:
        raise InternalConsistencyError("extension matrices violate the bracket relations")
    auxiliary = False
    if not rep.is_faithful():
        # add the one dimensional quotient g -> g/s realized nilpotently
        auxiliary = True
        big = []
        for g, mat in enumerate(mats):
            b = exact.zeros(m + 2, m + 2)
            b[:m, :m] = mat
            if g == h:
                b[m, m + 1] = Fraction(1)
            big.append(b)
        rep = Representation(algebra, big, tuple(labels) + ("aux1", "aux2"),
                             "extension")
    rep.validate()
    step = ExtensionStep(tuple(i + 1 for i in ctx.order), h + 1,
                         tuple(PBWMonomial(w) for w in ctx.window),
                         rep.basis_labels, rep.rep_dim, auxiliary)
    return Representation(algebra, rep.matrices, rep.basis_labels, "extension",
                          rho0.steps + (step,))


# -- chains and dispatch ---------------------------------------------------

def _is_ideal(constants, sub, sup):
    sub = set(sub)
    for k in sub:
        for x in sup:
            for m in range(constants.dim):
                if constants[m, k, x] != 0 and m not in sub:
                    return False
    return True


def _is_abelian_subset(constants, sub):
    return all(constants[m, k, l] == 0 for k in sub for l in sub
               for m in range(constants.dim))


def find_chain(constants):
    """Chain ``V0 < V1 < ... < g`` used by the extension construction.

    Returns ``(order, k)``: a permutation of the basis whose first ``k``
    elements span an abelian ideal of the first ``k + 1`` and every prefix of
    length ``>= k`` is an ideal of the next prefix. The largest ``k`` wins,
    ties broken by the lexicographically smallest permutation. Returns
    ``None`` when no such chain exists.
    """
    n = constants.dim
    for k in range(n - 1, 0, -1):
        for order in permutations(range(n)):
            head = list(order[:k])
            if list(head) != sorted(head):
                continue
            if not _is_abelian_subset(constants, head):
                continue
            if all(_is_ideal(constants, order[:j], order[:j + 1])
                   for j in range(k, n)):
                return list(order), k
    return None


def _chain_representation(algebra, config):
    c = algebra.constants
    found = find_chain(c)
    if found is None:
        raise UnsupportedStructureError(
            f"{algebra.label()}: no chain of ideals with an abelian start was found")
    order, k = found
    base = AlgebraDescriptor("", c.restrict(order[:k]))
    rep = abelian_representation(k, "nilpotent", base)
    for j in range(k, c.dim):
        sub = order[:j + 1]
        sub_consts = c.restrict(sub)
        rep = extend_representation(rep, sub_consts, list(range(j)), j, config)
    # rep.matrices follow `order`; put them back in basis order
    mats = [None] * c.dim
    for pos, g in enumerate(order):
        mats[g] = rep.matrices[pos]
    steps = tuple(
        ExtensionStep(tuple(order[i - 1] + 1 for i in s.ideal), order[s.complement - 1] + 1,
                      s.window, s.labels, s.rep_dim, s.auxiliary)
        for s in rep.steps)
    return Representation(algebra, mats, rep.basis_labels, "extension", steps)


def build_representation(algebra, config=DEFAULT):
    """Faithful exact representation of an algebra.

    Dispatch: abelian gives diagonal units; trivial center gives the adjoint
    representation; a basis aligned direct sum is assembled block by block;
    a solvable indecomposable algebra goes through the extension chain.

    Raises
    ------
    UnsupportedStructureError
        For indecomposable, non solvable algebras with nonzero center.
    """
    a = _descriptor(algebra)
    c = a.constants
    if c.is_abelian():
        return abelian_representation(a.dim, "diagonal", a).validate()
    if not center(c):
        return adjoint_representation(a).validate()
    blocks = split_direct_sum(c)
    if len(blocks) > 1:
        reps = []
        for block in blocks:
            sub = AlgebraDescriptor(f"{a.name}[{','.join(str(i + 1) for i in block)}]",
                                    c.restrict(block))
            reps.append(build_representation(sub, config))
        return direct_sum(a, blocks, reps).validate()
    if is_solvable(c):
        return _chain_representation(a, config).validate()
    raise UnsupportedStructureError(
        f"{a.label()}: indecomposable, not solvable and with nonzero center")


# -- serialization ----------------------------------------------------------

def representation_to_json(rep):
    doc = {
        "rep_dim": rep.rep_dim,
        "matrices": [[[exact.format_fraction(v) for v in row] for row in m]
                     for m in rep.matrices],
        "basis_labels": list(rep.basis_labels),
    }
    return json.dumps(doc, indent=2)


def representation_from_json(text, algebra):
    doc = json.loads(text)
    try:
        mats = [exact.fraction_array(m) for m in doc["matrices"]]
        if any(m.shape != (doc["rep_dim"],) * 2 for m in mats):
            raise InputError("matrix shape disagrees with rep_dim")
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad representation JSON: {exc}") from exc
    return Representation(_descriptor(algebra), mats, tuple(doc.get("basis_labels", ())))
