"""Normal ordered arithmetic in the universal enveloping algebra of an ideal.

Elements are finite sums of PBW monomials ``x_1^k1 ... x_s^ks`` with exact
rational coefficients. Products are brought to normal order with the
commutation relations ``x_j x_g = x_g x_j + [x_j, x_g]``. This terminates
when every bracket of two basis elements lies in the span of strictly
earlier basis elements, which is checked on construction.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact
from .algebra import StructureConstants
from .errors import InputError, TerminationCapError, UnsupportedBasisError

__all__ = [
    "PBWMonomial",
    "UEAElement",
    "EnvelopingAlgebra",
    "straighten_right_multiply",
    "commutator_with_external",
]


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """Normal ordered monomial; ``exponents[i]`` is the power of ``x_{i+1}``."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if any(k < 0 for k in exps):
            raise InputError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self):
        return sum(self.exponents)

    def is_unit(self):
        return self.degree == 0

    def render(self, names=None):
        parts = []
        for i, k in enumerate(self.exponents):
            if k == 0:
                continue
            name = names[i] if names else f"x{i + 1}"
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.render()


class UEAElement:
    """Finite linear combination of PBW monomials with Fraction coefficients.

    Zero coefficients are never stored. Instances are immutable.
    """

    __slots__ = ("_terms", "size")

    def __init__(self, terms=None, size=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(mono, PBWMonomial):
                mono = PBWMonomial(tuple(mono))
            if size is None:
                size = len(mono.exponents)
            elif len(mono.exponents) != size:
                raise InputError("monomials of different lengths")
            c = exact.to_fraction(c)
            if c != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        self._terms = dict(sorted(clean.items()))
        self.size = size

    @classmethod
    def monomial(cls, exponents, coeff=1):
        return cls({PBWMonomial(tuple(exponents)): coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def degree(self):
        return max((m.degree for m in self._terms), default=0)

    def coefficient(self, exponents):
        return self._terms.get(PBWMonomial(tuple(exponents)), Fraction(0))

    def is_zero(self):
        return not self._terms

    def _combine(self, other, sign):
        if not isinstance(other, UEAElement):
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + sign * c
        return UEAElement(terms, self.size if self.size is not None else other.size)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return UEAElement({m: -c for m, c in self._terms.items()}, self.size)

    def __mul__(self, scalar):
        if isinstance(scalar, UEAElement):
            raise TypeError("use EnvelopingAlgebra.multiply for products")
        s = exact.to_fraction(scalar)
        return UEAElement({m: s * c for m, c in self._terms.items()}, self.size)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def render(self, names=None):
        if not self._terms:
            return "0"
        out = []
        for m, c in self._terms.items():
            body = m.render(names)
            mag = abs(c)
            if body == "1":
                text = exact.format_fraction(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{exact.format_fraction(mag)}*{body}"
            sign = "-" if c < 0 else "+"
            out.append((sign, text))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, text in out[1:]:
            s += f" {sign} {text}"
        return s

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UEAElement({self.render()!r})"


class EnvelopingAlgebra:
    """Straightening engine for U(s) of an ordered Lie algebra basis.

    Parameters
    ----------
    constants : StructureConstants
        Constants of ``s`` in the chosen basis order.
    derivations : dict, optional
        Maps a label to an exact ``s x s`` matrix ``D`` with
        ``[x_i, h] = sum_l D[l, i] x_l``, the action of an external element.
    degree_cap : int
        Largest total degree a straightening step may produce.
    names : sequence of str, optional
        Display names of the generators.
    """

    def __init__(self, constants, derivations=None, degree_cap=12, names=None):
        if not isinstance(constants, StructureConstants):
            raise InputError("constants must be StructureConstants")
        self.constants = constants
        self.s = constants.dim
        self.degree_cap = int(degree_cap)
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(self.s))
        self._check_order()
        self._derivations = {}
        for label, mat in (derivations or {}).items():
            arr = exact.fraction_array(mat)
            if arr.shape != (self.s, self.s):
                raise InputError(f"derivation {label!r} must be {self.s}x{self.s}")
            self._derivations[label] = arr
        self._brackets = {}
        for j in range(self.s):
            for g in range(self.s):
                col = [(l, constants[l, j, g]) for l in range(self.s)
                       if constants[l, j, g] != 0]
                if col:
                    self._brackets[(j, g)] = tuple(col)
        self._rmul = lru_cache(maxsize=None)(self._rmul_mono)
        self._comm = {}

    def _check_order(self):
        c = self.constants
        for i in range(self.s):
            for j in range(i + 1, self.s):
                for l in range(self.s):
                    if c[l, i, j] != 0 and l >= i:
                        raise UnsupportedBasisError(
                            f"[{self.names[i]}, {self.names[j]}] has a component "
                            f"along {self.names[l]}, which is not earlier than both")

    # -- constructors ------------------------------------------------------
    def one(self):
        return UEAElement.monomial((0,) * self.s)

    def zero(self):
        return UEAElement({}, self.s)

    def generator(self, i):
        exps = [0] * self.s
        exps[i] = 1
        return UEAElement.monomial(exps)

    def monomial(self, exponents, coeff=1):
        if len(exponents) != self.s:
            raise InputError(f"expected {self.s} exponents")
        return UEAElement.monomial(exponents, coeff)

    def word(self, *indices):
        """Normal form of the product ``x_{i1} x_{i2} ...`` (0-based)."""
        out = self.one()
        for i in indices:
            out = self.right_multiply(out, i)
        return out

    # -- straightening -----------------------------------------------------
    def _rmul_mono(self, mono, g):
        if sum(mono) + 1 > self.degree_cap:
            raise TerminationCapError(
                f"degree cap {self.degree_cap} exceeded while straightening")
        j = max((i for i, k in enumerate(mono) if k), default=-1)
        if j <= g:
            new = list(mono)
            new[g] += 1
            return {tuple(new): Fraction(1)}
        rest = list(mono)
        rest[j] -= 1
        rest = tuple(rest)
        out = {}
        for m, c in self._rmul(rest, g).items():
            for m2, c2 in self._rmul(m, j).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        for l, cl in self._brackets.get((j, g), ()):
            for m2, c2 in self._rmul(rest, l).items():
                out[m2] = out.get(m2, Fraction(0)) + cl * c2
        return {m: c for m, c in out.items() if c != 0}

    def right_multiply(self, a, g):
        """Normal form of ``a * x_g``."""
        if not 0 <= g < self.s:
            raise InputError(f"generator index {g} out of range")
        out = {}
        for m, c in a.terms.items():
            for m2, c2 in self._rmul(m.exponents, g).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        return UEAElement(out, self.s)

    def multiply(self, a, b):
        """Normal form of the product ``a * b``."""
        out = self.zero()
        for m, c in b.terms.items():
            word = [i for i, k in enumerate(m.exponents) for _ in range(k)]
            part = a
            for i in word:
                part = self.right_multiply(part, i)
            out = out + c * part
        return out

    def _comm_mono(self, mono, label):
        key = (mono, label)
        if key in self._comm:
            return self._comm[key]
        d = self._derivations[label]
        j = max((i for i, k in enumerate(mono) if k), default=-1)
        if j < 0:
            out = {}
        else:
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            out = {}
            # [m' x_j, h] = [m', h] x_j + m' [x_j, h]
            for m, c in self._comm_mono(rest, label).items():
                for m2, c2 in self._rmul(m, j).items():
                    out[m2] = out.get(m2, Fraction(0)) + c * c2
            for l in range(self.s):
                if d[l, j] == 0:
                    continue
                for m2, c2 in self._rmul(rest, l).items():
                    out[m2] = out.get(m2, Fraction(0)) + d[l, j] * c2
            out = {m: c for m, c in out.items() if c != 0}
        self._comm[key] = out
        return out

    def commutator(self, a, label):
        """Normal form of ``[a, h]`` for the external element ``label``."""
        if label not in self._derivations:
            raise InputError(f"no derivation named {label!r}")
        out = {}
        for m, c in a.terms.items():
            for m2, c2 in self._comm_mono(m.exponents, label).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        return UEAElement(out, self.s)

    def evaluate(self, a, matrices):
        """Image of ``a`` under the algebra map sending ``x_i`` to ``matrices[i]``.

        Works with exact (object) or float matrices.
        """
        mats = [np.asarray(m) for m in matrices]
        size = mats[0].shape[0]
        exact_mode = mats[0].dtype == object
        eye = exact.identity(size) if exact_mode else np.eye(size)
        total = exact.zeros(size, size) if exact_mode else np.zeros((size, size))
        for m, c in a.terms.items():
            prod = eye
            for i, k in enumerate(m.exponents):
                for _ in range(k):
                    prod = prod.dot(mats[i])
            total = total + (c if exact_mode else float(c)) * prod
        return total

    def render(self, a):
        return a.render(self.names)


def straighten_right_multiply(algebra, a, g):
    """Normal ordered form of ``a * x_g`` in ``algebra``."""
    return algebra.right_multiply(a, g)


def commutator_with_external(algebra, a, h):
    """Normal ordered form of ``[a, h]`` for an external generator ``h``."""
    return algebra.commutator(a, h)
