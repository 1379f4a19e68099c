"""
Building a faithful representation of A4,10 by extension
=========================================================

A4,10 has a nonzero center, so the adjoint map is not faithful. We start
from the abelian ideal {x1, x2}, extend by x3, then by x4, acting on
coefficient functionals of the enveloping algebra.
"""

from fractions import Fraction

from adoframes import build_representation, catalog_lookup, center, find_chain
from adoframes.ado import (CoefficientFunctional, ExtensionContext, abelian_representation,
                           extend_representation, sigma_action)
from adoframes.algebra import AlgebraDescriptor
from adoframes.enveloping import UEAElement

desc = catalog_lookup("A4,10")
C = desc.constants
print(desc.label(), "nonzero constants:", [(m + 1, k + 1, l + 1, str(v))
                                            for m, k, l, v in C.nonzero()])
print("center:", [list(map(str, v)) for v in center(C)])

# the chain of ideals used by the construction
order, k = find_chain(C)
print("chain order", [i + 1 for i in order], "abelian start of size", k)

# start: x1, x2 as e_{1,2}, e_{1,3}
rho0 = abelian_representation(2, "nilpotent", AlgebraDescriptor("", C.restrict([0, 1])))
print("\nrho0:\n" + rho0.describe())

# extend to b = {x1, x2, x3}
b = C.restrict([0, 1, 2])
rho1 = extend_representation(rho0, b, [0, 1], 2)
print("\nrho1:\n" + rho1.describe())

# the x4 action on a functional: x4 . c12 is a new functional f1
ctx = ExtensionContext(C, [0, 1, 2], 3)
c12 = CoefficientFunctional.from_dict({(1, 0, 0): 1})
f1 = sigma_action(ctx, 3, c12)
print("\nx4 . c12 =", f1.render(ctx.uea.names))

# straightening inside U(b): x3 x2^2 in normal order, and [x2^2, x4]
x2sq = UEAElement.monomial((0, 2, 0))
print("x3 * x2^2 =", ctx.uea.render(ctx.uea.word(2, 1, 1)))
print("[x2^2, x4] =", ctx.uea.render(ctx.uea.commutator(x2sq, "h")))

# the full construction
rep = build_representation(desc)
print(f"\nfinal representation ({rep.rep_dim}x{rep.rep_dim}, basis {rep.basis_labels}):")
print(rep.describe())
print("bracket residual:", rep.bracket_residual(), " faithful:", rep.is_faithful())
assert rep.bracket_residual() == Fraction(0)
