"""
Composition law and frames in canonical coordinates
====================================================

Group elements are exp(a.Omega). Products are pulled back to coordinates
with the principal logarithm, and the frames come from differentiating the
composition law in either slot.
"""

import numpy as np

from adoframes import bch_compose, build_representation, catalog_lookup, group_of
from adoframes.symcatalog import compare_with_pipeline, symbolic_frame

np.set_printoptions(precision=6, suppress=True)

# Bianchi II is nilpotent, so BCH gives the composition law exactly
desc = catalog_lookup("Bianchi_II")
g = group_of(build_representation(desc))
a = np.array([0.3, -0.2, 0.5])
b = np.array([-0.1, 0.4, 0.2])
phi, resid = g.compose(a, b)
print("phi(a, b)      =", phi, " projection residual", resid)
print("BCH            =", bch_compose(desc.constants, a, b))
print("a + b + 1/2 [a,b]: first component", a[0] + b[0] + 0.5 * (a[1] * b[2] - a[2] * b[1]))

# frames at a point: xi from the second slot, eta from the first
x = np.array([0.2, 0.1, -0.3])
xi, eta, sigma, c = (arr[0] for arr in g.frames(x[None]))
print("\nxi (rows are fields) =\n", xi)
print("eta =\n", eta)
print("sigma (rows are forms) =\n", sigma)
print("eta . sigma^T =\n", eta @ sigma.T)

# the tabulated frames live in another chart; along the complement of the
# derived algebra the two agree
frame = symbolic_frame("Bianchi_II")
print("\ntabulated eta:", frame.render("eta"))
print("complement deviation pipeline vs tables:",
      compare_with_pipeline("Bianchi_II", algebra=desc))

# A4,10: the x4 coordinate simply adds
g410 = group_of(build_representation(catalog_lookup("A4,10")))
a, b = np.array([0.1, 0.2, -0.3, 0.4]), np.array([-0.2, 0.1, 0.3, 0.5])
print("\nA4,10 phi^4 =", g410.compose(a, b)[0][3], " a4 + b4 =", a[3] + b[3])
