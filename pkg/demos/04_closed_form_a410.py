"""
The A4,10 group matrix through Lagrange-Sylvester interpolation
================================================================

The spectrum of theta.Omega is {0 (twice), +-i t, +-2i t} with t = theta4.
Interpolating exp on that spectrum gives six coefficients with a closed
form. With the theta(alpha) substitution the group matrix takes a compact
form, which matches exp(theta.Omega) after a fixed change of basis of the
representation space.
"""

import numpy as np

from adoframes import build_representation, catalog_lookup, verify_a410_closed_form
from adoframes.matfunc import (eigenvalues, exp_lagrange_sylvester, exp_scaling_squaring,
                               lagrange_sylvester_coefficients)
from adoframes.symcatalog import A410_INTERTWINER

np.set_printoptions(precision=6, suppress=True)

rep = build_representation(catalog_lookup("A4,10"))
om = rep.numeric()
theta = np.array([0.3, -0.5, 0.2, 1.1])
M = np.einsum("k,kij->ij", theta, om)

spec = eigenvalues(M)
print("spectrum:", [(complex(round(z.real, 12), round(z.imag, 12)), m)
                    for z, m in zip(spec.eigenvalues, spec.multiplicities)])

t = theta[3]
closed = [1.0, 1.0,
          (7 - np.cos(t)) * np.sin(t / 2) ** 2 / (3 * t ** 2),
          (30 * t - 32 * np.sin(t) + np.sin(2 * t)) / (24 * t ** 3),
          2 * np.sin(t / 2) ** 4 / (3 * t ** 4),
          (6 * t - 8 * np.sin(t) + np.sin(2 * t)) / (24 * t ** 5)]
print("interpolation coefficients:", lagrange_sylvester_coefficients(spec).real)
print("closed form               :", np.array(closed))

E1 = exp_lagrange_sylvester(M, spec)
E2 = exp_scaling_squaring(M)
print("\nLagrange-Sylvester vs scaling-squaring:", np.abs(E1 - E2).max())

report = verify_a410_closed_form(rep)
print("\nstored matrix vs exp(theta(alpha).Omega), entrywise:", report.raw_deviation)
print("after conjugating by the change of basis   :", report.intertwined_deviation)
print("change of basis P =\n", A410_INTERTWINER)
