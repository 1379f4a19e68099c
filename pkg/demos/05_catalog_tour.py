"""
A tour of the catalog
=====================

Every entry gets an exact Jacobi check, an exact representation, the
tabulated frames checked by exact differentiation, and a short numeric
identity run.
"""

import time

from adoframes import (build_representation, jacobi_check, sample_descriptors,
                       verify_catalog_entry, verify_identities)

t0 = time.perf_counter()
for desc in sample_descriptors():
    rep = build_representation(desc)
    tables = verify_catalog_entry(desc.name, desc.parameters)
    ident = verify_identities(rep, convergence=False)
    worst_mc = ident.get("d sigma = 1/2 C sigma^sigma").residual
    print(f"{desc.label():<28s} jacobi={bool(jacobi_check(desc.constants))!s:<5s} "
          f"{rep.method:<16s} size={rep.rep_dim}  tables={tables.passed!s:<5s} "
          f"identities={ident.passed!s:<5s} MC={worst_mc:.1e}")
print(f"\n{len(sample_descriptors())} entries in {time.perf_counter() - t0:.1f} s")
