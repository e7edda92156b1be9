"""
Persistence certificates
========================

Every minimal siphon needs a nonnegative conserved quantity living inside
it. Here we print the certificates for a random strongly connected graph
and watch the test fail once a compartment can only drain.
"""

import numpy as np

from kincomp import (
    build_graph,
    check_persistence_structural,
    check_persistence_theorem1,
    compartmental_crn,
    conservation_basis,
    verify_certificates,
)
from kincomp import generators as gen

rng = np.random.default_rng(3)
g = gen.random_strongly_connected(4, rng)
print(g.edges)

crn = compartmental_crn(g)
basis = conservation_basis(crn)
print(len(basis), "independent conserved quantities")  # m + 1 when strongly connected

general = check_persistence_theorem1(crn)
shortcut = check_persistence_structural(g)
print(general.verdict, shortcut.verdict)

for siphon, cert in general.per_siphon_certificates.items():
    names = [crn.species[i] for i in sorted(siphon)]
    print(names, cert.to_json(crn.species)["support"])

# certificates are exact rationals, so the recheck has no tolerance
assert verify_certificates(general, crn) and verify_certificates(shortcut, crn)

# 1 -> 2 only: compartment 1 empties for good
leaky = build_graph([1.0, 1.0], [(1, 2)])
v = check_persistence_theorem1(compartmental_crn(leaky))
print(v.verdict, "-", v.reason)
