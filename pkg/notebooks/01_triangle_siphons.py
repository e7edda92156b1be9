"""
Siphons of the three-compartment ring
=====================================

Build the ring 1 -> 2 -> 3 -> 1, look at its reaction network and Petri
net, and list the minimal siphons two ways.
"""

import numpy as np

from kincomp import build_petri, closed_form_siphons, compartmental_crn, minimal_siphons
from kincomp import generators as gen
from kincomp.petri import siphon_names

g = gen.triangle()
crn = compartmental_crn(g)
print(crn.species)

# one column per edge; N_i and S_i always move in opposite directions
print(crn.gamma)

net = build_petri(crn)
for t, (pre, post) in enumerate(zip(net.pre, net.post)):
    ins = " + ".join(net.places[p] for p in sorted(pre))
    outs = " + ".join(net.places[p] for p in sorted(post))
    print(f"{net.transitions[t]}: {ins} -> {outs}")

enumerated = minimal_siphons(net)
print(siphon_names(net, enumerated))

# the catalogue needs no search at all
assert enumerated == closed_form_siphons(g)

# a longer ring: still m + 2 minimal siphons
for m in (4, 6, 8):
    ring = gen.cycle(m)
    print(m, len(closed_form_siphons(ring)), len(minimal_siphons(build_petri(compartmental_crn(ring)))))

# cut one edge and the catalogue no longer applies
cut = gen.path(3)
sets = minimal_siphons(build_petri(compartmental_crn(cut)))
print(siphon_names(build_petri(compartmental_crn(cut)), sets))
print(np.array([len(s) for s in sets]))
