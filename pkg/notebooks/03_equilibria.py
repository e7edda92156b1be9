"""
One equilibrium per level
=========================

Trajectories keep the total number of particles. On each level there is a
single equilibrium, and every start (even on the boundary) ends up there.
"""

import numpy as np

from kincomp import ReducedSystem, Saturating, find_equilibrium, simulate
from kincomp import generators as gen
from kincomp.dynamics import sample_level_set

sys_ = ReducedSystem(gen.triangle(Saturating(1.5, 0.4, 0.7), capacities=(1.0, 2.0, 0.5)))
caps = sys_.capacities

traj = simulate(sys_, [1.0, 0.0, 0.0], 30.0, n_samples=7)
print(np.column_stack([traj.t, traj.states, traj.totals]))
print("drift", traj.max_drift)

rng = np.random.default_rng(0)
for s in (0.5, 1.75, 3.0):
    points = []
    for k in range(6):
        start = sample_level_set(caps, s, rng, boundary=k % 2 == 0)
        points.append(find_equilibrium(sys_, s, start=start).point)
    points = np.array(points)
    print(s, points[0], np.ptp(points, axis=0).max())

# symmetric ring: the equilibrium spreads particles evenly
ring = ReducedSystem(gen.cycle(5))
print(find_equilibrium(ring, 2.0).point)
