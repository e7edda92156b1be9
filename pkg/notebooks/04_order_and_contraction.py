"""
Order preservation and l1 contraction
=====================================

The Jacobian has nonnegative off-diagonal entries and zero column sums, so
ordered starts stay ordered and the l1 distance between two runs never grows.
"""

import numpy as np

from kincomp import (
    ReducedSystem,
    jacobian,
    matrix_measure_l1,
    verify_boundary_repulsion,
    verify_contraction,
    verify_monotonicity,
)
from kincomp import generators as gen

rng = np.random.default_rng(11)
sys_ = ReducedSystem(gen.random_strongly_connected(5, rng, rate_kind="mixed"))
caps = sys_.capacities

n = rng.uniform(0.1, 0.9, 5) * caps
J = jacobian(sys_, n)
print(np.round(J, 4))
print("column sums", J.sum(axis=0))
print("mu1", matrix_measure_l1(J))

a = rng.uniform(0, 1, 5) * caps
b = a + 0.3 * (caps - a)
mono = verify_monotonicity(sys_, a, b, t_end=30.0)
print(mono.passed, mono.max_violation, mono.min_strict_gap)

c, d = rng.uniform(0, 1, 5) * caps, rng.uniform(0, 1, 5) * caps
con = verify_contraction(sys_, c, d, t_end=30.0)
print(con.passed, con.initial_distance, con.max_excess)

# start one compartment almost empty and watch it refill
n0 = rng.uniform(0.3, 0.7, 5) * caps
n0[2] = 1e-6
rep = verify_boundary_repulsion(sys_, n0)
print(rep.passed, rep.distances[:5])
