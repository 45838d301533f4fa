"""
Quantum 2-designs from Singer sets
==================================

A simplex 2-design (vertices and centroid) paired with a P(T^d) 2-design
gives a complex-projective 2-design.  With the Sidon group design the
result has d^2 + 1 states, one more than a SIC.
"""

import numpy as np

from toricdesigns import almost_minimal_2design, concatenate, frame_potential, grid_design, moment_tensor_check, simplex_two_design
from toricdesigns.quantum_designs import frame_potential_check, welch_bound

D = almost_minimal_2design(3)
print(len(D), "states, weights", sorted(set(D.weights)))
np.set_printoptions(precision=3, suppress=True)
print(D.vectors())

for d in (3, 4, 5, 6, 8, 9, 10):
    D = almost_minimal_2design(d)
    fp = frame_potential(D, 2)
    print(f"d={d:2}: {len(D):3} states  FP={fp:.15f}  Welch={welch_bound(d, 2):.15f}  moments ok={moment_tensor_check(D, 2).passed}")

# Any P(T^d) 2-design works, just with more states
S = simplex_two_design(3)
E = concatenate(S, grid_design(3, 2), 2)
print("grid-based:", len(E), "states, FP check", frame_potential_check(E, 2))

# Not a 3-design
D = almost_minimal_2design(3)
print("t=3:", frame_potential_check(D, 3), moment_tensor_check(D, 3).max_deviation)
