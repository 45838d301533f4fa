"""
Designs on the projective torus
===============================

A weighted point set on P(T^n) is a t-design when every monomial
exp(i k.phi) with k in P_t^(n), k != 0, averages to zero.  Its size is at
least the crystal ball number G_{n-1}(t // 2).
"""

from toricdesigns import (
    BtSet,
    crystal_ball,
    enumerate_Pst,
    gram_check,
    grid_design,
    group_design_from_bt,
    is_minimal,
    quadratic_prime_design,
    verify_design,
)
from toricdesigns.toric_designs import WeightedPhaseSet

# Lattice points of P_s^(n) and their count
print("P_1^(3):", enumerate_Pst(3, 1))
for n in range(2, 7):
    print(f"n={n}:", [crystal_ball(n, s) for s in range(5)])

# The grid Z_{t+1}^{n-1} is a t-design but not a (t+1)-design
X = grid_design(3, 2)
print("grid n=3 t=2:", len(X), "points;", verify_design(X, 2).max_deviation, verify_design(X, 3).max_deviation)

# The quadratic construction: p^2 points for n >= 3, p points for n = 2
for n in range(2, 7):
    Q = quadratic_prime_design(n)
    print(f"quadratic n={n}: {len(Q)} points, deviation {verify_design(Q, 2).max_deviation:.1e}")
print(quadratic_prime_design(2).points)

# A Sidon set mod m gives a minimal 2-design with m points
G = group_design_from_bt(BtSet(2, 31, (0, 1, 3, 8, 12, 18)))
print("group design:", len(G), "points, minimal:", is_minimal(G, 2), "gram:", gram_check(G, 2))

# Perturbing one phase breaks it
A = G.angles()
A[5, 2] += 0.1
R = WeightedPhaseSet(6, tuple(map(tuple, A.tolist())), tuple(float(w) for w in G.weights))
rep = verify_design(R, 2)
print("perturbed:", rep.passed, f"{rep.max_deviation:.3f}", "worst exponent", rep.worst)
