"""
Singer sets and Sidon sets
==========================

A B_t mod m set is a set of residues whose t-fold sums (with repetition)
are all different.  Singer's construction reads one off the discrete
logarithm of a finite field; an exhaustive search finds the rest.
"""

from toricdesigns import BtSet, make_field, search_sidon, singer_bt_set, sum_set, verify_bt
from toricdesigns.difference_sets import bt_size_bound_check

# GF(64) as Z_2[x] / (1 + x^5 + x^6), generated by x.  Coefficients are
# listed constant term first.
F = make_field(2, 6, modulus=(1, 0, 0, 0, 0, 1, 1), generator=(0, 1))
x = F.x
print("x^14 - x =", (x**14 - x).coeffs)   # equals x^3 + x^4 + x^5
print("x^58 - x =", (x**58 - x).coeffs)   # equals 1

# Singer: q = 4 lives inside GF(4^3) = GF(64), giving a Sidon set mod 21
z = singer_bt_set(4, 2, F)
print("exponents T:", z.provenance["T"])
print("Sidon set  :", z.elements, "mod", z.m)
print("pair sums  :", sum_set(z))
print("bound      :", bt_size_bound_check(z))

# The same recipe for a few other q and t
for q in (2, 3, 5, 7):
    for t in (2, 3):
        s = singer_bt_set(q, t)
        print(f"q={q} t={t}: {s.elements} mod {s.m}  valid={verify_bt(s).valid}")

# A failed check comes with a witness
bad = verify_bt(BtSet(2, 6, (0, 1, 2)))
print("(0,1,2) mod 6:", bad.valid, "collision", bad.witness)

# Exhaustive search: 60 canonical Sidon sets of size 6 mod 31, none of size 7 mod 43
print("size 6 mod 31:", len(search_sidon(6, 31, "all")), "sets, first", search_sidon(6, 31, "first")[0].elements)
print("size 7 mod 43:", search_sidon(7, 43, "exists"))
