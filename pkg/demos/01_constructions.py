"""
Two classical Sidon constructions
=================================

Build the quadratic set inside [0, 2p^2) and the discrete-log set
inside Z_{(p-1)p}, verify the Sidon property in both ambient groups,
and probe how far each sits from being an additive basis of order 3.
"""

from sidonlab import (basis_order_check, b2g_bound, erdos_turan_set,
                      is_sidon, ruzsa_set)

p = 13

# The quadratic construction: x -> x + (x^2 mod p) * 2p for x < p.
et = erdos_turan_set(p)
print(f"quadratic set, p = {p}:")
print(f"  elements  {et.elements}")
print(f"  ambient   [0, {2 * p * p})")

witness = is_sidon(et.elements, mode="integer")
print(f"  Sidon as integers: {witness.is_sidon}")

# The discrete-log construction lives in the cyclic group Z_{(p-1)p};
# each element solves x = a mod (p-1) and x = g^a mod p simultaneously.
rz = ruzsa_set(p)
print(f"\ndiscrete-log set, p = {p}:")
print(f"  elements  {rz.elements}")
print(f"  modulus   {rz.modulus}")

witness = is_sidon(rz, mode="cyclic", modulus=rz.modulus)
print(f"  Sidon mod {rz.modulus}: {witness.is_sidon}")

# Sidon means every pairwise sum appears at most twice (ordered); the
# g-bound makes that quantitative.
print(f"  b2g bound: {b2g_bound(rz, mode='cyclic', modulus=rz.modulus)}")

# Neither set is a basis of order 3 on its own; the checker returns the
# first residue with no 3-term representation.
covers, misses = basis_order_check(rz, 3)
print(f"\nbasis of order 3 over Z_{rz.modulus}: {covers}")
if not covers:
    print(f"  first few uncovered residues: {misses[:4]}")

# A Sidon set of size p in a group of order about p^2 is the extremal
# regime: |A|^2 comparable to the group, yet triple sums still miss.
density = len(rz.elements) ** 2 / rz.modulus
print(f"  |A|^2 / N = {density:.3f}")
