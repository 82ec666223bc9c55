"""
Vectorial sunflowers in tuple families
======================================

A k-petal vectorial sunflower is k tuples that agree exactly on a core
coordinate set and are pairwise disjoint elsewhere. Large families of
h-tuples cannot avoid them: above h! * ((h^2 - h + 1) k)^h members one
always exists, and the finder returns a certificate.
"""

import random

from sidonlab import find_vectorial_sunflower, is_vectorial_sunflower

# A hand-made example: four pairs sharing the second coordinate.
family = [(7, 7), (17, 7), (8, 7), (11, 7), (3, 4), (9, 1)]
cert = find_vectorial_sunflower(family, 4)
print("hand-made family:", family)
print(f"  4-petal sunflower at indices {cert.petal_indices}, "
      f"type set {cert.type_set}, cores {cert.core_values}")
print(f"  verify: {cert.verify(family)}")

# The direct predicate takes the petals and the coordinate positions
# that are supposed to be shared.
petals = [family[i] for i in cert.petal_indices]
print(f"  re-check: {is_vectorial_sunflower(petals, cert.type_set)}")

# Guarantee threshold for pairs (h = 2) and k = 2 petals: any 73
# distinct pairs must contain one. Random families confirm it.
rng = random.Random(5)
hits = 0
for _ in range(50):
    seen = set()
    while len(seen) < 73:
        seen.add((rng.randint(1, 40), rng.randint(1, 40)))
    if find_vectorial_sunflower(sorted(seen), 2) is not None:
        hits += 1
print(f"\n50 random 73-pair families, k = 2 found in: {hits}/50")

# Below the threshold nothing is promised. In this 3-cycle every two
# pairs share a value but never in matching positions, so no type
# works: not () (values overlap), not (1,) or (2,) (no agreement).
cycle = [(1, 2), (2, 3), (3, 1)]
print(f"cycle family {cycle}: {find_vectorial_sunflower(cycle, 2)}")

# For triples (h = 3) the same guarantee needs 6 * 14^3 + 1 = 16465
# members. One random draw, found in well under a second.
codes = rng.sample(range(60 ** 3), 16465)
triples = [(c // 3600 + 1, c // 60 % 60 + 1, c % 60 + 1) for c in codes]
cert = find_vectorial_sunflower(triples, 2)
print(f"\n16465 random triples: petals {cert.petal_indices}, "
      f"type set {cert.type_set}, verify {cert.verify(triples)}")
