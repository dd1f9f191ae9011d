#!/usr/bin/env python3
"""Basic commutators: enumeration, ordering, and Lie expansions.

The basis elements of weight <= c on r generators are built recursively:
generators first, then brackets [b_i, b_j] with i > j and (for nested left
factors [b_s, b_t]) j >= t.  Layer sizes are checked against the independent
necklace-counting oracle.
"""
from grouporbits import hall
from grouporbits.freealg import TruncatedFreeAlgebra

print("== the rank-2, class-3 basis ==")
basis = hall.enumerate_basis(2, 3)
for i, b in enumerate(basis):
    print(f"  u{i+1} = {hall.commutator_name(basis, i)}   (weight {b.weight})")

print("\n== layer sizes vs. the necklace-counting oracle ==")
for r, c in [(2, 4), (3, 3), (4, 2)]:
    basis = hall.enumerate_basis(r, c)
    counts = [sum(1 for b in basis if b.weight == w) for w in range(1, c + 1)]
    witt = [hall.witt_dimension(r, w) for w in range(1, c + 1)]
    print(f"  rank {r}, class {c}: layers {counts}, oracle {witt}, "
          f"match: {counts == witt}")

print("\n== expanding into the free associative algebra ==")
alg = TruncatedFreeAlgebra(2, 3)
basis = hall.enumerate_basis(2, 3)
for i in (2, 3):
    vec = hall.expand(basis, i, alg)
    print(f"  {hall.commutator_name(basis, i)} -> {alg.format_element(vec)}")
print("""
The expansion distributes [a, b] = ab - ba; each weight layer's expansions
are linearly independent, which is what makes exact coordinate extraction
possible (see demo 02).
""")
