"""Invariance of bi-free families under twisted quantum permutations.

The block representation below has noncommuting projection entries, so it
is not a classical permutation.  Twisted sums over noncrossing patterns still
vanish, and an i.i.d. bi-free family is invariant; crossing patterns, the
untwisted action and mixing different representations all fail.
"""
from bifree.colorings import IDENTITY
from bifree.fock import default_family
from bifree.partitions import Partition, enumerate_nc
from bifree.quantum import (
    check_alpha_obstruction,
    check_coassociativity,
    check_identification,
    check_quantum_biexchangeable,
    default_block_rep,
    rep_classical,
    vanishing_sum_deviations,
)

u = default_block_rep()
print("block rep:", u, "| u_11 =", [[str(v) for v in row] for row in u.u(1, 1)])

nonzero = sum(len(vanishing_sum_deviations(p, u)) for n in range(1, 5) for p in enumerate_nc(n))
print("nonzero vanishing sums over noncrossing p, n <= 4:", nonzero)
print("crossing {{1,3},{2,4}}:", len(vanishing_sum_deviations(Partition([[1, 3], [2, 4]]), u)), "nonzero sums")
print("coassociativity on 'lrl':", check_coassociativity(u, "lrl"))

phi = default_family(4, 4).moments(4)
print(check_quantum_biexchangeable(phi, u, 3).summary())
print("untwisted action:", check_quantum_biexchangeable(phi, u, 4, twist=IDENTITY).summary())

classical = rep_classical([2, 1, 4, 3])
print("identification (same rep):", check_identification(u, u).equal)
print("identification (block vs classical):", check_identification(u, classical).trace[0])
print(check_alpha_obstruction(phi, u, classical).summary())
