"""
Recovering a permutation of periodic points
===========================================

At each admissible level k an automorphism of the group induces an
automorphism of Sym(Per_k), which is conjugation by a unique bijection h.
The images of transpositions pin h down point by point.
"""

import numpy as np

from stabaut import Inner, Profinite, Reflection, global_verraum, local_verraum, profinite_recovery
from stabaut.codes import shift
from stabaut.perms import cycle_perm, nu
from stabaut.symbolic import PeriodicPoint
from stabaut.verraum import compose_check, consistency_check, exceptional_swap_check

# profinite shifts act as rotations
t = local_verraum(Profinite(2, 5), 3)
print("h for N(5) on Per_3:", t.table.tolist(), "equals sigma^2:", np.array_equal(t.table, shift(2, 2).rho(3)))

# inner automorphisms give back their conjugator
g = nu(cycle_perm(8, [0, 3, 5]), 2, 3)
print("inner recovers the conjugator:", np.array_equal(local_verraum(Inner(g), 6).table, g.rho(6)))

# the reflection is found through the reversed orientation
x = PeriodicPoint.from_string(2, "0010111")
print("reflection moves", x.to_string(), "to", global_verraum(Reflection(2), x).to_string())

# tables at k and 2k agree, and residues come back out
print("consistent at 3 and 6:", consistency_check(Reflection(2), 3, 2))
print("residues:", profinite_recovery(Profinite(2, 5), 6))

# composing automorphisms composes the tables in the opposite order
print(compose_check(Inner(g), Reflection(2), 3))

# swapping the two fixed points cannot come from any automorphism
print(exceptional_swap_check(2))
