"""
Permutations of periodic points and their centralizers
======================================================
"""

import numpy as np

from stabaut import SimpleAuto, centralizer_in_sym, dimension_rep, nu, rho, root_analysis
from stabaut.codes import shift
from stabaut.perms import cycle_perm

# any permutation of Per_k comes from a simple automorphism, and back
p = np.array([3, 0, 7, 1, 2, 6, 4, 5])
print("rho(nu(p)) == p:", np.array_equal(rho(nu(p, 2, 3), 3), p))

# the level-2 simple automorphisms act on Per_4; what commutes with all of them?
gens = [SimpleAuto(2, 2, q).rho(4) for q in (cycle_perm(4, [0, 1]), cycle_perm(4, [0, 1, 2, 3]))]
found = centralizer_in_sym(gens, 16)
print(len(found), "elements; the non-trivial one is the square of the shift:",
      any(np.array_equal(c, shift(2, 2).rho(4)) for c in found))

# the dimension of the shift on 12 symbols is (2, 1) over the primes (2, 3)
print(dimension_rep(shift(12)))
print("t with gamma^2 = sigma^(2t) when gamma^2 has dimension (2, 2) on 6 symbols:", root_analysis(6, 2, (2, 2)))
