"""
Two-track gadgets
=================

Reading a point of the 5-shift in pairs gives two tracks.  Gadgets permute
the bottom symbol wherever a word appears on top, and together with the top
shift they separate orbits.
"""

import numpy as np

from stabaut.perms import cycle_perm
from stabaut.twotrack import (commutator_identity_check, gamma_identity_check, make_g, maximize_top_period,
                              orbit_separation_check, pair_point, split_tracks)

n = 5
x = pair_point(n, [1, 2, 1, 3], [0, 0, 0, 0])
g = make_g(n, (1,), cycle_perm(n, [0, 4]))
print("tracks after g:", split_tracks(g.apply(x)))

print("top shift equals swap after shift:", gamma_identity_check(n))

pi1, pi2 = cycle_perm(n, [0, 1, 2]), cycle_perm(n, [2, 3, 4])
for convention in ("aba-1b-1", "a-1b-1ab"):
    print(convention, commutator_identity_check(n, (1, 2), (3,), pi1, pi2, convention))

f, y = maximize_top_period(pair_point(n, [0, 0, 0], [0, 1, 2]))
print("top track after maximizing:", split_tracks(y)[0])

print(orbit_separation_check(1, n))
