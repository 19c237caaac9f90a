"""
Automorphisms of the stabilized group
=====================================

Inner automorphisms, the reflection and the profinite shifts act on words
without ever expanding them.  Degree and orientation describe what happens
to the shift itself.
"""

from stabaut import Composite, Inner, Profinite, ProfiniteInteger, Reflection, admissible_levels, degree
from stabaut.codes import shift
from stabaut.perms import cycle_perm, nu

examples = {
    "profinite 5": Profinite(2, 5),
    "factorial series": Profinite(2, ProfiniteInteger.factorial_series()),
    "reflection": Reflection(2),
    "inner, level-2 cycle": Inner(nu(cycle_perm(4, [0, 1, 2, 3]), 2, 2)),
    "reflection then profinite 3": Composite([Reflection(2), Profinite(2, 3)]),
}
for name, psi in examples.items():
    d, orientation = degree(psi)
    print(f"{name:30s} degree {d} {orientation:10s} levels {admissible_levels(psi, 8)}")

a = ProfiniteInteger.factorial_series()
print("residues of 1! + 2! + ...:", a.residues(10))
