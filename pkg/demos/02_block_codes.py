"""
Automorphisms as words of block codes
=====================================

Elements are reduced words in shift powers, simple automorphisms and
explicit rule tables.  They are applied to whole arrays of periodic points
at once, and two of them are compared exactly by exhausting the windows
they can see.
"""

import numpy as np

from stabaut import Element, ShiftPower, SimpleAuto, PeriodicPoint, equals, reflect, tabulate

# the level-2 cycle 00 -> 01 -> 10 -> 11 -> 00
tau = SimpleAuto(2, 2, [1, 2, 3, 0])
x = PeriodicPoint.from_string(2, "0011")
print("tau(0011) =", tau.apply(x).to_string())

# a word read right to left: first shift, then tau, then shift back
conj = Element([ShiftPower(2, -1), tau, ShiftPower(2, 1)])
print("shift conjugate acts on Per_4 as", conj.rho(4).tolist())

# expanding to one rule table and comparing
code = tabulate(conj)
print("tabulated radius", code.radius, "equal:", equals(code, conj))

# conjugating by the reflection turns tau into a shifted copy of its reversal
print("reflection formula holds:",
      equals(reflect(tau), Element([ShiftPower(2, -1), tau.reversed_blocks(), ShiftPower(2, 1)])))

# the induced permutation of Per_k is a homomorphism of words
both = Element([tau, conj])
print(np.array_equal(both.rho(4), tau.rho(4)[conj.rho(4)]))
