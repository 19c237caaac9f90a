"""
Subshifts, stabilizers and fixed sets
=====================================

A subshift is given by forbidden words or by finitely many periodic orbits.
Its stabilizer inside a sample family determines it again, and the spatial
realisation of a group automorphism moves it to another subshift.
"""

from stabaut import Inner, Profinite, Subshift, galois_check, is_chain_recurrent, markov_approximation, verraum_subshift
from stabaut.codes import Element
from stabaut.symbolic import PeriodicPoint
from stabaut.corpus import flip
from stabaut.subshifts import finite_approximations, language, metric, stabilizer_family

golden = Subshift.sft(2, ["11"])
print("words of length 4:", sorted("".join(map(str, w)) for w in language(golden, 4)))

heteroclinic = Subshift.sft(2, ["10"])
print("chain recurrent:", is_chain_recurrent(golden), is_chain_recurrent(heteroclinic))

# finite approximations approach the golden mean shift
for m in range(1, 6):
    q = finite_approximations(golden, m)
    print(m, len(q.points), "orbits, distance", metric(q, golden).value)

orbit = Subshift.finite(2, [PeriodicPoint.from_string(2, "001")])
print("Markov approximation of the orbit of 001:", markov_approximation(orbit, 2))

# fixing the stabilizer recovers the subshift up to the cutoff
print(galois_check(golden, stabilizer_family(golden, 6), 6))

# pushing forward: profinite shifts fix it, flipping symbols forbids 00 instead
print(verraum_subshift(Profinite(2, 5), golden)["image"])
print(verraum_subshift(Inner(Element([flip(2)])), golden)["image"])
