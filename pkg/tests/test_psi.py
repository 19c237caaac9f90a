import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabaut.codes import Element, ShiftPower, SimpleAuto, equals, shift
from stabaut.corpus import automorphisms, flip, marker_code, sample_words
from stabaut.errors import IncompatibleResiduesError, MissingResidueError
from stabaut.perms import cycle_perm, nu
from stabaut.psi import (PRESERVING, REVERSING, Composite, Inner, Profinite, ProfiniteInteger, Reflection,
                         admissible_levels, alpha, apply_psi, check_profinite_welldefined, defect_scan, degree,
                         is_admissible, residues_compatible, then)


def test_profinite_fixes_level1_elements():
    for a in (5, ProfiniteInteger.factorial_series()):
        psi = Profinite(3, a)
        assert equals(psi.apply(marker_code(3)), marker_code(3))


def test_inner_by_shift_is_direct_composition():
    tau = SimpleAuto(2, 2, [1, 2, 0, 3])
    got = Inner(shift(2)).apply(tau)
    assert equals(got, Element([ShiftPower(2, -1), tau, ShiftPower(2, 1)]))
    assert not equals(got, tau)


def test_reflection_inverts_the_shift():
    for n in (2, 3):
        assert equals(Reflection(n).apply(shift(n)), shift(n, -1))


def test_composite_applies_in_list_order():
    tau = SimpleAuto(2, 2, [1, 2, 0, 3])
    g1, g2 = Inner(shift(2)), Inner(Element([tau]))
    phi = SimpleAuto(2, 2, [0, 3, 2, 1])
    manual = g2.apply(g1.apply(phi))
    assert equals(Composite([g1, g2]).apply(phi), manual)
    assert equals(then(g1, g2).apply(phi), manual)
    assert equals(apply_psi(g1, phi), g1.apply(phi))


@pytest.mark.parametrize("psi", list(automorphisms(2).values()), ids=list(automorphisms(2)))
def test_inverse_undoes(psi):
    for phi in sample_words(2, 4, 4, seed=3):
        assert equals(psi.inverse().apply(psi.apply(phi)), phi)


def test_profinite_residues():
    five = ProfiniteInteger.from_integer(5)
    assert five.residues(6) == {1: 0, 2: 1, 3: 2, 4: 1, 5: 0, 6: 5}
    series = ProfiniteInteger.factorial_series()
    # 1! + 2! + ... reduced mod m: all later terms vanish
    import math
    for m in range(1, 13):
        assert series.residue(m) == sum(math.factorial(j) for j in range(1, m + 1)) % m
    table = ProfiniteInteger(table={6: 5, 4: 1})
    assert table.residue(3) == 2 and table.residue(2) == 1
    with pytest.raises(MissingResidueError):
        table.residue(5)


def test_residue_compatibility():
    assert residues_compatible(ProfiniteInteger.factorial_series(), range(1, 13))
    with pytest.raises(IncompatibleResiduesError):
        residues_compatible(ProfiniteInteger(table={2: 1, 4: 0}), [2, 4])


def test_welldefinedness_check():
    a = ProfiniteInteger.factorial_series()
    for k in (1, 2, 4):
        for j in range(1, 8 // k + 1):
            for phi in sample_words(2, k, 3, seed=k * 10 + j):
                assert check_profinite_welldefined(a, phi, k, j)
    three = ProfiniteInteger.from_integer(3)
    assert check_profinite_welldefined(three, SimpleAuto(2, 2, [1, 2, 0, 3]), 2, 3)
    bad = ProfiniteInteger(table={2: 1, 4: 0})
    assert not check_profinite_welldefined(bad, SimpleAuto(2, 2, [1, 2, 0, 3]), 2, 2)


def test_degree_examples():
    assert degree(Reflection(2)) == (1, REVERSING)
    assert degree(Profinite(2, 7)) == (1, PRESERVING)
    assert degree(Inner(nu(cycle_perm(4, [0, 1, 2, 3]), 2, 2))) == (2, PRESERVING)
    assert degree(Inner(Element([flip(2), ShiftPower(2, 1)]))) == (1, PRESERVING)
    assert degree(Composite([Reflection(2), Inner(nu(cycle_perm(4, [0, 1]), 2, 2))])) == (2, REVERSING)


@pytest.mark.parametrize("n", [2, 3])
def test_no_defect_up_to_6(n):
    for name, psi in automorphisms(n).items():
        d, _ = degree(psi)
        for k in range(3, 7):
            if k % d == 0:
                assert not defect_scan(psi, k), (name, k)


def test_admissible_level_examples():
    assert admissible_levels(Profinite(2, 5), 8) == [3, 4, 5, 6, 7, 8]
    assert admissible_levels(Inner(nu(cycle_perm(4, [0, 1, 2, 3]), 2, 2)), 8) == [4, 6, 8]
    assert admissible_levels(Reflection(2), 4) == [3, 4]
    assert admissible_levels(Reflection(3), 4) == [2, 3, 4][1:]
    assert not is_admissible(Reflection(2), 2)


def test_alpha_is_conjugation_for_inner():
    g = nu(cycle_perm(8, [0, 5, 3]), 2, 3)
    h = g.rho(3)
    p = cycle_perm(8, [1, 2, 6, 7])
    from stabaut.perms import conjugate_perm
    assert np.array_equal(alpha(Inner(g), p, 3), conjugate_perm(p, h))


def test_serialisation_shapes():
    assert Profinite(2, 5).to_dict()["integer"] == 5
    assert Reflection(2).to_dict()["kind"] == "reflection"
    assert Composite([Reflection(2)]).to_dict()["parts"][0]["kind"] == "reflection"


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_automorphisms_are_multiplicative(seed):
    f, g = sample_words(2, 4, 2, seed=seed)
    for psi in automorphisms(2).values():
        lhs = psi.apply(Element([f, g], n=2))
        rhs = Element([psi.apply(f), psi.apply(g)], n=2)
        assert np.array_equal(lhs.rho(4), rhs.rho(4))
