import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabaut.codes import Element, ShiftPower, SimpleAuto, shift
from stabaut.corpus import marker_code
from stabaut.errors import DimensionUnknownError, NotARootError, ProperPowerError
from stabaut.perms import (centralizer_in_sym, commutator_perm, compose_perm, conjugate_perm, cycle_perm,
                           cycle_type, cycles, dimension_rep, factorize, inverse_perm, is_even, is_inert, nu,
                           orbits, random_perm, rho, root_analysis, support, transposition)


def brute_centralizer(gens, size):
    out = []
    for p in itertools.permutations(range(size)):
        p = np.array(p)
        if all(np.array_equal(p[g], g[p]) for g in gens):
            out.append(tuple(p.tolist()))
    return sorted(out)


def test_composition_convention():
    p, q = cycle_perm(3, [0, 1]), cycle_perm(3, [1, 2])
    # (p . q)(x) = p(q(x))
    assert compose_perm(p, q).tolist() == [p[q[x]] for x in range(3)]
    assert np.array_equal(compose_perm(p, inverse_perm(p)), np.arange(3))
    h = cycle_perm(3, [0, 1, 2])
    assert np.array_equal(conjugate_perm(p, h), compose_perm(inverse_perm(h), compose_perm(p, h)))


def test_commutator_conventions_differ():
    a, b = cycle_perm(4, [0, 1, 2]), cycle_perm(4, [1, 2, 3])
    c1 = commutator_perm(a, b, "aba-1b-1")
    c2 = commutator_perm(a, b, "a-1b-1ab")
    ai, bi = inverse_perm(a), inverse_perm(b)
    assert np.array_equal(c1, compose_perm(a, compose_perm(b, compose_perm(ai, bi))))
    assert np.array_equal(c2, compose_perm(ai, compose_perm(bi, compose_perm(a, b))))
    with pytest.raises(ValueError):
        commutator_perm(a, b, "ab")


def test_parity_and_cycles():
    assert not is_even(transposition(5, 0, 3))
    assert is_even(cycle_perm(5, [0, 1, 2]))
    assert is_even(compose_perm(transposition(5, 0, 1), transposition(5, 2, 3)))
    p = cycle_perm(6, [0, 2, 4])
    assert cycle_type(p) == (3, 1, 1, 1)
    assert sorted(map(sorted, cycles(p))) == [[0, 2, 4], [1], [3], [5]]
    assert support(p) == {0, 2, 4}


def test_section_maps_exhaustive_small():
    for perm in itertools.permutations(range(4)):
        assert rho(nu(perm, 2, 2), 2).tolist() == list(perm)


def test_rho_of_shift_rotates_words():
    # sigma on Per_3 sends the word abc to bca
    table = rho(shift(2), 3)
    for i in range(8):
        w = [(i >> 2) & 1, (i >> 1) & 1, i & 1]
        v = w[1:] + w[:1]
        assert table[i] == v[0] * 4 + v[1] * 2 + v[2]
    assert sorted(cycle_type(rho(shift(2), 2))) == [1, 1, 2]


def test_free_involution_has_only_2_cycles():
    k, size = 3, 8
    inv = np.array([1, 0, 3, 2, 5, 4, 7, 6])
    assert cycle_type(rho(nu(inv, 2, k), k)) == (2, 2, 2, 2)


def test_factorize():
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(5) == {5: 1}


def test_dimension_examples():
    v = dimension_rep(Element([ShiftPower(12, 1)], n=12))
    assert v.primes == (2, 3) and v.exponents == (2, 1)
    assert dimension_rep(SimpleAuto(2, 2, [1, 0, 2, 3])).is_zero()
    assert dimension_rep(Element([ShiftPower(2, -3)], n=2)).exponents == (-3,)
    with pytest.raises(DimensionUnknownError):
        dimension_rep(marker_code(3))


def test_inertness_examples():
    tau = SimpleAuto(2, 2, [1, 0, 2, 3])
    tau2 = SimpleAuto(2, 2, [0, 2, 1, 3])
    assert is_inert(Element([ShiftPower(2, -1), tau, ShiftPower(2, 1), tau2]))
    assert not is_inert(shift(2))
    f = Element([ShiftPower(2, 3), tau])
    g = Element([tau2, ShiftPower(2, -2)])
    assert is_inert(Element([f, g, f.inverse(), g.inverse()]))


def test_root_analysis_examples():
    assert root_analysis(6, 2, (2, 2)) == 1
    assert root_analysis(2, 3, (3,)) == 1
    assert root_analysis(12, 1, (4, 2)) == 2
    with pytest.raises(ProperPowerError):
        root_analysis(4, 1, (2,))
    with pytest.raises(NotARootError):
        root_analysis(6, 1, (1, 2))
    with pytest.raises(NotARootError):
        root_analysis(2, 2, (3,))


def test_orbits_of_generated_group():
    assert sorted(map(sorted, orbits([cycle_perm(5, [0, 1]), cycle_perm(5, [2, 3])], 5))) == [[0, 1], [2, 3], [4]]


def test_centralizer_of_level2_simple_group_is_shift_square():
    gens = [SimpleAuto(2, 2, p).rho(4) for p in (cycle_perm(4, [0, 1]), cycle_perm(4, [0, 1, 2, 3]))]
    found = {tuple(c.tolist()) for c in centralizer_in_sym(gens, 16)}
    assert found == {tuple(range(16)), tuple(shift(2, 2).rho(4).tolist())}


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2)])
def test_full_symmetric_group_has_trivial_centralizer(n, k):
    size = n**k
    c = centralizer_in_sym([cycle_perm(size, [0, 1]), np.roll(np.arange(size), -1)], size)
    assert len(c) == 1 and np.array_equal(c[0], np.arange(size))


@pytest.mark.parametrize("size", [4, 5, 7])
def test_centralizer_of_long_cycle_is_cyclic(size):
    c = np.roll(np.arange(size), -1)
    found = {tuple(p.tolist()) for p in centralizer_in_sym([c], size)}
    powers = {tuple(np.roll(np.arange(size), -j).tolist()) for j in range(size)}
    assert found == powers


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_centralizer_matches_brute_force(seed, count):
    rng = np.random.default_rng(seed)
    size = 5
    gens = [random_perm(size, rng) for _ in range(count)]
    got = sorted(tuple(p.tolist()) for p in centralizer_in_sym(gens, size))
    assert got == brute_centralizer(gens, size)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_nu_is_a_homomorphism(seed):
    rng = np.random.default_rng(seed)
    p, q = random_perm(8, rng), random_perm(8, rng)
    both = Element([nu(p, 2, 3), nu(q, 2, 3)], n=2)
    assert np.array_equal(rho(both, 3), compose_perm(p, q))
    assert np.array_equal(rho(nu(p, 2, 3), 6)[rho(nu(q, 2, 3), 6)], rho(both, 6))
