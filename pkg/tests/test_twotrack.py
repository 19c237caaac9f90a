import itertools

import numpy as np
import pytest

from stabaut.codes import Element, ShiftPower, SimpleAuto, equals, identity, shift
from stabaut.perms import commutator_perm, cycle_perm, inverse_perm, nu
from stabaut.psi import Inner, Profinite
from stabaut.symbolic import PeriodicPoint
from stabaut.twotrack import (TopShift, TrackGadget, as_pair_code, commutator_identity_check, even_perm_fixing,
                              even_perm_moving, g2_rigidity_check, gamma, gamma_identity_check, make_g,
                              maximize_top_period, orbit_separation_check, pair_orbits, pair_period, pair_point,
                              separating_gadget, split_tracks, track_equal, trackswap)
from stabaut.codes import tabulate


def naive_g(w, pi, top, bottom):
    k = len(top)
    out = list(bottom)
    for i in range(k):
        if all(top[(i + j) % k] == w[j] for j in range(len(w))):
            out[i] = pi[bottom[i]]
    return tuple(top), tuple(out)


def naive_gamma(top, bottom):
    return tuple(top[1:] + top[:1]), tuple(bottom)


def min_period(seq):
    k = len(seq)
    return next(d for d in range(1, k + 1) if k % d == 0 and all(seq[i] == seq[(i + d) % k] for i in range(k)))


def test_pair_encoding_round_trip():
    x = pair_point(5, (1, 2, 3), (4, 0, 2))
    assert x.block == (1, 4, 2, 0, 3, 2)
    assert split_tracks(x) == ((1, 2, 3), (4, 0, 2))
    assert pair_period(x) == 3
    assert pair_period(pair_point(5, (1, 1), (2, 2))) == 1


def test_gadget_against_oracle(rng):
    n = 5
    for _ in range(30):
        k = int(rng.integers(1, 5))
        w = tuple(int(a) for a in rng.integers(0, n, int(rng.integers(1, 3))))
        pi = rng.permutation(n)
        top, bottom = rng.integers(0, n, k).tolist(), rng.integers(0, n, k).tolist()
        image = make_g(n, w, pi).apply(pair_point(n, top, bottom))
        assert split_tracks(image.redeclare(2 * k)) == naive_g(w, pi.tolist(), top, bottom)


def test_gamma_against_oracle():
    top, bottom = [1, 2, 3, 4], [0, 0, 1, 1]
    image = gamma(5).apply(pair_point(5, top, bottom))
    assert split_tracks(image.redeclare(8)) == naive_gamma(top, bottom)
    const = pair_point(5, [2, 2, 2], [0, 1, 3])
    assert gamma(5).apply(const) == const


def test_gamma_power_is_identity_on_periodic_points():
    k = 3
    for top in itertools.product(range(5), repeat=k):
        x = pair_point(5, top, (0, 1, 2))
        assert gamma(5, power=k).apply(x) == x


def test_single_symbol_gadget_is_simple_auto():
    n, b = 5, 3
    pi = np.array([1, 2, 0, 4, 3])
    cells = np.arange(n * n)
    top, bottom = cells // n, cells % n
    perm = np.where(top == b, top * n + pi[bottom], cells)
    assert equals(make_g(n, (b,), pi), SimpleAuto(n, 2, perm))
    assert make_g(n, (b,), np.arange(n)).atoms == ()


def test_gadget_inverse_and_pair_shift_commutation():
    n, w, pi = 5, (1, 2), np.array([1, 2, 0, 3, 4])
    g = make_g(n, w, pi)
    assert equals(Element([g, make_g(n, w, inverse_perm(pi))]), identity(n))
    assert equals(Element([g, ShiftPower(n, 2)]), Element([ShiftPower(n, 2), g]))
    code = as_pair_code(tabulate(g))
    assert code.n == 25 and code.level == 1


def test_gamma_identity():
    for n in (3, 5):
        assert gamma_identity_check(n)
    assert gamma_identity_check(2, ell=2)
    assert equals(gamma(5), Element([trackswap(5), ShiftPower(5, 1)]))
    assert not equals(gamma(5), Element([ShiftPower(5, 1), trackswap(5)]))


def test_track_equal_agrees_with_exact_equality():
    n = 2
    a = make_g(n, (1,), [1, 0])
    b = Element([TopShift(n, -1), TrackGadget(n, (0,), [1, 0]), TopShift(n, 1)])
    lhs = Element([a, b, a.inverse(), b.inverse()])
    assert track_equal(lhs, make_g(n, (1, 0), [0, 1]), n) == equals(lhs, make_g(n, (1, 0), [0, 1]))
    assert track_equal(a, a, n) and not track_equal(a, b, n)


@pytest.mark.parametrize("convention", ["aba-1b-1", "a-1b-1ab"])
def test_commutator_identity_both_conventions(convention, rng):
    n = 5
    for _ in range(10):
        w1 = tuple(int(a) for a in rng.integers(0, n, int(rng.integers(1, 3))))
        w2 = tuple(int(a) for a in rng.integers(0, n, 1))
        pi1, pi2 = rng.permutation(n), rng.permutation(n)
        assert commutator_identity_check(n, w1, w2, pi1, pi2, convention)


def test_commutator_examples():
    n = 5
    pi1, pi2 = cycle_perm(5, [0, 1, 2]), cycle_perm(5, [2, 3, 4])
    assert commutator_identity_check(n, (1,), (2,), pi1, pi2)
    assert not np.array_equal(commutator_perm(pi1, pi2), np.arange(5))
    # commuting permutations: both sides are the identity
    c1, c2 = cycle_perm(5, [0, 1]), cycle_perm(5, [2, 3])
    assert commutator_identity_check(n, (1, 4), (0,), c1, c2)
    a = make_g(n, (1, 4), c1)
    b = Element([TopShift(n, -2), TrackGadget(n, (0,), c2), TopShift(n, 2)])
    assert track_equal(Element([a, b, a.inverse(), b.inverse()]), identity(n), n)


def test_mixed_conventions_fail():
    n = 5
    pi1, pi2 = cycle_perm(5, [0, 1, 2]), cycle_perm(5, [1, 3, 4])
    w1, w2 = (1,), (2,)
    a = make_g(n, w1, pi1)
    b = Element([TopShift(n, -1), TrackGadget(n, w2, pi2), TopShift(n, 1)])
    lhs = Element([a, b, a.inverse(), b.inverse()])
    rhs = make_g(n, w1 + w2, commutator_perm(pi1, pi2, "a-1b-1ab"))
    assert not track_equal(lhs, rhs, n)


def test_even_helpers():
    from stabaut.perms import is_even
    p = even_perm_moving(5, 2, 0)
    assert p[2] == 0 and is_even(p)
    q = even_perm_fixing(5, 1, 3)
    assert q[1] == 1 and q[3] != 3 and is_even(q)


def test_maximize_examples():
    x = pair_point(5, (0, 0, 0), (0, 1, 2))
    f, y = maximize_top_period(x)
    top, _ = split_tracks(y)
    assert min_period(top) == 3
    assert f.apply(x.redeclare(6)) == y
    z = pair_point(5, (0, 1, 2), (0, 0, 0))
    f, y = maximize_top_period(z)
    assert len(f.atoms) == 0 and y == z
    with pytest.raises(ValueError):
        maximize_top_period(pair_point(2, (0,), (1,)))


def test_maximize_exhaustive_period_two():
    for top in itertools.product(range(5), repeat=2):
        for bottom in itertools.product(range(5), repeat=2):
            x = pair_point(5, top, bottom)
            f, y = maximize_top_period(x)
            t, _ = split_tracks(y)
            assert min_period(t) == pair_period(y) == pair_period(x)


def test_orbit_counts():
    assert len(pair_orbits(5, 1)) == 25
    assert len(pair_orbits(5, 2)) == (625 - 25) // 2


def test_separating_gadget_cases():
    fx = pair_point(5, (0, 1), (2, 2))
    fy = pair_point(5, (1, 0), (2, 3))   # same top orbit, bottoms differ
    g = separating_gadget(fx, fy)
    assert g.apply(fy.redeclare(4)) == fy and g.apply(fx.redeclare(4)) != fx
    fz = pair_point(5, (3, 4), (2, 2))   # different top orbit
    g = separating_gadget(fx, fz)
    assert g.apply(fz.redeclare(4)) == fz and g.apply(fx.redeclare(4)) != fx


def test_orbit_separation_k1():
    rep = orbit_separation_check(1, 5)
    assert rep["holds"] and rep["pairs"] == 600


@pytest.mark.slow
def test_orbit_separation_k2():
    rep = orbit_separation_check(2, 5, full_checks=50)
    assert rep["holds"] and rep["orbits"] == 300


def test_rigidity_examples():
    rep = g2_rigidity_check(Profinite(5, 4))
    assert rep["premise"] and rep["conclusion"] and rep["holds"]
    rep = g2_rigidity_check(Inner(shift(5, 2)))
    assert rep["premise"] and rep["residues"] == {m: 2 % m for m in range(1, 5)}
    tau = nu(cycle_perm(25, [0, 1, 2]), 5, 2)
    rep = g2_rigidity_check(Inner(tau))
    assert not rep["premise"] and rep["holds"]
