import itertools
from fractions import Fraction

import numpy as np
import pytest

from stabaut.codes import Element, ShiftPower, SimpleAuto, identity
from stabaut.corpus import flip, periodized_words, sample_words, subshift_corpus
from stabaut.errors import NoStabilizationError
from stabaut.perms import transposition
from stabaut.psi import Inner, Profinite, Reflection
from stabaut.subshifts import (Subshift, agreement_index, conjugates, finite_approximations, fix, fixes,
                               galois_check, is_chain_recurrent, language, markov_approximation, metric,
                               minimal_forbidden_words, stabilizer_family, stabilizer_transport_check, stp,
                               stp_continuity_check, swap_gadget, verraum_subshift)
from stabaut.symbolic import PeriodicPoint, enumerate_periodic


def P(n, s):
    return PeriodicPoint.from_string(n, s)


def words(strings):
    return frozenset(tuple(int(c) for c in s) for s in strings)


def naive_sft_language(n, forbidden, m, pad):
    """Words of length m sitting in the middle of some allowed word of length m + 2*pad."""
    bad = [tuple(int(c) for c in f) for f in forbidden]
    out = set()
    for w in itertools.product(range(n), repeat=m + 2 * pad):
        if any(w[i:i + len(b)] == b for b in bad for i in range(len(w) - len(b) + 1)):
            continue
        out.add(w[pad:pad + m])
    return frozenset(out)


def naive_finite_language(points, m):
    return frozenset(p.window(i, i + m) for p in points for i in range(p.period))


# -- languages -------------------------------------------------------------

def test_language_examples():
    assert language(Subshift.sft(2, ["11"]), 2) == words(["00", "01", "10"])
    assert len(language(Subshift.full(2), 3)) == 8
    assert language(Subshift.finite(2, [P(2, "01")]), 3) == words(["010", "101"])


def test_golden_mean_counts_are_fibonacci():
    fib = [1, 2]
    for _ in range(8):
        fib.append(fib[-1] + fib[-2])
    y = Subshift.sft(2, ["11"])
    assert [len(language(y, m)) for m in range(1, 8)] == fib[1:8]


@pytest.mark.parametrize("n,forbidden", [(2, ["11"]), (2, ["10"]), (2, ["000", "111"]), (2, ["101", "0110"]),
                                         (3, ["11", "02"]), (3, ["012", "2"])])
def test_sft_language_against_brute_force(n, forbidden):
    y = Subshift.sft(n, forbidden)
    pad = 5 if n == 2 else 3
    for m in range(1, 5 if n == 2 else 4):
        assert language(y, m) == naive_sft_language(n, forbidden, m, pad)


def test_finite_language_against_windows():
    pts = [P(2, "001"), P(2, "1"), P(2, "0110")]
    y = Subshift.finite(2, pts)
    for m in range(1, 7):
        assert language(y, m) == naive_finite_language(pts, m)


def test_membership():
    y = Subshift.sft(2, ["11"])
    for x in enumerate_periodic(2, 6):
        assert y.contains(x) == ("11" not in (x.to_string() * 2))
    stepped = Subshift.sft(2, [(0, (1, 1))], step=2)
    assert stepped.contains(P(2, "1100")) is False
    assert stepped.contains(P(2, "0110")) is True
    assert stepped.contains(P(2, "1001")) is True


def test_empty_subshift():
    assert Subshift.sft(2, ["0", "1"]).is_empty()
    assert Subshift.sft(2, ["01", "10", "00", "11"]).is_empty()
    assert not Subshift.sft(2, ["01"]).is_empty()


def test_round_trip():
    for y in subshift_corpus().values():
        z = Subshift.from_dict(y.to_dict())
        assert all(language(z, m) == language(y, m) for m in range(1, 6))


# -- metric ----------------------------------------------------------------

def test_metric_examples():
    a, b = Subshift.finite(2, [P(2, "0")]), Subshift.finite(2, [P(2, "1")])
    assert metric(a, b).value == Fraction(1, 2)
    assert metric(Subshift.full(2), Subshift.sft(2, ["11"])).value == Fraction(1, 4)
    d = metric(Subshift.full(2), Subshift.full(2), cutoff=6)
    assert d.value == Fraction(1, 2**6) and not d.exact
    assert agreement_index(Subshift.full(2), Subshift.sft(2, ["111"])) == 3


def test_metric_is_ultrametric_on_corpus():
    ys = [y for y in subshift_corpus().values() if y.n == 2]
    for x, y, z in itertools.combinations(ys, 3):
        assert metric(x, z).value <= max(metric(x, y).value, metric(y, z).value)


# -- approximations and chain recurrence ----------------------------------

def test_markov_examples():
    het = markov_approximation(Subshift.sft(2, ["10"]), 2)
    assert language(het, 2) == words(["00", "01", "11"])
    y = Subshift.sft(2, ["101", "11"])
    mk = markov_approximation(y, 3)
    assert all(language(mk, m) == language(y, m) for m in range(1, 8))
    orbit = markov_approximation(Subshift.finite(2, [P(2, "01")]), 2)
    assert language(orbit, 2) == words(["01", "10"])
    assert {p.canonical() for p in enumerate_periodic(2, 6) if orbit.contains(p)} == {P(2, "01")}


def test_chain_recurrence_examples():
    assert not is_chain_recurrent(Subshift.sft(2, ["10"]))
    assert is_chain_recurrent(Subshift.full(2))
    assert is_chain_recurrent(Subshift.sft(2, ["01", "10"]))
    assert is_chain_recurrent(Subshift.finite(2, [P(2, "001"), P(2, "1")]))
    # a path from one cycle to another without return
    assert not is_chain_recurrent(Subshift.sft(3, ["10", "20", "21"]))


def test_finite_approximation_examples():
    full = finite_approximations(Subshift.full(2), 2)
    assert len({q for p in full.points for q in p.orbit()}) == 4
    golden = Subshift.sft(2, ["11"])
    q3 = finite_approximations(golden, 3)
    assert all(golden.contains(p) for p in q3.points)
    assert all(language(q3, m) == language(golden, m) for m in range(1, 4))
    cycle = Subshift.sft(2, ["00", "11"])
    assert {p.canonical() for p in finite_approximations(cycle, 4).points} == {P(2, "01")}


def test_finite_approximations_nested_and_converging():
    for y in [v for v in subshift_corpus().values() if v.kind == "sft" and is_chain_recurrent(v)]:
        prev = None
        for m in range(1, 6):
            q = finite_approximations(y, m)
            if prev is not None:
                assert prev.points <= q.points
            assert agreement_index(q, y, 8) > m
            prev = q


def test_finite_approximations_need_chain_recurrence():
    with pytest.raises(ValueError):
        finite_approximations(Subshift.sft(2, ["10"]), 3)


# -- stabilizers and fixed sets -------------------------------------------

def test_stabilizer_of_fixed_point():
    y = Subshift.finite(2, [P(2, "0")])
    family = [SimpleAuto(2, 2, p) for p in itertools.permutations(range(4))]
    members = stp(y, family)
    assert len(members) == 6
    assert all(int(m.atoms[0].perm[0]) == 0 if m.atoms else True for m in members)


def test_stabilizer_of_full_shift_acts_trivially():
    fam = sample_words(2, 4, 40, seed=2)
    for m in stp(Subshift.full(2), fam):
        assert np.array_equal(m.rho(4), np.arange(16))


def test_swap_gadget_outside_language_stabilizes():
    y = Subshift.sft(2, ["11"])
    for v in [(1, 1), (0, 1, 1), (1, 1, 0)]:
        tau = swap_gadget(2, v, 0, 1)
        assert fixes(tau, y)
        assert all(fixes(c, y) for c in conjugates(tau))
    assert not fixes(swap_gadget(2, (0,), 0, 1), y)


def test_fix_of_single_simple_auto():
    tau = SimpleAuto(2, 2, transposition(4, 0, 1))
    z = fix([tau], 2)
    for x in enumerate_periodic(2, 6):
        assert z.contains(x) == (tau.apply(x) == x)
    assert fix([identity(2)], 2).windows(4) == Subshift.full(2).windows(4)


def test_minimal_forbidden_words():
    assert minimal_forbidden_words(Subshift.sft(2, ["11"]), 4) == [(1, 1)]
    assert minimal_forbidden_words(Subshift.finite(2, [P(2, "0")]), 3) == [(1,)]


@pytest.mark.parametrize("name", ["golden-mean", "orbit-001-and-1", "n3-no-11-02", "no-0110", "n3-orbit-012"])
def test_galois_connection(name):
    y = subshift_corpus()[name]
    assert galois_check(y, stabilizer_family(y, 6), 6)["holds"]


def test_stp_continuity_examples():
    golden = Subshift.sft(2, ["11"])
    seq = [finite_approximations(golden, m) for m in range(1, 6)]
    for phi in stabilizer_family(golden, 3, extra=4)[:20]:
        assert stp_continuity_check(seq, golden, phi)["holds"]
    rep = stp_continuity_check([golden] * 4, golden, swap_gadget(2, (1, 1), 0, 1))
    assert rep["membership_index"] == 0 and rep["member_of_limit"]
    outside = SimpleAuto(2, 1, [1, 0])
    rep = stp_continuity_check(seq, golden, outside)
    assert not rep["member_of_limit"] and rep["holds"]


# -- realisation on subshifts ---------------------------------------------

def test_profinite_fixes_finite_subshifts():
    for y in subshift_corpus().values():
        if y.kind == "finite":
            assert verraum_subshift(Profinite(y.n, 5), y)["image"].points == y.points


def test_inner_image_of_finite_subshift():
    g = Element([flip(2), ShiftPower(2, 1)])
    y = Subshift.finite(2, [P(2, "001"), P(2, "0111")])
    expected = {PeriodicPoint(2, g.apply(p).root) for p in y.points}
    assert verraum_subshift(Inner(g), y)["image"].points == frozenset(expected)


def test_reflection_image_of_orbit():
    x = P(2, "0010111")
    image = verraum_subshift(Reflection(2), Subshift.finite(2, [x]))["image"]
    assert {p.canonical() for p in image.points} == {x.reflect().canonical()}
    assert x.reflect().canonical() != x.canonical()


def test_sft_images():
    golden = Subshift.sft(2, ["11"])
    assert verraum_subshift(Profinite(2, 5), golden)["image"].forbidden == golden.forbidden
    assert verraum_subshift(Reflection(2), golden)["image"].forbidden == golden.forbidden
    flipped = verraum_subshift(Inner(Element([flip(2)])), golden)["image"]
    assert flipped.forbidden == Subshift.sft(2, ["00"]).forbidden


def test_sft_image_needs_degree_one():
    from stabaut.perms import cycle_perm, nu
    with pytest.raises(ValueError):
        verraum_subshift(Inner(nu(cycle_perm(4, [0, 1, 2, 3]), 2, 2)), Subshift.sft(2, ["11"]))


def test_stabilizer_transport_on_periodized_words():
    q = periodized_words(Subshift.sft(2, ["11"]), 1)
    assert q.step == 3
    g = Element([flip(2), ShiftPower(2, 1)])
    for psi in (Inner(g), Reflection(2), Profinite(2, 4)):
        image = verraum_subshift(psi, q)["image"]
        assert stabilizer_transport_check(psi, q, image, stabilizer_family(q, 4, extra=6))["holds"]
