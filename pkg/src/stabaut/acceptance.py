"""The fifteen acceptance criteria, each an exact property check with a time budget."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import corpus
from .codes import Element, ShiftPower, SimpleAuto, shift
from .perms import centralizer_in_sym, compose_perm, cycle_perm, nu, random_perm, rho
from .psi import Inner, Profinite, ProfiniteInteger, admissible_levels, defect_scan, degree
from .subshifts import (Subshift, finite_approximations, galois_check, is_chain_recurrent,
                        markov_approximation, metric, stabilizer_family, stabilizer_transport_check,
                        stp_continuity_check, verraum_subshift)
from .symbolic import PeriodicPoint
from .twotrack import (commutator_identity_check, gamma_identity_check, maximize_top_period,
                       orbit_separation_check, pair_period, pair_point)
from .verraum import (compose_check, consistency_check, exceptional_swap_check, freeness_check,
                      full_group_conjugation_check, local_verraum, profinite_recovery,
                      shift_commutation_check)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    budget: float = 0.0

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed and self.within_budget else "FAIL"
        note = "" if self.within_budget else " (over time budget)"
        return f"{status} [{self.number:2d}] {self.name}: {self.seconds:.1f}s of {self.budget:.0f}s{note}"

    def to_dict(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "within_budget": self.within_budget, "seconds": round(self.seconds, 3),
                "budget": self.budget, "detail": self.detail}


CRITERIA: dict[int, tuple[str, float, Callable[[], dict]]] = {}


def criterion(number: int, name: str, budget: float):
    def register(fn):
        CRITERIA[number] = (name, budget, fn)
        return fn
    return register


def run(number: int) -> CriterionResult:
    name, budget, fn = CRITERIA[number]
    start = time.perf_counter()
    detail = fn()
    seconds = time.perf_counter() - start
    return CriterionResult(number, name, bool(detail.pop("passed")), detail, seconds, budget)


def run_all(numbers=None, echo: bool = True) -> list[CriterionResult]:
    out = []
    for number in sorted(numbers or CRITERIA):
        result = run(number)
        if echo:
            print(result.line(), flush=True)
        out.append(result)
    return out


def _levels(psi, bound: int) -> list[int]:
    return admissible_levels(psi, bound)


# --------------------------------------------------------------------------

@criterion(1, "section maps: rho after nu is the identity", 5)
def section_maps() -> dict:
    failures = 0
    checked = 0
    for perm in itertools.permutations(range(4)):
        checked += 1
        failures += not np.array_equal(rho(nu(perm, 2, 2), 2), np.array(perm))
    rng = np.random.default_rng(1)
    for n, k in [(2, 3), (2, 4), (3, 3)]:
        for _ in range(200):
            p = random_perm(n**k, rng)
            checked += 1
            failures += not np.array_equal(rho(nu(p, n, k), k), p)
    return {"passed": failures == 0, "checked": checked, "failures": failures}


@criterion(2, "inner realisation recovers the conjugator", 60)
def inner_recovery() -> dict:
    cases, failures = 0, []
    for n in (2, 3):
        for i, g in enumerate(corpus.inner_conjugators(n)):
            psi = Inner(g)
            for k in _levels(psi, 6):
                cases += 1
                if not np.array_equal(local_verraum(psi, k).table, g.rho(k)):
                    failures.append((n, i, k))
    return {"passed": cases > 0 and not failures, "cases": cases, "failures": failures}


@criterion(3, "profinite realisation is a shift by the residues", 30)
def profinite_recovery_check() -> dict:
    failures, cases = [], 0
    for a in (ProfiniteInteger.from_integer(5), ProfiniteInteger.factorial_series()):
        psi = Profinite(2, a)
        for k in _levels(psi, 6):
            cases += 1
            if not np.array_equal(local_verraum(psi, k).table, shift(2, a.residue(k)).rho(k)):
                failures.append(("table", a.name, k))
        expected = a.residues(6)
        got = profinite_recovery(psi, 6)
        if got != expected:
            failures.append(("residues", a.name, got, expected))
    return {"passed": not failures, "tables": cases, "failures": failures}


@criterion(4, "level compatibility and shift commutation", 120)
def compatibility() -> dict:
    failures, pairs, levels = [], 0, 0
    for name, psi in corpus.automorphisms(2).items():
        ks = _levels(psi, 8)
        for k in ks:
            levels += 1
            if not shift_commutation_check(psi, k):
                failures.append(("commute", name, k))
            for big in ks:
                if big > k and big % k == 0:
                    pairs += 1
                    if not consistency_check(psi, k, big // k):
                        failures.append(("consistent", name, k, big))
    return {"passed": not failures and pairs > 0, "pairs": pairs, "levels": levels, "failures": failures}


@criterion(5, "no defective levels", 60)
def defect_emptiness() -> dict:
    defective, scanned = [], 0
    for n in (2, 3):
        for name, psi in corpus.automorphisms(n).items():
            d, _ = degree(psi)
            for k in range(3, 9):
                if k % d or n**k < 8:
                    continue
                scanned += 1
                if defect_scan(psi, k):
                    defective.append((n, name, k))
    return {"passed": not defective and scanned > 0, "scanned": scanned, "defective": defective}


def _inert(word) -> bool:
    from .errors import DimensionUnknownError
    from .perms import is_inert
    try:
        return is_inert(word)
    except DimensionUnknownError:
        return False


@criterion(6, "full-group conjugation on mixed words", 120)
def full_group() -> dict:
    failures, cases, inert_words = [], 0, 0
    for n in (2, 3):
        for name, psi in corpus.automorphisms(n).items():
            for k in _levels(psi, 6):
                sample = corpus.sample_words(n, k, 30, seed=k)
                inert_words += sum(_inert(w) for w in sample)
                cases += 1
                if not full_group_conjugation_check(psi, k, sample):
                    failures.append((n, name, k))
    return {"passed": cases > 0 and not failures, "cases": cases, "failures": failures,
            "inert_words": inert_words, "words": 30 * cases}


@criterion(7, "the fixed-point swap is not realisable", 1)
def exceptional_swap() -> dict:
    reports = {k: exceptional_swap_check(k) for k in (2, 3)}
    ok = all(r["contradiction"] for r in reports.values())
    return {"passed": ok, "reports": {k: {kk: v for kk, v in r.items() if kk != "legal_images"}
                                      for k, r in reports.items()}}


@criterion(8, "centralizers in the symmetric group", 60)
def centralizers() -> dict:
    gens = [SimpleAuto(2, 2, p).rho(4) for p in (cycle_perm(4, [0, 1]), cycle_perm(4, [0, 1, 2, 3]))]
    found = centralizer_in_sym(gens, 16)
    expected = {tuple(range(16)), tuple(shift(2, 2).rho(4).tolist())}
    first = {tuple(int(a) for a in c) for c in found} == expected
    trivial = {}
    for n, k in [(2, 2), (2, 3), (3, 2)]:
        size = n**k
        full = [cycle_perm(size, [0, 1]), np.roll(np.arange(size), -1)]
        c = centralizer_in_sym(full, size)
        trivial[f"{n},{k}"] = len(c) == 1 and np.array_equal(c[0], np.arange(size))
    return {"passed": first and all(trivial.values()), "level2_on_per4": first, "full_sym": trivial,
            "level2_size": len(found)}


@criterion(9, "fixing the stabilizer gives back the subshift", 60)
def galois() -> dict:
    failures = []
    for name, y in corpus.subshift_corpus().items():
        fam = stabilizer_family(y, 6)
        rep = galois_check(y, fam, 6)
        if not rep["holds"]:
            failures.append((name, rep["first_difference"]))
    return {"passed": not failures, "subshifts": len(corpus.subshift_corpus()), "failures": failures}


def _continuity_sequences() -> list[tuple[str, list[Subshift], Subshift]]:
    c = corpus.subshift_corpus()
    out = []
    for name in ("golden-mean", "no-000-111", "no-101", "alternating", "n3-no-11-02"):
        y = c[name]
        out.append((f"finite->{name}", [finite_approximations(y, m) for m in range(1, 7)], y))
    for name in ("golden-mean", "no-0110", "heteroclinic", "n3-no-repeats", "n3-no-012"):
        y = c[name]
        out.append((f"markov->{name}", [markov_approximation(y, m) for m in range(1, 7)], y))
    return out


@criterion(10, "stabilizer membership settles with the language", 60)
def stp_continuity() -> dict:
    failures, checks = [], 0
    for name, seq, y in _continuity_sequences():
        fam = stabilizer_family(y, 4, extra=6)
        for phi in fam[:40]:
            checks += 1
            rep = stp_continuity_check(seq, y, phi)
            if not rep["holds"]:
                failures.append(name)
    return {"passed": not failures and checks > 0, "sequences": 10, "checks": checks,
            "failures": sorted(set(failures))}


@criterion(11, "chain recurrence is closed under approximation", 30)
def chain_recurrence() -> dict:
    failures = []
    recurrent = [y for y in corpus.subshift_corpus().values() if y.kind == "sft" and is_chain_recurrent(y)]
    for y in recurrent:
        for m in range(1, 6):
            if not is_chain_recurrent(markov_approximation(y, m)):
                failures.append(("markov", y.forbidden, m))
        dists = [metric(finite_approximations(y, m), y, 8).value for m in range(1, 7)]
        if any(b > a for a, b in zip(dists, dists[1:])):
            failures.append(("monotone", y.forbidden, dists))
    heteroclinic = Subshift.sft(2, ["10"])
    detected = not is_chain_recurrent(heteroclinic)
    return {"passed": not failures and detected, "recurrent_sfts": len(recurrent),
            "heteroclinic_detected": detected, "failures": failures}


@criterion(12, "realisation on subshifts", 120)
def verraum_on_subshifts() -> dict:
    failures = []
    finite = corpus.finite_corpus()
    c = corpus.subshift_corpus()
    profinite = Profinite(2, 5)
    for name, q in finite.items():
        p = profinite if q.n == 2 else Profinite(3, 5)
        if verraum_subshift(p, q)["image"].points != q.points:
            failures.append(("profinite", name))
    for n in (2, 3):
        g = Element([corpus.flip(n), ShiftPower(n, 1)], n=n)
        psi = Inner(g)
        for name, q in finite.items():
            if q.n != n:
                continue
            expected = {PeriodicPoint(n, g.apply(x.redeclare(max(x.period, 1))).root) for x in q.points}
            if verraum_subshift(psi, q)["image"].points != frozenset(expected):
                failures.append(("inner", name))
    golden = verraum_subshift(Profinite(2, 5), c["golden-mean"])["image"]
    if golden.forbidden != Subshift.sft(2, ["11"]).forbidden:
        failures.append(("profinite-sft", "golden-mean"))
    transports = list(finite.items()) + [
        ("periodized-golden-1", corpus.periodized_words(c["golden-mean"], 1)),
        ("periodized-alternating-1", corpus.periodized_words(c["alternating"], 1))]
    transported = 0
    for i, (name, q) in enumerate(transports):
        autos = list(corpus.automorphisms(q.n).values())
        psi = autos[i % len(autos)]
        fam = stabilizer_family(q, 4, extra=6)
        image = verraum_subshift(psi, q)["image"]
        rep = stabilizer_transport_check(psi, q, image, fam)
        transported += 1
        if not rep["holds"]:
            failures.append(("transport", name))
    return {"passed": not failures, "finite": len(finite), "transported": transported, "failures": failures}


@criterion(13, "cycle types are preserved", 30)
def freeness() -> dict:
    failures = []
    autos = list(corpus.automorphisms(2).items())
    rng = np.random.default_rng(13)
    triples = 0
    while triples < 20:
        name, psi = autos[triples % len(autos)]
        levels = _levels(psi, 6)
        k = int(levels[int(rng.integers(len(levels)))])
        phi = corpus.sample_words(2, k, 1, seed=100 + triples)[0]
        triples += 1
        if not freeness_check(psi, phi, k):
            failures.append((name, k))
    return {"passed": not failures, "triples": triples, "failures": failures}


@criterion(14, "two-track gadget suite", 300)
def two_track() -> dict:
    n = 5
    rng = np.random.default_rng(14)
    comm_fail = 0
    for _ in range(20):
        w1 = tuple(int(a) for a in rng.integers(0, n, int(rng.integers(1, 3))))
        w2 = tuple(int(a) for a in rng.integers(0, n, int(rng.integers(1, 3))))
        pi1, pi2 = rng.permutation(n), rng.permutation(n)
        comm_fail += not commutator_identity_check(n, w1, w2, pi1, pi2, "aba-1b-1")
    max_fail = 0
    pair_points = 0
    for top in itertools.product(range(n), repeat=2):
        for bottom in itertools.product(range(n), repeat=2):
            x = pair_point(n, top, bottom)
            pair_points += 1
            _, y = maximize_top_period(x)
            max_fail += _top_period(y) != pair_period(y)
    for _ in range(200):
        x = pair_point(n, rng.integers(0, n, 3).tolist(), rng.integers(0, n, 3).tolist())
        _, y = maximize_top_period(x)
        max_fail += _top_period(y) != pair_period(y)
    sep = {k: orbit_separation_check(k, n) for k in (1, 2)}
    gamma_ok = gamma_identity_check(n)
    ok = comm_fail == 0 and max_fail == 0 and all(r["holds"] for r in sep.values()) and gamma_ok
    return {"passed": ok, "commutator_failures": comm_fail, "maximize_failures": max_fail,
            "pair_points": pair_points, "separation": {k: {"orbits": r["orbits"], "pairs": r["pairs"],
                                                           "holds": r["holds"]} for k, r in sep.items()},
            "gamma_identity": gamma_ok}


def _top_period(y: PeriodicPoint) -> int:
    from .twotrack import split_tracks
    top, _ = split_tracks(y)
    k = len(top)
    return next(d for d in range(1, k + 1) if k % d == 0 and all(top[i] == top[(i + d) % k] for i in range(k)))


@criterion(15, "realisation reverses the order of composition", 60)
def homomorphism() -> dict:
    autos = corpus.automorphisms(2)
    names = list(autos)
    pairs = [(a, b) for a in names for b in names if a != b][::4][:10]
    failures, checks = [], 0
    for a, b in pairs:
        psi, ups = autos[a], autos[b]
        for k in (3, 4):
            if k in _levels(psi, k) and k in _levels(ups, k):
                checks += 1
                if not compose_check(psi, ups, k)["holds"]:
                    failures.append((a, b, k))
    return {"passed": not failures and checks >= 10, "pairs": len(pairs), "checks": checks,
            "failures": failures}


def main() -> int:
    results = run_all()
    return 0 if all(r.passed and r.within_budget for r in results) else 1
