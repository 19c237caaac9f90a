"""
Two-track gadgets inside the group generated by the shift and level-2 simple automorphisms.

A point of the ``n``-shift read in blocks of length ``2*ell`` is a pair of
tracks over the alphabet ``T = n**ell``: the first half of each block is the
top symbol, the second half the bottom symbol.  With ``ell = 1`` the pair
symbol ``(a, b)`` is the level-2 cell ``a*n + b``.

``g(w, pi)``
    applies ``pi`` to the bottom symbol at ``i`` whenever the top track
    reads ``w`` starting at ``i``;
``gamma``
    shifts the top track one step to the left;
``trackswap``
    exchanges the tracks.

These generate enough of the group to separate orbits of the pair shift,
which the checks at the end of the module exercise.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .codes import (
    Atom,
    BlockCode,
    Element,
    ShiftPower,
    SimpleAuto,
    as_element,
    equals,
    tabulate,
)
from .errors import CapacityError
from .perms import commutator_perm, compose_perm, cycle_perm, is_even
from .symbolic import DEFAULT_CAPACITY, PeriodicPoint, all_words, decode_ints, encode_rows, from_cells, to_cells


def _tracks(arr: np.ndarray, n: int, ell: int):
    cells = to_cells(arr, n, ell)
    return cells[:, 0::2], cells[:, 1::2]


def _join(top: np.ndarray, bottom: np.ndarray, n: int, ell: int) -> np.ndarray:
    cells = np.empty((top.shape[0], 2 * top.shape[1]), dtype=np.int64)
    cells[:, 0::2], cells[:, 1::2] = top, bottom
    return from_cells(cells, n, ell)


class TrackGadget(Atom):
    """``g(w, pi)``: permute the bottom symbol below each occurrence of ``w`` on top."""

    def __init__(self, n: int, w: Sequence[int], pi: Sequence[int], ell: int = 1):
        self.n, self.ell = int(n), int(ell)
        self.level = 2 * self.ell
        self.w = tuple(int(a) for a in w)
        self.pi = np.asarray(pi, dtype=np.int64)
        size = self.n**self.ell
        if not self.w or any(a < 0 or a >= size for a in self.w):
            raise ValueError("w must be a nonempty word over the track alphabet")
        if self.pi.shape != (size,) or not np.array_equal(np.sort(self.pi), np.arange(size)):
            raise ValueError(f"pi must permute range({size})")
        self.pi.setflags(write=False)

    def act(self, arr):
        top, bottom = _tracks(arr, self.n, self.ell)
        hit = np.ones(top.shape, dtype=bool)
        for j, a in enumerate(self.w):
            hit &= np.roll(top, -j, axis=1) == a
        return _join(top, np.where(hit, self.pi[bottom], bottom), self.n, self.ell)

    def inverse(self):
        return TrackGadget(self.n, self.w, np.argsort(self.pi), self.ell)

    def needs(self, lo, hi):
        size = self.level
        return (lo // size) * size, (hi // size) * size + size - 1 + (len(self.w) - 1) * size

    def key(self):
        return ("gadget", self.n, self.ell, self.w, self.pi.tobytes())

    @property
    def dimension(self):
        return 0

    def is_identity(self):
        return bool(np.array_equal(self.pi, np.arange(self.pi.size)))

    def to_dict(self):
        return {"kind": "g", "alphabet": self.n, "ell": self.ell, "w": list(self.w), "pi": self.pi.tolist()}

    def __repr__(self):
        return f"TrackGadget(w={self.w}, pi={self.pi.tolist()})"


class TopShift(Atom):
    """``gamma**power``: the top track moves ``power`` steps to the left."""

    def __init__(self, n: int, power: int = 1, ell: int = 1):
        self.n, self.ell, self.power = int(n), int(ell), int(power)
        self.level = 2 * self.ell

    def act(self, arr):
        top, bottom = _tracks(arr, self.n, self.ell)
        return _join(np.roll(top, -self.power, axis=1), bottom, self.n, self.ell)

    def inverse(self):
        return TopShift(self.n, -self.power, self.ell)

    def needs(self, lo, hi):
        size = self.level
        lo, hi = (lo // size) * size, (hi // size) * size + size - 1
        reach = self.power * size
        return (lo + min(reach, 0), hi + max(reach, 0))

    def key(self):
        return ("topshift", self.n, self.ell, self.power)

    @property
    def dimension(self):
        return self.power * self.ell

    def is_identity(self):
        return self.power == 0

    def to_dict(self):
        return {"kind": "gamma", "alphabet": self.n, "ell": self.ell, "power": self.power}

    def __repr__(self):
        return f"TopShift({self.power})"


def pair_point(n: int, top: Sequence[int], bottom: Sequence[int], ell: int = 1) -> PeriodicPoint:
    top = np.asarray([top], dtype=np.int64)
    bottom = np.asarray([bottom], dtype=np.int64)
    return PeriodicPoint(n, tuple(_join(top, bottom, n, ell)[0].tolist()))


def split_tracks(x: PeriodicPoint, ell: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Top and bottom tracks of ``x`` over one pair period."""
    period = math.lcm(x.minimal_period, 2 * ell)
    top, bottom = _tracks(x.redeclare(period).as_array(), x.n, ell)
    return tuple(top[0].tolist()), tuple(bottom[0].tolist())


def pair_period(x: PeriodicPoint, ell: int = 1) -> int:
    return math.lcm(x.minimal_period, 2 * ell) // (2 * ell)


def make_g(n: int, w: Sequence[int], pi: Sequence[int], ell: int = 1) -> Element:
    return Element([TrackGadget(n, w, pi, ell)], n=n)


def gamma(n: int, ell: int = 1, power: int = 1) -> Element:
    return Element([TopShift(n, power, ell)], n=n)


def trackswap(n: int, ell: int = 1) -> Element:
    size = n**ell
    cells = np.arange(size * size)
    return Element([SimpleAuto(n, 2 * ell, (cells % size) * size + cells // size)], n=n)


def as_pair_code(code: BlockCode) -> BlockCode:
    """Read a level-``2*ell`` code over ``n`` as a level-1 code over the pair alphabet."""
    return BlockCode(code.n**code.level, 1, code.radius, code.rule, code.inverse_rule,
                     code.inverse_radius, label=code.label)


def gamma_identity_check(n: int, ell: int = 1, capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """``gamma == trackswap . sigma**ell``, decided exactly."""
    return equals(gamma(n, ell), Element([trackswap(n, ell), ShiftPower(n, ell)]), capacity)


def _top_conditioned(f: Element) -> bool:
    return all(isinstance(a, (TrackGadget, TopShift)) for a in f.atoms) and \
        sum(a.power for a in f.atoms if isinstance(a, TopShift)) == 0


def _top_window(f: Element) -> tuple[int, int]:
    """Offsets of the top symbols read by the gadgets of a top-conditioned word."""
    lo, hi, c = 0, 0, 0
    for a in reversed(f.atoms):
        if isinstance(a, TopShift):
            c += a.power
        else:
            lo, hi = min(lo, c), max(hi, c + len(a.w) - 1)
    return lo, hi


def track_equal(f, g, n: int, ell: int = 1, capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """Exact equality for words in the gadgets with zero net top shift.

    Such a word keeps the top track and permutes each bottom symbol by a
    permutation determined by the top symbols at fixed offsets.  Periodic
    tops through every word on those offsets, paired with every constant
    bottom, therefore detect any difference.
    """
    f, g = as_element(f), as_element(g)
    if not (_top_conditioned(f) and _top_conditioned(g)):
        return equals(f, g, capacity)
    size = n**ell
    (flo, fhi), (glo, ghi) = _top_window(f), _top_window(g)
    width = max(fhi, ghi) - min(flo, glo) + 1
    if size ** (width + 1) > (capacity or math.inf):
        raise CapacityError(f"{size ** (width + 1)} test points exceed capacity")
    tops = all_words(size, width, capacity)
    arr = np.concatenate([_join(tops, np.full_like(tops, c), n, ell) for c in range(size)])
    return bool(np.array_equal(f.evaluate(arr), g.evaluate(arr)))


def commutator_identity_check(n: int, w1, w2, pi1, pi2, convention: str = "aba-1b-1", ell: int = 1,
                              capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """``[g(w1,pi1), gamma^-|w1| g(w2,pi2) gamma^|w1|] == g(w1 w2, [pi1, pi2])``."""
    w1, w2 = tuple(w1), tuple(w2)
    a = make_g(n, w1, pi1, ell)
    b = Element([TopShift(n, -len(w1), ell), TrackGadget(n, w2, pi2, ell), TopShift(n, len(w1), ell)])
    if convention == "aba-1b-1":
        lhs = Element([a, b, a.inverse(), b.inverse()])
    elif convention == "a-1b-1ab":
        lhs = Element([a.inverse(), b.inverse(), a, b])
    else:
        raise ValueError(f"unknown convention {convention!r}")
    rhs = make_g(n, w1 + w2, commutator_perm(np.asarray(pi1), np.asarray(pi2), convention), ell)
    return track_equal(lhs, rhs, n, ell, capacity)


def even_perm_moving(size: int, a: int, target: int) -> np.ndarray:
    """An even permutation of ``range(size)`` sending ``a`` to ``target``."""
    if a == target:
        return np.arange(size)
    c = next(s for s in range(size) if s not in (a, target))
    return cycle_perm(size, [a, target, c])


def even_perm_fixing(size: int, fixed: int, moved: int) -> np.ndarray:
    """An even permutation fixing ``fixed`` but not ``moved``."""
    others = [s for s in range(size) if s not in (fixed, moved)]
    return cycle_perm(size, [moved] + others[:2])


def _minimal_cyclic_period(seq: tuple) -> int:
    k = len(seq)
    return next(d for d in range(1, k + 1) if k % d == 0 and all(seq[i] == seq[(i + d) % k] for i in range(k)))


def maximize_top_period(x: PeriodicPoint, ell: int = 1, target: int = 0) -> tuple[Element, PeriodicPoint]:
    """An element moving ``x`` to a point whose top track has full pair period.

    Repeatedly writes a constant pattern into the bottom track under one
    period of the top track, which forces the bottom track to a longer
    period, then exchanges the tracks.
    """
    n = x.n
    size = n**ell
    if size < 5:
        raise ValueError("needs a track alphabet with at least five symbols")
    k = pair_period(x, ell)
    y = x.redeclare(2 * ell * k)
    word: list = []
    swap = trackswap(n, ell)
    for _ in range(k + 1):
        top, bottom = split_tracks(y, ell)
        m = _minimal_cyclic_period(top)
        if m == k:
            f = Element(word, n=n)
            return f, y
        gadgets = []
        for j in range(m):
            w = tuple(top[(j + i) % k] for i in range(k))
            gadgets.append(TrackGadget(n, w, even_perm_moving(size, bottom[j], target), ell))
        step = Element([swap] + gadgets, n=n)
        y = step.apply(y).redeclare(2 * ell * k)
        word = list(step.atoms) + word
    raise AssertionError("top period failed to increase")


def _orbit_key(top: tuple, bottom: tuple) -> tuple:
    k = len(top)
    return min(tuple(top[(i + j) % k] for j in range(k)) + tuple(bottom[(i + j) % k] for j in range(k))
               for i in range(k))


def pair_orbits(n: int, k: int, ell: int = 1) -> list[PeriodicPoint]:
    """One representative for each pair-shift orbit of minimal pair period ``k``."""
    size = n**ell
    seen, reps = set(), []
    for row in all_words(size, 2 * k, None).tolist():
        top, bottom = tuple(row[:k]), tuple(row[k:])
        if _minimal_cyclic_period(tuple(zip(top, bottom))) != k:
            continue
        key = _orbit_key(top, bottom)
        if key not in seen:
            seen.add(key)
            reps.append(pair_point(n, top, bottom, ell))
    return reps


def separating_gadget(fx: PeriodicPoint, fy: PeriodicPoint, ell: int = 1) -> Element:
    """A gadget changing ``fx`` but fixing ``fy``; ``fx`` must have full top period."""
    n = fx.n
    size = n**ell
    tx, bx = split_tracks(fx, ell)
    ty, by = split_tracks(fy.redeclare(fx.period), ell)
    k = len(tx)
    rotations = [j for j in range(k) if all(tx[i] == ty[(i + j) % k] for i in range(k))]
    if not rotations:
        theta = even_perm_fixing(size, by[0], bx[0]) if by[0] != bx[0] else \
            even_perm_moving(size, bx[0], (bx[0] + 1) % size)
        return make_g(n, tx, theta, ell)
    j = rotations[0]
    m = next(i for i in range(k) if bx[i] != by[(i + j) % k])
    w = tuple(tx[(m + i) % k] for i in range(k))
    return make_g(n, w, even_perm_fixing(size, by[(m + j) % k], bx[m]), ell)


def _same_orbit(p: PeriodicPoint, q: PeriodicPoint, ell: int) -> bool:
    return any(p.shift(2 * ell * i) == q for i in range(pair_period(p, ell)))


def orbit_separation_check(k: int, n: int = 5, ell: int = 1, full_checks: int = 200, seed: int = 0) -> dict:
    """For all ordered pairs of distinct orbits of minimal pair period ``k``:
    ``f^-1 g f`` moves the first orbit and fixes the second."""
    reps = pair_orbits(n, k, ell)
    arr = np.array([r.redeclare(2 * ell * k).block for r in reps], dtype=np.int64)
    rng = np.random.default_rng(seed)
    failures, pairs = [], 0
    full_pairs = set()
    total = len(reps) * (len(reps) - 1)
    if total:
        for idx in rng.choice(total, size=min(full_checks, total), replace=False).tolist():
            i, j = divmod(idx, len(reps) - 1)
            full_pairs.add((i, j + (j >= i)))
    for i, x in enumerate(reps):
        f, fx = maximize_top_period(x, ell)
        images = f.evaluate(arr)
        for j, y in enumerate(reps):
            if i == j:
                continue
            pairs += 1
            fy = PeriodicPoint(n, tuple(images[j].tolist()))
            g = separating_gadget(fx, fy, ell)
            out = g.evaluate(np.array([fx.block, fy.redeclare(fx.period).block]))
            gfx, gfy = PeriodicPoint(n, tuple(out[0].tolist())), PeriodicPoint(n, tuple(out[1].tolist()))
            ok = gfy == fy and not _same_orbit(gfx, fx, ell)
            if ok and (i, j) in full_pairs:
                c = Element([f.inverse(), g, f], n=n)
                cx, cy = c.apply(x.redeclare(2 * ell * k)), c.apply(y.redeclare(2 * ell * k))
                ok = cy == y and not _same_orbit(cx, x, ell)
            if not ok:
                failures.append((x.to_string(), y.to_string()))
    return {"holds": not failures, "orbits": len(reps), "pairs": pairs, "failures": failures[:10],
            "full_conjugate_checks": len(full_pairs)}


def g2_generators(n: int, ell: int = 1) -> list[Element]:
    """Generators of the group spanned by ``sigma**ell`` and the level ``2*ell`` simple automorphisms."""
    size = n ** (2 * ell)
    swap = np.arange(size)
    swap[0], swap[1] = 1, 0
    cyc = np.roll(np.arange(size), -1)
    return [Element([ShiftPower(n, ell)], n=n), Element([SimpleAuto(n, 2 * ell, swap)], n=n),
            Element([SimpleAuto(n, 2 * ell, cyc)], n=n)]


def g2_rigidity_check(psi, ell: int = 1, bound: int = 4, capacity: int | None = DEFAULT_CAPACITY) -> dict:
    """If ``psi`` fixes the generators above, the realisation is a profinite shift."""
    from .errors import StabautError
    from .verraum import profinite_recovery

    premise = all(equals(psi.apply(g), g, capacity) for g in g2_generators(psi.n, ell))
    try:
        residues = profinite_recovery(psi, bound, capacity)
        conclusion = True
    except StabautError as exc:
        residues, conclusion = str(exc), False
    return {"premise": premise, "conclusion": conclusion, "holds": (not premise) or conclusion,
            "residues": residues}
