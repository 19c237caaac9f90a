"""
Spatial realisation of automorphisms of the stabilized group.

For an automorphism ``psi`` and an admissible level ``k`` the induced map
``alpha(pi) = rho_k(psi(nu_k(pi)))`` is an automorphism of ``Sym(Per_k)``,
hence conjugation by a unique bijection ``h`` of ``Per_k``.  We normalise
the convention as

    rho_k(psi(phi)) == h^-1 . rho_k(phi) . h      for every phi,

and recover ``h`` from transpositions: ``alpha((x y))`` is the transposition
``(h^-1 x, h^-1 y)``, so two transpositions through ``x`` share exactly the
point ``h^-1 x``.

With this convention composition reverses order: the table of
``psi . upsilon`` is ``h_upsilon . h_psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .symbolic import check_capacity
from .codes import Element, as_element, per_array, reflection_table, shift
from .errors import (
    AlignmentError,
    InconsistentResidueError,
    NoAdmissibleLevelError,
    NotConjugationError,
    NotOrbitPreservingError,
    VerificationError,
)
from .perms import (
    compose_perm,
    conjugate_perm,
    cycle_type,
    inverse_perm,
    random_perm,
    transposition,
)
from .psi import (
    PRESERVING,
    REVERSING,
    Composite,
    GroupAutomorphism,
    Reflection,
    admissible_levels,
    alpha,
    degree,
)
from .symbolic import DEFAULT_CAPACITY, PeriodicPoint, encode_rows, word_to_int

RANDOM_CHECKS = 20


@dataclass
class VerraumTable:
    """The bijection ``h`` of ``Per_k`` with the checks performed on it."""

    n: int
    level: int
    table: np.ndarray
    checks: dict = field(default_factory=dict)

    @property
    def inverse(self) -> np.ndarray:
        return inverse_perm(self.table)

    def image(self, x: PeriodicPoint) -> PeriodicPoint:
        x = x.redeclare(self.level)
        return PeriodicPoint.from_index(self.n, self.level, int(self.table[x.index]))

    def to_dict(self) -> dict:
        return {"level": self.level, "table": self.table.tolist(), "checks": self.checks}


def _transposition_image(psi, size, k, a, b, cache, capacity):
    key = (min(a, b), max(a, b))
    if key not in cache:
        img = alpha(psi, transposition(size, a, b), k, capacity)
        moved = np.flatnonzero(img != np.arange(size))
        if len(moved) != 2 or img[moved[0]] != moved[1]:
            raise NotConjugationError(f"image of the transposition ({a} {b}) is not a transposition")
        cache[key] = (int(moved[0]), int(moved[1]))
    return cache[key]


def local_verraum_direct(psi: GroupAutomorphism, k: int, seed: int = 0, partner_offset: int = 1,
                         capacity: int | None = DEFAULT_CAPACITY) -> VerraumTable:
    """Recover ``h`` from transposition images without using the orientation."""
    size = psi.n**k
    if size < 8:
        raise NoAdmissibleLevelError(f"Per_{k} has fewer than 8 points")
    cache: dict = {}
    h_inv = np.empty(size, dtype=np.int64)
    for x in range(size):
        y1 = (x + partner_offset) % size
        y2 = (x + partner_offset + 1) % size
        if y1 == x:
            y1, y2 = (x + 1) % size, (x + 2) % size
        s1 = set(_transposition_image(psi, size, k, x, y1, cache, capacity))
        s2 = set(_transposition_image(psi, size, k, x, y2, cache, capacity))
        common = s1 & s2
        if len(common) != 1:
            raise NotConjugationError(f"transposition images through {x} share {len(common)} points")
        h_inv[x] = common.pop()
    if len(set(h_inv.tolist())) != size:
        raise NotConjugationError("recovered map is not a bijection")
    h = inverse_perm(h_inv)
    for (a, b), img in cache.items():
        if set(img) != {int(h_inv[a]), int(h_inv[b])}:
            raise VerificationError(f"transposition ({a} {b}) is not conjugated by h")
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_CHECKS):
        p = random_perm(size, rng)
        if not np.array_equal(alpha(psi, p, k, capacity), conjugate_perm(p, h)):
            raise VerificationError("random permutation is not conjugated by h")
    return VerraumTable(psi.n, k, h, {"transpositions": len(cache), "random": RANDOM_CHECKS})


def local_verraum(psi: GroupAutomorphism, k: int, seed: int = 0, route: str = "auto",
                  capacity: int | None = DEFAULT_CAPACITY) -> VerraumTable:
    """The bijection of ``Per_k`` realising ``psi`` at an admissible level ``k``.

    For orientation-reversing ``psi`` the default route composes with the
    reflection first, recovers the table of the orientation-preserving
    product and then precomposes with the reflection of ``Per_k``.
    """
    key = ("local", k, route)
    if key in psi._cache:
        return psi._cache[key]
    check_capacity(psi.n**k, capacity, f"Per_{k}")
    if k not in admissible_levels(psi, k, capacity):
        raise NoAdmissibleLevelError(f"level {k} is not admissible")
    d, orientation = degree(psi, capacity=capacity)
    if route == "auto" and orientation == REVERSING:
        preserving = Composite([psi, Reflection(psi.n)])
        base = local_verraum_direct(preserving, k, seed, capacity=capacity)
        xi = reflection_table(psi.n, k)
        result = VerraumTable(psi.n, k, compose_perm(base.table, xi), dict(base.checks, route="reflection"))
    else:
        result = local_verraum_direct(psi, k, seed, capacity=capacity)
        result.checks["route"] = "direct"
    result.checks.update(degree=d, orientation=orientation)
    psi._cache[key] = result
    return result


def embedding(n: int, k: int, ell: int) -> np.ndarray:
    """Indices in ``Per_{k*ell}`` of the points of ``Per_k``."""
    words = per_array(n, k, None)
    return encode_rows(np.tile(words, (1, ell)), n)


def consistency_check(psi: GroupAutomorphism, k: int, ell: int,
                      capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """The table at level ``k*ell`` restricts to the table at level ``k``."""
    small = local_verraum(psi, k, capacity=capacity).table
    big = local_verraum(psi, k * ell, capacity=capacity).table
    emb = embedding(psi.n, k, ell)
    return bool(np.array_equal(big[emb], emb[small]))


def shift_commutation_check(psi: GroupAutomorphism, k: int,
                            capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """``h`` commutes with ``sigma**d`` (preserving) or inverts it (reversing)."""
    d, orientation = degree(psi, capacity=capacity)
    h = local_verraum(psi, k, capacity=capacity).table
    s = shift(psi.n, d).rho(k)
    if orientation == PRESERVING:
        return bool(np.array_equal(compose_perm(h, s), compose_perm(s, h)))
    return bool(np.array_equal(compose_perm(h, compose_perm(s, inverse_perm(h))), inverse_perm(s)))


def smallest_admissible_level(psi: GroupAutomorphism, period: int, limit: int = 24,
                              capacity: int | None = DEFAULT_CAPACITY) -> int:
    d, _ = degree(psi, capacity=capacity)
    for k in range(period, limit + 1, period):
        if k >= 3 and k % d == 0 and psi.n**k >= 8:
            if psi.n**k > (capacity or math.inf):
                break
            if k in admissible_levels(psi, k, capacity):
                return k
    raise NoAdmissibleLevelError(f"no admissible level for period {period} up to {limit}")


def global_verraum(psi: GroupAutomorphism, x: PeriodicPoint,
                   capacity: int | None = DEFAULT_CAPACITY) -> PeriodicPoint:
    """Image of a periodic point under the spatial realisation of ``psi``."""
    k = smallest_admissible_level(psi, x.minimal_period, capacity=capacity)
    y = local_verraum(psi, k, capacity=capacity).image(x)
    return PeriodicPoint(y.n, y.root)


def full_group_conjugation_check(psi: GroupAutomorphism, k: int, sample,
                                 capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """``rho_k(psi(phi)) == h^-1 rho_k(phi) h`` for every sampled ``phi``."""
    h = local_verraum(psi, k, capacity=capacity).table
    for phi in sample:
        phi = as_element(phi)
        if k % phi.level:
            raise AlignmentError(f"sample element of level {phi.level} does not act on Per_{k}")
        lhs = psi.apply(phi).rho(k, capacity)
        if not np.array_equal(lhs, conjugate_perm(phi.rho(k, capacity), h)):
            return False
    return True


def profinite_recovery(psi: GroupAutomorphism, bound: int,
                       capacity: int | None = DEFAULT_CAPACITY) -> dict[int, int]:
    """Residues ``m_l`` with ``h = sigma**m_l`` on ``Per_l`` for ``l = 1..bound``.

    Requires the realisation to preserve every shift orbit.
    """
    residues: dict[int, int] = {}
    for ell in range(1, bound + 1):
        k = smallest_admissible_level(psi, ell, limit=max(24, ell), capacity=capacity)
        table = local_verraum(psi, k, capacity=capacity).table
        emb = embedding(psi.n, ell, k // ell)
        back = {int(v): i for i, v in enumerate(emb)}
        words = per_array(psi.n, ell, None)
        constraints = []
        for i in range(psi.n**ell):
            x = PeriodicPoint(psi.n, tuple(words[i].tolist()))
            target = back.get(int(table[emb[i]]))
            if target is None:
                raise NotOrbitPreservingError(f"image of {x.to_string()} leaves Per_{ell}", witness=x)
            y = PeriodicPoint.from_index(psi.n, ell, target)
            p = x.minimal_period
            js = [j for j in range(p) if x.shift(j) == y]
            if not js:
                raise NotOrbitPreservingError(f"image of {x.to_string()} is outside its orbit", witness=x)
            constraints.append((js[0], p))
        candidates = [m for m in range(ell) if all(m % p == j for j, p in constraints)]
        if len(candidates) != 1:
            raise InconsistentResidueError(f"no single residue mod {ell} fits every point")
        residues[ell] = candidates[0]
    for m in residues:
        for big in residues:
            if big % m == 0 and residues[big] % m != residues[m]:
                raise InconsistentResidueError(f"residues mod {m} and {big} are incompatible")
    return residues


def orbit_structure(phi, k: int, capacity: int | None = DEFAULT_CAPACITY) -> tuple[int, ...]:
    return cycle_type(as_element(phi).rho(k, capacity))


def freeness_check(psi: GroupAutomorphism, phi, k: int,
                   capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """``phi`` and ``psi(phi)`` have the same cycle type on ``Per_k``."""
    return orbit_structure(phi, k, capacity) == orbit_structure(psi.apply(phi), k, capacity)


def compose_check(psi: GroupAutomorphism, upsilon: GroupAutomorphism, k: int,
                  capacity: int | None = DEFAULT_CAPACITY) -> dict:
    """Compare the table of ``psi . upsilon`` with both products of the factor tables."""
    combined = local_verraum(Composite([upsilon, psi]), k, capacity=capacity).table
    hp = local_verraum(psi, k, capacity=capacity).table
    hu = local_verraum(upsilon, k, capacity=capacity).table
    reversed_order = bool(np.array_equal(combined, compose_perm(hu, hp)))
    same_order = bool(np.array_equal(combined, compose_perm(hp, hu)))
    return {"holds": reversed_order, "reversed_order": reversed_order, "same_order": same_order}


def exceptional_swap_check(k: int) -> dict:
    """Why swapping the two fixed points of the 2-shift cannot be realised.

    The candidate realisation ``s`` exchanges ``0^inf`` and ``1^inf``.  For
    ``phi`` the level-2 simple automorphism cycling ``11 -> 00 -> 01 -> 10``,
    the conjugate ``s^-1 phi s`` sends ``0^inf`` to ``1^inf``.  Any block code
    doing that writes ``11 11`` wherever it reads a long enough run of zeros,
    so on ``z = (0^2k 0 1 0^2k)^inf`` it must produce ``1111``.  Conjugating
    by an orbit-preserving map only allows the orbits of ``phi(z)`` and
    ``phi(sigma z)``, neither of which contains ``1111``.
    """
    n = 2
    phi = Element([_cycle_auto()], n=n)
    zero, one = PeriodicPoint(n, (0,)), PeriodicPoint(n, (1,))

    def swap(p):
        return one if p == zero else zero if p == one else p

    conj_zero = swap(phi.apply(swap(zero).redeclare(2)))
    z = PeriodicPoint(n, (0,) * (2 * k) + (0, 1) + (0,) * (2 * k))
    legal = [phi.apply(z), phi.apply(z.shift(1))]
    pattern = (1, 1, 1, 1)

    def contains(p, pat):
        return any(p.window(i, i + len(pat)) == pat for i in range(p.period))

    # largest radius (in 2-cells) for which two adjacent output cells of z see only zeros
    forced_radius = -1
    for r in range(0, 2 * k + 1):
        if _adjacent_zero_cells(z, r):
            forced_radius = r
    return {
        "k": k,
        "z": z.to_string(),
        "conjugate_sends_zero_to_one": conj_zero == one,
        "legal_images": [p.to_string() for p in legal],
        "legal_images_avoid_pattern": not any(contains(p, pattern) for p in legal),
        "forced_radius": forced_radius,
        "forced_pattern": forced_radius >= 0,
        "contradiction": conj_zero == one and forced_radius >= 0
        and not any(contains(p, pattern) for p in legal),
    }


def _cycle_auto():
    from .codes import SimpleAuto

    # 11 -> 00 -> 01 -> 10 -> 11, indices 3 -> 0 -> 1 -> 2 -> 3
    return SimpleAuto(2, 2, [1, 2, 3, 0])


def _adjacent_zero_cells(z: PeriodicPoint, r: int) -> bool:
    cells = z.period // 2
    for c in range(cells):
        lo, hi = 2 * (c - r), 2 * (c + 1 + r) + 2
        if all(z[i] == 0 for i in range(lo, hi)):
            return True
    return False


def continuity_probe(psi: GroupAutomorphism, depth: int,
                     capacity: int | None = DEFAULT_CAPACITY) -> list[tuple[int, int | None]]:
    """Worst output agreement radius for each input agreement radius.

    Pairs range over ``Per_l`` for ``l <= depth``.  Entry ``(r, s)`` says that
    whenever two points agree on ``[-r, r]`` their images agree on ``[-s, s]``;
    ``s is None`` means no pair of distinct points reached radius ``r``.
    """
    worst: dict[int, int] = {}
    for ell in range(1, depth + 1):
        words = per_array(psi.n, ell, capacity)
        k = smallest_admissible_level(psi, ell, capacity=capacity)
        table = local_verraum(psi, k, capacity=capacity).table
        emb = embedding(psi.n, ell, k // ell)
        images_idx = table[emb]
        image_words = per_array(psi.n, k, capacity)[images_idx]
        rin = _pair_agreement(words, ell)
        rout = _pair_agreement(image_words, k)
        mask = ~np.eye(len(words), dtype=bool)
        for a, b in zip(rin[mask].tolist(), rout[mask].tolist()):
            for r in range(-1, a + 1):
                worst[r] = min(worst.get(r, b), b)
    top = max(worst) if worst else -1
    return [(r, worst.get(r)) for r in range(-1, top + 1)]


def _pair_agreement(words: np.ndarray, period: int) -> np.ndarray:
    """Agreement radius for every pair of rows (rows equal as points give ``period``)."""
    size = len(words)
    radius = np.full((size, size), -1, dtype=np.int64)
    alive = np.ones((size, size), dtype=bool)
    for r in range(period + 1):
        left, right = words[:, (-r) % period], words[:, r % period]
        agree = (left[:, None] == left[None, :]) & (right[:, None] == right[None, :])
        alive &= agree
        radius[alive] = r
    return radius
