"""
Permutations of finite sets of periodic points.

Permutations are integer arrays ``p`` with ``p[i]`` the image of ``i``.
Composition follows function notation, ``compose_perm(p, q)[i] == p[q[i]]``.
On ``Per_k`` the index of a point is the integer encoding of its block, so a
permutation of ``Per_k`` is literally a permutation of the ``k``-words and
``nu`` (embedding as a simple automorphism) is a change of type only.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import AtomLike, Element, SimpleAuto, as_element
from .errors import DimensionUnknownError, NotARootError, ProperPowerError, SearchBudgetError
from .symbolic import DEFAULT_CAPACITY


def identity_perm(size: int) -> np.ndarray:
    return np.arange(size, dtype=np.int64)


def compose_perm(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.asarray(p)[np.asarray(q)]


def inverse_perm(p: np.ndarray) -> np.ndarray:
    return np.argsort(p)


def conjugate_perm(p: np.ndarray, h: np.ndarray) -> np.ndarray:
    """``h^-1 . p . h``."""
    return compose_perm(inverse_perm(h), compose_perm(p, h))


def commutator_perm(p: np.ndarray, q: np.ndarray, convention: str = "aba-1b-1") -> np.ndarray:
    pi, qi = inverse_perm(p), inverse_perm(q)
    if convention == "aba-1b-1":
        return compose_perm(p, compose_perm(q, compose_perm(pi, qi)))
    if convention == "a-1b-1ab":
        return compose_perm(pi, compose_perm(qi, compose_perm(p, q)))
    raise ValueError(f"unknown commutator convention {convention!r}")


def transposition(size: int, a: int, b: int) -> np.ndarray:
    p = identity_perm(size)
    p[a], p[b] = b, a
    return p


def cycle_perm(size: int, points: Sequence[int]) -> np.ndarray:
    """The cycle ``points[0] -> points[1] -> ... -> points[0]``."""
    p = identity_perm(size)
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        p[a] = b
    return p


def random_perm(size: int, rng: np.random.Generator) -> np.ndarray:
    return rng.permutation(size).astype(np.int64)


def cycles(p: np.ndarray) -> list[list[int]]:
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc, i = [], start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = int(p[i])
        out.append(cyc)
    return out


def cycle_type(p: np.ndarray) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def is_even(p: np.ndarray) -> bool:
    return (len(p) - len(cycles(p))) % 2 == 0


def support(p: np.ndarray) -> set[int]:
    return set(np.flatnonzero(np.asarray(p) != np.arange(len(p))).tolist())


def nu(perm: Sequence[int], n: int, k: int) -> Element:
    """Embed a permutation of ``Per_k`` as the simple automorphism permuting ``k``-blocks."""
    return Element([SimpleAuto(n, k, perm)], n=n, level=k)


def rho(f: AtomLike, k: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
    return as_element(f).rho(k, capacity)


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class DimensionVector:
    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.exponents)

    def __iter__(self):
        return iter(self.exponents)


def dimension_rep(word: AtomLike) -> DimensionVector:
    """Image in ``Z**l`` where ``n = p_1**k_1 ... p_l**k_l``: net shift times ``(k_1..k_l)``."""
    word = as_element(word)
    total = word.dimension
    if total is None:
        raise DimensionUnknownError("word contains an explicit block code of unknown dimension")
    fac = factorize(word.n)
    primes = tuple(sorted(fac))
    return DimensionVector(primes, tuple(total * fac[p] for p in primes))


def is_inert(word: AtomLike) -> bool:
    return dimension_rep(word).is_zero()


def root_analysis(n: int, r: int, dim: Sequence[int]) -> int:
    """Exponent ``t`` with ``gamma**r == sigma**(r*t)`` given the dimension of ``gamma**r``.

    ``dim`` is the dimension vector of the shift power ``gamma**r = sigma**s``;
    the result is ``t = s / r``.
    """
    fac = factorize(n)
    ks = [fac[p] for p in sorted(fac)]
    if math.gcd(*ks) > 1:
        raise ProperPowerError(f"{n} is a proper power")
    dim = list(dim)
    if len(dim) != len(ks):
        raise ValueError("dimension vector has the wrong length")
    s = dim[0] // ks[0]
    if any(d != s * k for d, k in zip(dim, ks)):
        raise NotARootError(f"{dim} is not a multiple of the shift dimension {ks}")
    if s % r:
        raise NotARootError(f"s={s} is not divisible by r={r}")
    return s // r


def orbits(generators: Sequence[np.ndarray], size: int) -> list[list[int]]:
    seen = np.zeros(size, dtype=bool)
    out = []
    for start in range(size):
        if seen[start]:
            continue
        orbit, queue = [start], deque([start])
        seen[start] = True
        while queue:
            x = queue.popleft()
            for g in generators:
                y = int(g[x])
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    queue.append(y)
        out.append(orbit)
    return out


def centralizer_in_sym(generators: Sequence[np.ndarray], size: int | None = None,
                       budget: int = 10**7) -> list[np.ndarray]:
    """All permutations commuting with every generator, by backtracking.

    Choosing the image of one point of a generator orbit determines the
    image of the whole orbit, so the search branches once per orbit.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if size is None:
        size = len(gens[0])
    if not gens:
        raise ValueError("need at least one generator or use the full symmetric group")
    orbs = orbits(gens, size)
    orbit_of = np.empty(size, dtype=np.int64)
    for i, o in enumerate(orbs):
        orbit_of[o] = i
    # spanning trees: (point, parent, generator)
    trees = []
    for o in orbs:
        tree, seen, queue = [], {o[0]}, deque([o[0]])
        while queue:
            x = queue.popleft()
            for gi, g in enumerate(gens):
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, gi))
                    queue.append(y)
        trees.append(tree)
    results: list[np.ndarray] = []
    image = np.full(size, -1, dtype=np.int64)
    used = np.zeros(size, dtype=bool)
    nodes = 0

    def assign(idx: int, target: int) -> list[int] | None:
        o = orbs[idx]
        if len(orbs[orbit_of[target]]) != len(o):
            return None
        placed = [o[0]]
        image[o[0]] = target
        if used[target]:
            image[o[0]] = -1
            return None
        used[target] = True
        for y, x, gi in trees[idx]:
            t = int(gens[gi][image[x]])
            if used[t]:
                for p in placed:
                    used[image[p]] = False
                    image[p] = -1
                return None
            image[y] = t
            used[t] = True
            placed.append(y)
        for x in o:
            for g in gens:
                if image[g[x]] != g[image[x]]:
                    for p in placed:
                        used[image[p]] = False
                        image[p] = -1
                    return None
        return placed

    def search(idx: int):
        nonlocal nodes
        if idx == len(orbs):
            results.append(image.copy())
            return
        for target in range(size):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetError(f"centralizer search exceeded {budget} nodes")
            placed = assign(idx, target)
            if placed is None:
                continue
            search(idx + 1)
            for p in placed:
                used[image[p]] = False
                image[p] = -1

    search(0)
    return results
