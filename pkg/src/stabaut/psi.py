"""
Concrete automorphisms of the stabilized automorphism group.

Four constructions are available, all acting on :class:`~stabaut.codes.Element`
words without expanding them:

* :class:`Inner` conjugates by a fixed element, ``phi -> g^-1 phi g``;
* :class:`Reflection` conjugates by the coordinate reversal;
* :class:`Profinite` conjugates an element of declared level ``L`` by
  ``sigma**a_L`` where ``a`` is a compatible residue family;
* :class:`Composite` applies its parts in list order.

Alongside them this module computes degree and orientation, the defect
scan, and the set of admissible levels where the local reconstruction in
:mod:`stabaut.verraum` applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .codes import Element, as_element, equals, shift
from .errors import (
    AlignmentError,
    DegreeBoundError,
    IncompatibleResiduesError,
    MissingResidueError,
    VerificationError,
)
from .perms import compose_perm, cycle_perm, nu, random_perm
from .symbolic import DEFAULT_CAPACITY

PRESERVING = "preserving"
REVERSING = "reversing"


class ProfiniteInteger:
    """A compatible family of residues ``a_m mod m``.

    Either an ordinary integer, a finite table (closed downwards: a missing
    modulus is derived from any tabulated multiple), or a callable giving
    the residue for each modulus.
    """

    def __init__(self, table: Mapping[int, int] | None = None, integer: int | None = None,
                 source: Callable[[int], int] | None = None, name: str = ""):
        if integer is None and table is None and source is None:
            raise ValueError("need an integer, a residue table or a residue source")
        self.integer = None if integer is None else int(integer)
        self.table = {int(m): int(a) % int(m) for m, a in (table or {}).items()}
        self.source = source
        self.name = name

    @classmethod
    def from_integer(cls, z: int) -> "ProfiniteInteger":
        return cls(integer=z)

    @classmethod
    def factorial_series(cls) -> "ProfiniteInteger":
        """The non-integral element ``1! + 2! + 3! + ...``."""

        def residue(m: int) -> int:
            total, fact = 0, 1
            for j in range(1, m + 1):
                fact = fact * j % m
                total = (total + fact) % m
            return total

        return cls(source=residue, name="factorial-series")

    def residue(self, m: int) -> int:
        m = int(m)
        if m < 1:
            raise ValueError("moduli are positive")
        if self.integer is not None:
            return self.integer % m
        if m in self.table:
            return self.table[m]
        if self.source is not None:
            return self.source(m) % m
        for big, a in sorted(self.table.items()):
            if big % m == 0:
                return a % m
        raise MissingResidueError(f"no residue for modulus {m}")

    def negate(self) -> "ProfiniteInteger":
        if self.integer is not None:
            return ProfiniteInteger(integer=-self.integer)
        src = self.source
        return ProfiniteInteger(table={m: -a for m, a in self.table.items()},
                                source=None if src is None else (lambda m: -src(m)),
                                name=f"-{self.name}" if self.name else "")

    def residues(self, bound: int) -> dict[int, int]:
        return {m: self.residue(m) for m in range(1, bound + 1)}

    def to_dict(self, bound: int = 12) -> dict:
        if self.integer is not None:
            return {"integer": self.integer}
        table = dict(self.table)
        if self.source is not None:
            table.update(self.residues(bound))
        return {"residues": {str(m): a for m, a in sorted(table.items())}}

    def __repr__(self):
        if self.integer is not None:
            return f"ProfiniteInteger({self.integer})"
        return f"ProfiniteInteger({self.name or self.table})"


def residues_compatible(a: ProfiniteInteger, levels: Sequence[int]) -> bool:
    """``a_m == a_{km} mod m`` for every pair of listed levels; raises otherwise."""
    levels = sorted(set(levels))
    for m in levels:
        for big in levels:
            if big % m == 0 and a.residue(big) % m != a.residue(m):
                raise IncompatibleResiduesError(f"a_{big} = {a.residue(big)} is not {a.residue(m)} mod {m}")
    return True


def check_profinite_welldefined(a: ProfiniteInteger, phi, k: int, j: int,
                                capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """Conjugating a level-``k`` element by ``sigma**a_k`` or by ``sigma**a_{jk}`` gives the same map."""
    phi = as_element(phi)
    if k % phi.level:
        raise AlignmentError(f"element of level {phi.level} is not declared at level {k}")
    small, big = a.residue(k), a.residue(j * k)
    lhs = Element([shift(phi.n, -big), phi, shift(phi.n, big)], n=phi.n)
    rhs = Element([shift(phi.n, -small), phi, shift(phi.n, small)], n=phi.n)
    return equals(lhs, rhs, capacity)


@dataclass(eq=False)
class GroupAutomorphism:
    n: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def apply(self, phi) -> Element:
        raise NotImplementedError

    def inverse(self) -> "GroupAutomorphism":
        raise NotImplementedError

    def __call__(self, phi) -> Element:
        return self.apply(phi)

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(eq=False)
class Inner(GroupAutomorphism):
    conjugator: Element = None

    def __init__(self, conjugator):
        conjugator = as_element(conjugator)
        super().__init__(conjugator.n)
        self.conjugator = conjugator

    def apply(self, phi):
        phi = as_element(phi)
        g = self.conjugator
        return Element([g.inverse(), phi, g], n=self.n, level=math.lcm(phi.level, g.level))

    def inverse(self):
        return Inner(self.conjugator.inverse())

    def to_dict(self):
        return {"kind": "inner", "alphabet": self.n, "conjugator": self.conjugator.to_dict()}


@dataclass(eq=False)
class Reflection(GroupAutomorphism):
    def apply(self, phi):
        return as_element(phi).reflected()

    def inverse(self):
        return self

    def to_dict(self):
        return {"kind": "reflection", "alphabet": self.n}


@dataclass(eq=False)
class Profinite(GroupAutomorphism):
    a: ProfiniteInteger = None

    def __init__(self, n: int, a: ProfiniteInteger | int):
        super().__init__(n)
        self.a = a if isinstance(a, ProfiniteInteger) else ProfiniteInteger(integer=a)

    def apply(self, phi):
        phi = as_element(phi)
        s = self.a.residue(phi.level)
        return Element([shift(self.n, -s), phi, shift(self.n, s)], n=self.n, level=phi.level)

    def inverse(self):
        return Profinite(self.n, self.a.negate())

    def to_dict(self):
        return {"kind": "profinite", "alphabet": self.n, **self.a.to_dict()}


@dataclass(eq=False)
class Composite(GroupAutomorphism):
    parts: tuple = ()

    def __init__(self, parts: Sequence[GroupAutomorphism]):
        parts = tuple(parts)
        if not parts:
            raise ValueError("a composite needs at least one part")
        super().__init__(parts[0].n)
        self.parts = parts

    def apply(self, phi):
        out = as_element(phi)
        for p in self.parts:
            out = p.apply(out)
        return out

    def inverse(self):
        return Composite([p.inverse() for p in reversed(self.parts)])

    def to_dict(self):
        return {"kind": "composite", "alphabet": self.n, "parts": [p.to_dict() for p in self.parts]}


def apply_psi(psi: GroupAutomorphism, phi) -> Element:
    return psi.apply(phi)


def then(first: GroupAutomorphism, second: GroupAutomorphism) -> Composite:
    """The automorphism ``second . first``."""
    return Composite([first, second])


def degree(psi: GroupAutomorphism, bound: int = 12,
           capacity: int | None = DEFAULT_CAPACITY) -> tuple[int, str]:
    """Least ``d`` with ``psi(sigma**d) == sigma**(+-d)``, and which sign occurs."""
    key = ("degree", bound)
    if key in psi._cache:
        return psi._cache[key]
    for d in range(1, bound + 1):
        image = psi.apply(shift(psi.n, d))
        if equals(image, shift(psi.n, d), capacity):
            result = (d, PRESERVING)
        elif equals(image, shift(psi.n, -d), capacity):
            result = (d, REVERSING)
        else:
            continue
        psi._cache[key] = result
        return result
    raise DegreeBoundError(f"no degree found up to {bound}")


def alpha(psi: GroupAutomorphism, perm: np.ndarray, k: int,
          capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
    """The induced permutation ``rho_k(psi(nu_k(perm)))`` of ``Per_k``."""
    return psi.apply(nu(perm, psi.n, k)).rho(k, capacity)


def defect_scan(psi: GroupAutomorphism, k: int, seed: int = 0,
                capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """True when level ``k`` is defective: a 3-cycle is sent to the identity.

    Homomorphy of the induced map is spot-checked on five random pairs.
    """
    size = psi.n**k
    image = alpha(psi, cycle_perm(size, [0, 1, 2]), k, capacity)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        p, q = random_perm(size, rng), random_perm(size, rng)
        lhs = alpha(psi, compose_perm(p, q), k, capacity)
        rhs = compose_perm(alpha(psi, p, k, capacity), alpha(psi, q, k, capacity))
        if not np.array_equal(lhs, rhs):
            raise VerificationError(f"induced map on Per_{k} is not multiplicative")
    return bool(np.array_equal(image, np.arange(size)))


def admissible_levels(psi: GroupAutomorphism, bound: int,
                      capacity: int | None = DEFAULT_CAPACITY) -> list[int]:
    """Levels ``3 <= k <= bound`` divisible by the degree, with ``n**k >= 8`` and no defect."""
    d, _ = degree(psi, capacity=capacity)
    out = []
    for k in range(3, bound + 1):
        if k % d or psi.n**k < 8 or psi.n**k > (capacity or math.inf):
            continue
        key = ("defect", k)
        if key not in psi._cache:
            psi._cache[key] = defect_scan(psi, k, capacity=capacity)
        if not psi._cache[key]:
            out.append(k)
    return out


def is_admissible(psi: GroupAutomorphism, k: int, capacity: int | None = DEFAULT_CAPACITY) -> bool:
    return k in admissible_levels(psi, k, capacity) if k >= 3 else False
