"""
Invertible sliding block codes and formal words of them.

Elements of the stabilized automorphism group are represented as
:class:`Element` instances: reduced words of *atoms*.  An atom is a concrete
automorphism with a vectorized action on batches of periodic points.  Four
atoms exist:

``ShiftPower``      the shift ``sigma**j`` (level 1)
``SimpleAuto``      a permutation of the ``k``-blocks at positions ``0 mod k``
``BlockCode``       an explicit rule table at level ``k`` and radius ``R``
``TrackGadget`` /   top-conditioned bottom permutations and the top-track
``TopShift``        shift of the two-track presentation (see ``twotrack``)

Words are read like function composition: ``Element([f, g])`` applies ``g``
first.  Nothing is ever expanded into a rule table unless asked for via
:func:`tabulate`, so conjugates at large levels stay cheap to evaluate.

Equality of two elements is decided exactly: both commute with
``sigma**L`` for the lcm ``L`` of their atom levels, each output cell depends
on at most ``2R+1`` input cells, and so it suffices to compare them on all
periodizations of windows of ``2R+1`` cells.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import AlignmentError, CapacityError
from .symbolic import (
    DEFAULT_CAPACITY,
    PeriodicPoint,
    all_words,
    check_capacity,
    encode_rows,
    from_cells,
    reduce_period,
    tile_to,
    to_cells,
)


@lru_cache(maxsize=256)
def _words(n: int, k: int) -> np.ndarray:
    w = all_words(n, k, capacity=None)
    w.setflags(write=False)
    return w


def per_array(n: int, k: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
    """All points of ``Per_k`` as an ``(n**k, k)`` array (shared, read-only)."""
    check_capacity(n**k, capacity, f"Per_{k} over {n} symbols")
    return _words(n, k)


def _cell_floor(i: int, k: int) -> int:
    return (i // k) * k


class Atom:
    """Base class for the concrete generators that words are built from."""

    n: int
    level: int

    def act(self, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self) -> "Atom":
        raise NotImplementedError

    def needs(self, lo: int, hi: int) -> tuple[int, int]:
        """Input positions required to compute output positions ``lo..hi``."""
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    @property
    def dimension(self) -> int | None:
        return None

    def is_identity(self) -> bool:
        return False

    def reflected(self) -> list["Atom"]:
        """Atoms whose product is the conjugate of ``self`` by the reflection."""
        return tabulate(Element([self])).reflected()

    def to_dict(self) -> dict:
        raise NotImplementedError

    def apply(self, x: PeriodicPoint) -> PeriodicPoint:
        return Element([self]).apply(x)

    def rho(self, k: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
        return Element([self]).rho(k, capacity)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class ShiftPower(Atom):
    def __init__(self, n: int, power: int):
        self.n = int(n)
        self.power = int(power)
        self.level = 1

    def act(self, arr):
        return np.roll(arr, -self.power, axis=1)

    def inverse(self):
        return ShiftPower(self.n, -self.power)

    def needs(self, lo, hi):
        return lo + self.power, hi + self.power

    def key(self):
        return ("shift", self.n, self.power)

    @property
    def dimension(self):
        return self.power

    def is_identity(self):
        return self.power == 0

    def reflected(self):
        return [ShiftPower(self.n, -self.power)]

    def to_dict(self):
        return {"kind": "shift", "alphabet": self.n, "power": self.power}

    def __repr__(self):
        return f"ShiftPower({self.power})"


class SimpleAuto(Atom):
    """Permutation of ``Per_k`` blocks applied at every position ``0 mod k``."""

    def __init__(self, n: int, level: int, perm: Sequence[int]):
        self.n = int(n)
        self.level = int(level)
        self.perm = np.asarray(perm, dtype=np.int64)
        size = self.n**self.level
        if self.perm.shape != (size,) or not np.array_equal(np.sort(self.perm), np.arange(size)):
            raise ValueError(f"perm must be a permutation of range({size})")
        self.perm.setflags(write=False)

    def act(self, arr):
        cells = to_cells(arr, self.n, self.level)
        return from_cells(self.perm[cells], self.n, self.level)

    def inverse(self):
        return SimpleAuto(self.n, self.level, np.argsort(self.perm))

    def needs(self, lo, hi):
        k = self.level
        return _cell_floor(lo, k), _cell_floor(hi, k) + k - 1

    def key(self):
        return ("simple", self.n, self.level, self.perm.tobytes())

    @property
    def dimension(self):
        return 0

    def is_identity(self):
        return bool(np.array_equal(self.perm, np.arange(self.perm.size)))

    def reversed_blocks(self) -> "SimpleAuto":
        """The simple automorphism acting by ``rev . perm . rev`` on blocks."""
        words = _words(self.n, self.level)
        rev = encode_rows(words[:, ::-1], self.n)
        return SimpleAuto(self.n, self.level, rev[self.perm[rev]])

    def reflected(self):
        inner = self.reversed_blocks()
        if self.level == 1:
            return [inner]
        return [ShiftPower(self.n, -1), inner, ShiftPower(self.n, 1)]

    def to_dict(self):
        return {"kind": "simple", "alphabet": self.n, "level": self.level, "perm": self.perm.tolist()}

    def __repr__(self):
        return f"SimpleAuto(n={self.n}, level={self.level}, perm={self.perm.tolist()})"


class BlockCode(Atom):
    """An explicit sliding block code at level ``k``.

    ``rule`` maps a window of ``2*radius+1`` level-``k`` cells, encoded in base
    ``n**k`` with the leftmost cell most significant, to the new centre cell.
    The inverse code is stored alongside with its own radius.
    """

    def __init__(self, n, level, radius, rule, inverse_rule, inverse_radius=None, label=""):
        self.n = int(n)
        self.level = int(level)
        self.radius = int(radius)
        self.inverse_radius = self.radius if inverse_radius is None else int(inverse_radius)
        self.rule = np.asarray(rule, dtype=np.int64)
        self.inverse_rule = np.asarray(inverse_rule, dtype=np.int64)
        self.label = label
        size = self.n**self.level
        if self.rule.shape != (size ** (2 * self.radius + 1),):
            raise ValueError("rule table has the wrong length")
        if self.inverse_rule.shape != (size ** (2 * self.inverse_radius + 1),):
            raise ValueError("inverse rule table has the wrong length")
        self.rule.setflags(write=False)
        self.inverse_rule.setflags(write=False)

    @property
    def cells(self) -> int:
        return self.n**self.level

    def act(self, arr):
        return _apply_rule(arr, self.n, self.level, self.radius, self.rule)

    def inverse(self):
        return BlockCode(self.n, self.level, self.inverse_radius, self.inverse_rule, self.rule,
                         self.radius, label=f"inv({self.label})" if self.label else "")

    def needs(self, lo, hi):
        k, r = self.level, self.radius * self.level
        return _cell_floor(lo, k) - r, _cell_floor(hi, k) + k - 1 + r

    def key(self):
        return ("code", self.n, self.level, self.radius, self.rule.tobytes())

    def reflected(self):
        inner = BlockCode(
            self.n, self.level, self.radius,
            _reflect_rule(self.rule, self.n, self.level, self.radius),
            _reflect_rule(self.inverse_rule, self.n, self.level, self.inverse_radius),
            self.inverse_radius,
            label=f"refl({self.label})" if self.label else "",
        )
        if self.level == 1:
            return [inner]
        return [ShiftPower(self.n, -1), inner, ShiftPower(self.n, 1)]

    def to_dict(self):
        return {
            "kind": "code", "alphabet": self.n, "level": self.level, "radius": self.radius,
            "rule": self.rule.tolist(), "inverse_radius": self.inverse_radius,
            "inverse_rule": self.inverse_rule.tolist(), "label": self.label,
        }

    def __repr__(self):
        return f"BlockCode(n={self.n}, level={self.level}, radius={self.radius}, label={self.label!r})"


def _window_index(cells: np.ndarray, base: int, radius: int) -> np.ndarray:
    idx = np.zeros(cells.shape, dtype=np.int64)
    for t in range(-radius, radius + 1):
        idx = idx * base + np.roll(cells, -t, axis=1)
    return idx


def _apply_rule(arr, n, k, radius, rule):
    cells = to_cells(arr, n, k)
    out = rule[_window_index(cells, n**k, radius)]
    return from_cells(out, n, k)


def _reflect_rule(rule, n, k, radius):
    size = n**k
    width = 2 * radius + 1
    windows = all_words(size, width, capacity=None)
    rev = encode_rows(_words(n, k)[:, ::-1], n)
    flipped = encode_rows(rev[windows[:, ::-1]], size)
    return rev[rule[flipped]]


AtomLike = Union[Atom, "Element"]


class Element:
    """A reduced word of atoms, read right to left.

    ``level`` is the declared level: the element is asserted to commute with
    ``sigma**level``.  It defaults to the lcm of the atom levels.
    """

    __slots__ = ("n", "atoms", "level")

    def __init__(self, atoms: Iterable[AtomLike] = (), n: int | None = None, level: int | None = None):
        flat: list[Atom] = []
        for a in atoms:
            flat.extend(a.atoms if isinstance(a, Element) else [a])
        if n is None:
            if not flat:
                raise ValueError("an empty word needs an explicit alphabet size")
            n = flat[0].n
        if any(a.n != n for a in flat):
            raise ValueError("atoms over different alphabets")
        self.n = int(n)
        self.atoms = tuple(_reduce(flat))
        self.level = int(level) if level is not None else self.atom_level

    @property
    def atom_level(self) -> int:
        return math.lcm(*(a.level for a in self.atoms)) if self.atoms else 1

    def __matmul__(self, other: "Element") -> "Element":
        return compose(self, other)

    def __repr__(self):
        return f"Element(n={self.n}, level={self.level}, atoms={list(self.atoms)!r})"

    def __len__(self):
        return len(self.atoms)

    def inverse(self) -> "Element":
        return Element([a.inverse() for a in reversed(self.atoms)], n=self.n, level=self.level)

    def power(self, e: int) -> "Element":
        base = self if e >= 0 else self.inverse()
        return Element(list(base.atoms) * abs(e), n=self.n, level=self.level)

    def reflected(self) -> "Element":
        out: list[Atom] = []
        for a in self.atoms:
            out.extend(a.reflected())
        return Element(out, n=self.n, level=self.level)

    def with_level(self, level: int) -> "Element":
        return Element(self.atoms, n=self.n, level=level)

    @property
    def dimension(self) -> int | None:
        total = 0
        for a in self.atoms:
            d = a.dimension
            if d is None:
                return None
            total += d
        return total

    def span(self, level: int | None = None) -> tuple[int, int]:
        """Input positions needed for the output cell ``[0, level)``."""
        level = level or self.atom_level
        lo, hi = 0, level - 1
        for a in self.atoms:
            lo, hi = a.needs(lo, hi)
        return lo, hi

    def radius(self, level: int | None = None) -> int:
        level = level or self.atom_level
        lo, hi = self.span(level)
        return max(0, -(lo // level), -(-(hi - level + 1) // level))

    def evaluate(self, arr: np.ndarray) -> np.ndarray:
        """Apply to a batch of points; widens the period to a multiple of every atom level."""
        m = arr.shape[1]
        width = math.lcm(m, self.atom_level)
        out = tile_to(arr, width) if width != m else arr
        for a in reversed(self.atoms):
            out = a.act(out)
        return out

    def rho(self, k: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
        """The permutation of ``Per_k`` induced by this element, as an index table."""
        out = reduce_period(self.evaluate(per_array(self.n, k, capacity)), k)
        if out is None:
            raise AlignmentError(f"element does not preserve Per_{k}")
        return encode_rows(out, self.n)

    def apply(self, x: PeriodicPoint) -> PeriodicPoint:
        if x.n != self.n:
            raise ValueError("point and element over different alphabets")
        if x.period % self.level:
            raise AlignmentError(f"period {x.period} is not a multiple of level {self.level}")
        out = self.evaluate(x.as_array())
        head = reduce_period(out, x.period)
        return PeriodicPoint(self.n, tuple((head if head is not None else out)[0].tolist()))

    def to_dict(self) -> dict:
        return {"alphabet": self.n, "level": self.level, "word": [a.to_dict() for a in self.atoms]}


def _reduce(atoms: list[Atom]) -> list[Atom]:
    """Cancel, merge shifts, and move ``sigma**j`` rightwards past atoms whose level divides ``j``."""
    current = _cancel(atoms)
    while True:
        moved = False
        for i in range(len(current) - 1):
            a, b = current[i], current[i + 1]
            if isinstance(a, ShiftPower) and not isinstance(b, ShiftPower) and a.power % b.level == 0:
                current[i], current[i + 1] = b, a
                moved = True
                break
        if not moved:
            return current
        current = _cancel(current)


def _cancel(atoms: list[Atom]) -> list[Atom]:
    stack: list[Atom] = []
    for a in atoms:
        if a.is_identity():
            continue
        if stack and isinstance(a, ShiftPower) and isinstance(stack[-1], ShiftPower):
            merged = ShiftPower(a.n, stack.pop().power + a.power)
            if not merged.is_identity():
                stack.append(merged)
            continue
        if stack and stack[-1].key() == a.inverse().key():
            stack.pop()
            continue
        stack.append(a)
    return stack


def as_element(f: AtomLike) -> Element:
    return f if isinstance(f, Element) else Element([f])


def identity(n: int) -> Element:
    return Element([], n=n)


def shift(n: int, j: int = 1) -> Element:
    return Element([ShiftPower(n, j)], n=n)


def tabulate(f: AtomLike, level: int | None = None, capacity: int | None = DEFAULT_CAPACITY,
             label: str = "") -> BlockCode:
    """Expand an element into an explicit :class:`BlockCode`."""
    f = as_element(f)
    level = level or f.atom_level
    if level % f.atom_level:
        raise AlignmentError(f"level {level} is not a multiple of the atom level {f.atom_level}")
    rules = []
    for g in (f, f.inverse()):
        r = g.radius(level)
        width = 2 * r + 1
        windows = all_words(f.n, width * level, capacity)
        out = g.evaluate(windows)[:, r * level:(r + 1) * level]
        rules.append((r, encode_rows(out, f.n)))
    (r, rule), (ri, inv) = rules
    return BlockCode(f.n, level, r, rule, inv, ri, label=label)


def shift_power(n: int, j: int) -> BlockCode:
    """Rule table of ``sigma**j`` at level 1 and radius ``|j|``."""
    return tabulate(shift(n, j), label=f"shift^{j}") if j else identity_code(n)


def identity_code(n: int) -> BlockCode:
    ident = np.arange(n)
    return BlockCode(n, 1, 0, ident, ident, 0, label="id")


def compose(f: AtomLike, g: AtomLike, capacity: int | None = DEFAULT_CAPACITY):
    """``f . g`` (apply ``g`` first).  Two block codes give a tabulated block code."""
    word = Element([f, g])
    word.level = math.lcm(as_element(f).level, as_element(g).level)
    if isinstance(f, BlockCode) and isinstance(g, BlockCode):
        return tabulate(word, math.lcm(f.level, g.level), capacity)
    return word


def inverse(f: AtomLike):
    return f.inverse()


def reflect(f: AtomLike, capacity: int | None = DEFAULT_CAPACITY):
    """Conjugate by the reflection ``x_i -> x_{-i}``."""
    word = as_element(f).reflected()
    if isinstance(f, BlockCode):
        return tabulate(word, f.level, capacity)
    return word


def apply(f: AtomLike, x: PeriodicPoint) -> PeriodicPoint:
    return as_element(f).apply(x)


def equals(f: AtomLike, g: AtomLike, capacity: int | None = DEFAULT_CAPACITY) -> bool:
    """Exact equality of two automorphisms by exhausting all relevant windows."""
    f, g = as_element(f), as_element(g)
    if f.n != g.n:
        return False
    if f.atoms == g.atoms or not Element([f, g.inverse()], n=f.n).atoms:
        return True
    level = math.lcm(f.atom_level, g.atom_level)
    r = max(f.radius(level), g.radius(level))
    width = (2 * r + 1) * level
    check_capacity(f.n**width, capacity, f"windows of width {width}")
    if f.n**width > 4096:
        # a cheap counterexample search first; only a full pass can prove equality
        probe = np.random.default_rng(width).integers(0, f.n, size=(512, width))
        if not np.array_equal(f.evaluate(probe), g.evaluate(probe)):
            return False
    windows = all_words(f.n, width, capacity)
    return bool(np.array_equal(f.evaluate(windows), g.evaluate(windows)))


def restrict_to_per(f: AtomLike, m: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
    f = as_element(f)
    if m % f.level:
        raise AlignmentError(f"period {m} is not a multiple of level {f.level}")
    return f.rho(m, capacity)


def reflection_table(n: int, k: int) -> np.ndarray:
    """The reflection restricted to ``Per_k``: an involution of the index set."""
    words = _words(n, k)
    return encode_rows(words[:, (-np.arange(k)) % k], n)


def commutes_with_shift(f: AtomLike, power: int, capacity: int | None = DEFAULT_CAPACITY) -> bool:
    f = as_element(f)
    s = shift(f.n, power)
    return equals(compose(s, f), compose(f, s), capacity)


__all__ = [
    "Atom", "ShiftPower", "SimpleAuto", "BlockCode", "Element", "as_element", "identity", "shift",
    "tabulate", "shift_power", "identity_code", "compose", "inverse", "reflect", "apply", "equals",
    "restrict_to_per", "reflection_table", "per_array", "commutes_with_shift", "CapacityError",
]
