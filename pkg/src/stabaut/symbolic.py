"""
Periodic points of the full shift and their integer encodings.

A periodic point with period ``k`` is stored through one period of its
orbit, the block ``x[0:k]``.  Blocks are ordered lexicographically with the
leftmost symbol most significant, so the ``i``-th point of ``Per_k`` is the
base-``n`` expansion of ``i`` padded to ``k`` digits.  Every permutation table
in the package uses this indexing.

Array conventions
-----------------
Batches of periodic points are integer arrays of shape ``(P, m)``, one row
per point and one column per position ``0..m-1`` of a shared period ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import AlignmentError, CapacityError

DEFAULT_CAPACITY = 10**6

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def check_capacity(count: int, capacity: int | None, what: str = "enumeration") -> None:
    if capacity is not None and count > capacity:
        raise CapacityError(f"{what} of size {count} exceeds capacity {capacity}")


def word_to_int(word: Sequence[int], n: int) -> int:
    value = 0
    for a in word:
        value = value * n + int(a)
    return value


def int_to_word(value: int, n: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        value, r = divmod(value, n)
        digits.append(r)
    return tuple(reversed(digits))


def all_words(n: int, k: int, capacity: int | None = DEFAULT_CAPACITY) -> np.ndarray:
    """Return every word of length ``k`` over ``n`` symbols, one per row, in lexicographic order."""
    check_capacity(n**k, capacity, f"words of length {k} over {n} symbols")
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(n**k, dtype=np.int64)
    powers = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % n


def encode_rows(arr: np.ndarray, n: int) -> np.ndarray:
    """Encode each row (a word) of ``arr`` as an integer."""
    k = arr.shape[-1]
    powers = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ powers


def decode_ints(values: np.ndarray, n: int, k: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.int64)
    powers = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (values[..., None] // powers) % n


def to_cells(arr: np.ndarray, n: int, k: int) -> np.ndarray:
    """Recode a batch of points into level-``k`` cells (integers in ``[0, n**k)``)."""
    p, m = arr.shape
    if m % k:
        raise AlignmentError(f"period {m} is not a multiple of level {k}")
    return encode_rows(arr.reshape(p, m // k, k), n)


def from_cells(cells: np.ndarray, n: int, k: int) -> np.ndarray:
    p, c = cells.shape
    return decode_ints(cells, n, k).reshape(p, c * k)


def tile_to(arr: np.ndarray, width: int) -> np.ndarray:
    m = arr.shape[1]
    if width % m:
        raise AlignmentError(f"cannot tile period {m} to width {width}")
    return np.tile(arr, (1, width // m))


def reduce_period(arr: np.ndarray, m: int) -> np.ndarray | None:
    """Return ``arr[:, :m]`` if every row is ``m``-periodic, else ``None``."""
    width = arr.shape[1]
    if width % m:
        return None
    head = arr[:, :m]
    if width != m and not np.array_equal(np.tile(head, (1, width // m)), arr):
        return None
    return head


def _primitive_length(block: tuple[int, ...]) -> int:
    k = len(block)
    for d in range(1, k + 1):
        if k % d == 0 and block == block[:d] * (k // d):
            return d
    return k


@dataclass(frozen=True, eq=False)
class PeriodicPoint:
    """A point of the full ``n``-shift fixed by ``sigma**period``.

    Equality and hashing compare the underlying bi-infinite sequences, so
    ``(01)`` declared with period 2 equals ``(0101)`` declared with period 4.
    """

    n: int
    block: tuple[int, ...]

    def __post_init__(self):
        block = tuple(int(a) for a in self.block)
        if not block:
            raise ValueError("a periodic point needs a nonempty block")
        if any(a < 0 or a >= self.n for a in block):
            raise ValueError(f"symbols must lie in [0, {self.n})")
        object.__setattr__(self, "block", block)

    @classmethod
    def from_string(cls, n: int, text: str) -> "PeriodicPoint":
        """Digits ``0-9a-z``, or comma separated integers for large alphabets."""
        text = text.strip()
        if "," in text:
            return cls(n, tuple(int(a) for a in text.split(",")))
        if any(ch not in _DIGITS for ch in text):
            raise ValueError(f"invalid symbol in block {text!r}")
        return cls(n, tuple(_DIGITS.index(ch) for ch in text))

    @classmethod
    def from_index(cls, n: int, k: int, index: int) -> "PeriodicPoint":
        return cls(n, int_to_word(index, n, k))

    @property
    def period(self) -> int:
        return len(self.block)

    @property
    def minimal_period(self) -> int:
        return _primitive_length(self.block)

    @property
    def root(self) -> tuple[int, ...]:
        return self.block[: self.minimal_period]

    @property
    def index(self) -> int:
        return word_to_int(self.block, self.n)

    def __eq__(self, other):
        if not isinstance(other, PeriodicPoint):
            return NotImplemented
        return self.n == other.n and self.root == other.root

    def __hash__(self):
        return hash((self.n, self.root))

    def __repr__(self):
        return f"PeriodicPoint(n={self.n}, block={self.to_string()!r})"

    def __getitem__(self, i: int) -> int:
        return self.block[i % self.period]

    def to_string(self) -> str:
        if self.n <= len(_DIGITS):
            return "".join(_DIGITS[a] for a in self.block)
        return ",".join(map(str, self.block))

    def window(self, lo: int, hi: int) -> tuple[int, ...]:
        """Symbols at positions ``lo .. hi-1``."""
        return tuple(self[i] for i in range(lo, hi))

    def redeclare(self, period: int) -> "PeriodicPoint":
        if period % self.minimal_period:
            raise AlignmentError(f"period {period} is not a multiple of {self.minimal_period}")
        return PeriodicPoint(self.n, self.root * (period // self.minimal_period))

    def shift(self, j: int = 1) -> "PeriodicPoint":
        j %= self.period
        return PeriodicPoint(self.n, self.block[j:] + self.block[:j])

    def reflect(self) -> "PeriodicPoint":
        p = self.period
        return PeriodicPoint(self.n, tuple(self.block[(-i) % p] for i in range(p)))

    def canonical(self) -> "PeriodicPoint":
        """The lexicographically least rotation, declared at minimal period."""
        r = self.root
        return PeriodicPoint(self.n, min(r[i:] + r[:i] for i in range(len(r))))

    def orbit(self) -> list["PeriodicPoint"]:
        r = PeriodicPoint(self.n, self.root)
        return [r.shift(i) for i in range(len(self.root))]

    def as_array(self) -> np.ndarray:
        return np.array([self.block], dtype=np.int64)

    def to_dict(self) -> dict:
        return {"alphabet": self.n, "period": self.period, "block": self.to_string()}

    @classmethod
    def from_dict(cls, data: dict) -> "PeriodicPoint":
        n = int(data["alphabet"])
        block = data["block"]
        if isinstance(block, str):
            point = cls.from_string(n, block) if "," not in block else cls(n, tuple(int(b) for b in block.split(",")))
        else:
            point = cls(n, tuple(block))
        period = int(data.get("period", point.period))
        return point.redeclare(period) if period != point.period else point


def enumerate_periodic(n: int, k: int, capacity: int | None = DEFAULT_CAPACITY) -> list[PeriodicPoint]:
    """All points of ``Per_k`` in lexicographic order of their blocks."""
    return [PeriodicPoint(n, tuple(row)) for row in all_words(n, k, capacity).tolist()]


def minimal_period(x: PeriodicPoint) -> int:
    return x.minimal_period


def shift_point(x: PeriodicPoint, j: int = 1) -> PeriodicPoint:
    return x.shift(j)


def reflect_point(x: PeriodicPoint) -> PeriodicPoint:
    return x.reflect()


def recode(x: PeriodicPoint, k: int) -> PeriodicPoint:
    """View ``x`` as a point of the ``n**k`` shift by grouping ``k`` symbols per cell."""
    if x.period % k:
        raise AlignmentError(f"period {x.period} is not a multiple of level {k}")
    cells = to_cells(x.as_array(), x.n, k)[0]
    return PeriodicPoint(x.n**k, tuple(cells.tolist()))


def decode(x: PeriodicPoint, n: int, k: int) -> PeriodicPoint:
    if x.n != n**k:
        raise ValueError(f"alphabet {x.n} is not {n}**{k}")
    return PeriodicPoint(n, tuple(from_cells(np.array([x.block]), n, k)[0].tolist()))


def point_distance(x: PeriodicPoint, y: PeriodicPoint) -> Fraction:
    """Product-metric distance ``2**-r`` with ``r`` the least ``|i|`` where the points differ."""
    if x.n != y.n:
        raise ValueError("points over different alphabets")
    if x == y:
        return Fraction(0)
    horizon = math.lcm(x.period, y.period)
    for r in range(horizon + 1):
        if x[r] != y[r] or x[-r] != y[-r]:
            return Fraction(1, 2**r)
    raise AssertionError("distinct periodic points must differ within one common period")


def agreement_radius(x: PeriodicPoint, y: PeriodicPoint) -> int | None:
    """Largest ``r`` with ``x[-r..r] == y[-r..r]``; ``-1`` if they differ at 0, ``None`` if equal."""
    d = point_distance(x, y)
    if d == 0:
        return None
    return int(d.denominator).bit_length() - 2


def points_to_array(points: Iterable[PeriodicPoint], period: int | None = None) -> np.ndarray:
    points = list(points)
    if period is None:
        period = math.lcm(*(p.period for p in points)) if points else 1
    return np.array([p.redeclare(period).block for p in points], dtype=np.int64).reshape(len(points), period)
