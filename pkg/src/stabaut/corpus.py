"""Reusable test material: sample automorphisms, words and subshifts."""

from __future__ import annotations

import numpy as np

from .codes import BlockCode, Element, ShiftPower, SimpleAuto, tabulate
from .perms import cycle_perm, nu, transposition
from .psi import Composite, Inner, Profinite, ProfiniteInteger, Reflection
from .subshifts import Subshift
from .symbolic import PeriodicPoint, all_words, encode_rows


def marker_code(n: int = 3) -> BlockCode:
    """Level-1 involution of the 3-shift: swap 1 and 2 when the left neighbour is 0."""
    windows = all_words(n, 3)
    centre = windows[:, 1].copy()
    hit = (windows[:, 0] == 0) & (centre > 0)
    centre[hit] = 3 - centre[hit]
    return BlockCode(n, 1, 1, centre, centre, 1, label="marker")


def flip(n: int = 2) -> SimpleAuto:
    return SimpleAuto(n, 1, np.roll(np.arange(n), -1))


def sample_words(n: int, k: int, count: int, seed: int = 0) -> list[Element]:
    """Random words in generators acting on ``Per_k``: shifts, simple automorphisms
    at levels dividing ``k``, their shift conjugates, and tabulated codes."""
    rng = np.random.default_rng(seed)
    levels = [d for d in range(1, k + 1) if k % d == 0 and n**d <= 64]
    pool: list = [ShiftPower(n, 1), ShiftPower(n, -1), flip(n)]
    for d in levels:
        size = n**d
        pool.append(SimpleAuto(n, d, rng.permutation(size)))
        i, j = rng.choice(size, 2, replace=False)
        pool.append(SimpleAuto(n, d, transposition(size, int(i), int(j))))
    if n == 3:
        pool.append(marker_code(3))
    if 2 in levels:
        tau, tau2 = (SimpleAuto(n, 2, rng.permutation(n**2)) for _ in range(2))
        pool.append(tabulate(Element([ShiftPower(n, -1), tau, ShiftPower(n, 1), tau2]), label="mixed"))
    out = []
    for _ in range(count):
        length = int(rng.integers(1, 5))
        atoms = [pool[int(i)] for i in rng.integers(0, len(pool), size=length)]
        out.append(Element(atoms, n=n))
    return out


def mixed_word(n: int) -> Element:
    """``sigma^-1 tau sigma . tau'`` for two level-2 simple automorphisms."""
    size = n**2
    tau = SimpleAuto(n, 2, cycle_perm(size, [0, 1, 2]))
    tau2 = SimpleAuto(n, 2, transposition(size, 1, size - 1))
    return Element([ShiftPower(n, -1), tau, ShiftPower(n, 1), tau2], n=n)


def inner_conjugators(n: int) -> list[Element]:
    out = [Element([ShiftPower(n, 1)], n=n), Element([ShiftPower(n, 2)], n=n),
           nu(cycle_perm(n**2, list(range(n**2))), n, 2), mixed_word(n)]
    if n == 2:
        out.append(nu(transposition(8, 1, 6), 2, 3))
    else:
        out.append(Element([marker_code(3)], n=3))
    return out


def automorphisms(n: int) -> dict[str, object]:
    """Named examples of each construction, including composites."""
    inner2 = Inner(nu(cycle_perm(n**2, list(range(n**2))), n, 2))
    inner1 = Inner(Element([flip(n), ShiftPower(n, 1)], n=n))
    return {
        "inner-level2": inner2,
        "inner-level1": inner1,
        "profinite-5": Profinite(n, 5),
        "profinite-series": Profinite(n, ProfiniteInteger.factorial_series()),
        "reflection": Reflection(n),
        "composite": Composite([inner1, Reflection(n), Profinite(n, 3)]),
        "composite-level2": Composite([Profinite(n, 2), inner2]),
    }


def _p(n: int, text: str) -> PeriodicPoint:
    return PeriodicPoint.from_string(n, text)


def subshift_corpus() -> dict[str, Subshift]:
    """Twenty subshifts: forbidden-word examples and finite unions of orbits."""
    c = {
        "full-2": Subshift.full(2),
        "golden-mean": Subshift.sft(2, ["11"]),
        "no-000-111": Subshift.sft(2, ["000", "111"]),
        "no-101": Subshift.sft(2, ["101"]),
        "heteroclinic": Subshift.sft(2, ["10"]),
        "two-fixed": Subshift.sft(2, ["01", "10"]),
        "alternating": Subshift.sft(2, ["00", "11"]),
        "no-0110": Subshift.sft(2, ["0110", "11"]),
        "full-3": Subshift.full(3),
        "n3-no-11-02": Subshift.sft(3, ["11", "02"]),
        "n3-no-repeats": Subshift.sft(3, ["00", "11", "22"]),
        "n3-no-012": Subshift.sft(3, ["012", "2"]),
        "fixed-0": Subshift.finite(2, [_p(2, "0")]),
        "orbit-01": Subshift.finite(2, [_p(2, "01")]),
        "orbit-001-and-1": Subshift.finite(2, [_p(2, "001"), _p(2, "1")]),
        "orbit-0011": Subshift.finite(2, [_p(2, "0011")]),
        "orbit-00101": Subshift.finite(2, [_p(2, "00101")]),
        "n3-orbit-012": Subshift.finite(3, [_p(3, "012")]),
        "n3-fixed-points": Subshift.finite(3, [_p(3, "0"), _p(3, "1"), _p(3, "2")]),
        "n3-orbits-0012-11": Subshift.finite(3, [_p(3, "0012"), _p(3, "1")]),
    }
    return c


def finite_corpus() -> dict[str, Subshift]:
    return {k: v for k, v in subshift_corpus().items() if v.kind == "finite"}


def periodized_words(y: Subshift, k: int) -> Subshift:
    """The ``sigma**(2k+1)``-subshift of periodized words of length ``2k+1`` of ``y``."""
    m = 2 * k + 1
    return Subshift.finite(y.n, [PeriodicPoint(y.n, w) for w in y.windows(m)], m)


def word_index(n: int, word: str) -> int:
    return int(encode_rows(np.array([[int(c, 36) for c in word]]), n)[0])
