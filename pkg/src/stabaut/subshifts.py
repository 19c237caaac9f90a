"""
Subshifts of powers of the full shift, compared through their languages.

A subshift ``Y`` invariant under ``sigma**step`` is described either by
forbidden words (each pinned to a residue of its start position modulo
``step``) or by finitely many periodic orbits.  Languages are read at
aligned positions: ``windows(m, p)`` is the set of words ``y[q:q+m]`` for
``y`` in ``Y`` and ``q = p mod step``; ``language(Y, m)`` is ``windows(m, 0)``.
For ``step == 1`` this is the usual language, and in general the family of
these sets determines ``Y``.

Forbidden-word subshifts are handled through a de Bruijn style automaton
whose states carry the last few symbols and the position modulo ``step``.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .codes import Element, ShiftPower, SimpleAuto, as_element
from .errors import NoStabilizationError
from .symbolic import DEFAULT_CAPACITY, PeriodicPoint, all_words, check_capacity, encode_rows

Word = tuple


def _as_word(w, n) -> Word:
    if isinstance(w, str):
        return tuple(int(c, 36) for c in w)
    return tuple(int(a) for a in w)


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def normalize_patterns(step: int, patterns: Iterable[tuple[int, Word]]) -> tuple[int, frozenset]:
    """Smallest step at which a set of pinned forbidden words can be written."""
    patterns = frozenset((o % step, w) for o, w in patterns)
    for d in _divisors(step):
        if all(((o + t * d) % step, w) in patterns for o, w in patterns for t in range(step // d)):
            return d, frozenset((o % d, w) for o, w in patterns)
    return step, patterns


class Subshift:
    """A closed ``sigma**step``-invariant set, given by forbidden words or orbits."""

    def __init__(self, n: int, kind: str, step: int = 1, forbidden: Iterable = (), points: Iterable = ()):
        if kind not in ("sft", "finite"):
            raise ValueError(f"unknown subshift kind {kind!r}")
        self.n, self.kind, self.step = int(n), kind, int(step)
        self._windows: dict = {}
        self._auto = None
        if kind == "sft":
            pats = []
            for item in forbidden:
                if isinstance(item, (tuple, list)) and len(item) == 2 and not isinstance(item[1], (int, np.integer)):
                    pats.append((int(item[0]), _as_word(item[1], n)))
                else:
                    pats.append((0, _as_word(item, n)))
            self.step, self.forbidden = normalize_patterns(self.step, pats)
            self.points = frozenset()
        else:
            closed = set()
            for x in points:
                p = math.lcm(x.minimal_period, self.step)
                base = x.redeclare(p)
                for j in range(0, p, self.step):
                    closed.add(base.shift(j))
            self.points = frozenset(closed)
            self.forbidden = frozenset()

    @classmethod
    def sft(cls, n: int, forbidden: Iterable, step: int = 1) -> "Subshift":
        return cls(n, "sft", step, forbidden=forbidden)

    @classmethod
    def finite(cls, n: int, points: Iterable[PeriodicPoint], step: int = 1) -> "Subshift":
        return cls(n, "finite", step, points=points)

    @classmethod
    def full(cls, n: int) -> "Subshift":
        return cls(n, "sft")

    def __repr__(self):
        if self.kind == "sft":
            words = sorted("".join(map(str, w)) + (f"@{o}" if self.step > 1 else "") for o, w in self.forbidden)
            return f"Subshift.sft(n={self.n}, step={self.step}, forbidden={words})"
        return f"Subshift.finite(n={self.n}, step={self.step}, points={sorted(p.to_string() for p in self.points)})"

    # -- automaton -------------------------------------------------------
    @property
    def memory(self) -> int:
        return max([2] + [len(w) for _, w in self.forbidden])

    def _automaton(self):
        if self._auto is not None:
            return self._auto
        ell, n, step = self.memory, self.n, self.step
        check_capacity(step * n ** (ell - 1), DEFAULT_CAPACITY, "automaton states")
        groups: dict = defaultdict(set)
        for o, w in self.forbidden:
            groups[(len(w), o)].add(w)
        succ: dict = {}
        for p in range(step):
            for u in itertools.product(range(n), repeat=ell - 1):
                out = {}
                for a in range(n):
                    buf = u + (a,)
                    if any((p - lw + 1) % step == o and buf[-lw:] in words for (lw, o), words in groups.items()):
                        continue
                    out[a] = ((p + 1) % step, buf[1:])
                succ[(p, u)] = out
        pred: dict = defaultdict(set)
        for s, out in succ.items():
            for t in out.values():
                pred[t].add(s)
        alive = set(succ)
        outdeg = {s: len(out) for s, out in succ.items()}
        indeg = {s: len(pred[s]) for s in succ}
        queue = deque(s for s in succ if outdeg[s] == 0 or indeg[s] == 0)
        while queue:
            s = queue.popleft()
            if s not in alive:
                continue
            alive.discard(s)
            for t in succ[s].values():
                if t in alive:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
            for r in pred[s]:
                if r in alive:
                    outdeg[r] -= 1
                    if outdeg[r] == 0:
                        queue.append(r)
        live = {s: {a: t for a, t in succ[s].items() if t in alive} for s in alive}
        self._auto = live
        return live

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for s, out in self._automaton().items():
            g.add_node(s)
            for a, t in out.items():
                g.add_edge(s, t, symbol=a)
        return g

    # -- languages -------------------------------------------------------
    def windows(self, m: int, offset: int = 0) -> frozenset:
        offset %= self.step
        key = (m, offset)
        if key in self._windows:
            return self._windows[key]
        if self.kind == "finite":
            out = frozenset(x.window(offset, offset + m) for x in self.points)
        else:
            live = self._automaton()
            frontier: dict = {(): {s for s in live if s[0] == offset}}
            if not frontier[()]:
                frontier = {}
            for _ in range(m):
                nxt: dict = defaultdict(set)
                for word, states in frontier.items():
                    for s in states:
                        for a, t in live[s].items():
                            nxt[word + (a,)].add(t)
                frontier = nxt
            out = frozenset(frontier)
        self._windows[key] = out
        return out

    def is_empty(self) -> bool:
        return not self.windows(1)

    def contains(self, x: PeriodicPoint) -> bool:
        if x.n != self.n:
            return False
        if self.kind == "finite":
            return x in self.points
        period = math.lcm(x.period, self.step)
        return not any(i % self.step == o and x.window(i, i + len(w)) == w
                       for o, w in self.forbidden for i in range(period))

    def to_dict(self) -> dict:
        if self.kind == "sft":
            pats = sorted(self.forbidden, key=lambda t: (t[0], len(t[1]), t[1]))
            forbidden = ["".join(map(str, w)) if o == 0 else {"offset": o, "word": "".join(map(str, w))}
                         for o, w in pats]
            return {"alphabet": self.n, "step": self.step, "kind": "sft", "forbidden": forbidden}
        pts = sorted({p.canonical() for p in self.points}, key=lambda p: (p.period, p.block))
        return {"alphabet": self.n, "step": self.step, "kind": "finite",
                "orbits": [{"period": p.period, "block": p.to_string()} for p in pts]}

    @classmethod
    def from_dict(cls, data: dict) -> "Subshift":
        n, step = int(data["alphabet"]), int(data.get("step", 1))
        if data["kind"] == "sft":
            pats = []
            for f in data.get("forbidden", []):
                if isinstance(f, dict):
                    pats.append((int(f.get("offset", 0)), _as_word(f["word"], n)))
                else:
                    pats.append((0, _as_word(f, n)))
            return cls.sft(n, pats, step)
        pts = [PeriodicPoint.from_dict({"alphabet": n, **o}) for o in data.get("orbits", [])]
        return cls.finite(n, pts, step)


def language(y: Subshift, m: int) -> frozenset:
    return y.windows(m, 0)


@dataclass(frozen=True)
class SubshiftDistance:
    """``value`` is exact when ``exact``; otherwise the distance is at most ``value``."""

    value: Fraction
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f"<= {self.value}"


def metric(x: Subshift, y: Subshift, cutoff: int = 8) -> SubshiftDistance:
    """``2**-m`` for the least ``m`` where the aligned languages differ."""
    for m in range(1, cutoff + 1):
        if x.windows(m) != y.windows(m):
            return SubshiftDistance(Fraction(1, 2**m), True)
    return SubshiftDistance(Fraction(1, 2**cutoff), False)


def agreement_index(x: Subshift, y: Subshift, cutoff: int = 8) -> int:
    """Least ``m`` with differing languages, or ``cutoff + 1`` if none up to the cutoff."""
    for m in range(1, cutoff + 1):
        if x.windows(m) != y.windows(m):
            return m
    return cutoff + 1


def markov_approximation(y: Subshift, m: int) -> Subshift:
    """The forbidden-word subshift allowing exactly the aligned ``m``-words of ``y``."""
    words = [tuple(w) for w in all_words(y.n, m).tolist()]
    pats = [(p, w) for p in range(y.step) for w in words if w not in y.windows(m, p)]
    return Subshift.sft(y.n, pats, y.step)


def is_chain_recurrent(y: Subshift) -> bool:
    """Every edge of the pruned automaton lies inside one strongly connected component."""
    if y.kind == "finite":
        return True
    g = y.graph()
    comp = {}
    for i, c in enumerate(nx.strongly_connected_components(g)):
        for s in c:
            comp[s] = i
    return all(comp[s] == comp[t] for s, t in g.edges)


def finite_approximations(y: Subshift, m: int) -> Subshift:
    """A finite subshift inside ``y`` with the same aligned words of every length up to ``m``.

    Each word is realised by a cycle of the automaton through it.  The
    approximations are nested in ``m``, so their distances to ``y`` decrease.
    """
    if y.kind == "finite":
        return y
    if not is_chain_recurrent(y):
        raise ValueError("finite approximations need a chain recurrent subshift")
    live = y._automaton()
    g = y.graph()
    starts = sorted(s for s in live if s[0] == 0)
    points = set()
    for j in range(1, m + 1):
        for w in sorted(y.windows(j, 0)):
            best = None
            for s in starts:
                t = s
                for a in w:
                    t = live[t].get(a)
                    if t is None:
                        break
                if t is None:
                    continue
                # prefer the periodized word itself, then the shortest way back
                path = [t] if t == s else nx.shortest_path(g, t, s)
                if best is None or len(path) < len(best):
                    best = path
                    if len(best) == 1:
                        break
            back = tuple(g.edges[u, v]["symbol"] for u, v in zip(best, best[1:]))
            x = PeriodicPoint(y.n, tuple(w) + back)
            assert y.contains(x)
            points.add(x)
    return Subshift.finite(y.n, points, y.step)


# -- stabilizers -----------------------------------------------------------

def _simple_conjugate(phi: Element):
    """``(tau, j)`` if ``phi == sigma**-j tau sigma**j`` for a simple automorphism ``tau``."""
    atoms = phi.atoms
    if len(atoms) == 1 and isinstance(atoms[0], SimpleAuto):
        return atoms[0], 0
    if (len(atoms) == 3 and isinstance(atoms[1], SimpleAuto) and isinstance(atoms[0], ShiftPower)
            and isinstance(atoms[2], ShiftPower) and atoms[0].power == -atoms[2].power):
        return atoms[1], atoms[2].power
    return None


def fixes(phi, y: Subshift) -> bool:
    """Whether ``phi`` fixes every point of ``y``."""
    phi = as_element(phi)
    if y.kind == "finite":
        for x in y.points:
            if phi.apply(x.redeclare(math.lcm(x.period, phi.level))) != x:
                return False
        return True
    simple = _simple_conjugate(phi)
    if simple is not None:
        tau, j = simple
        k = tau.level
        for q in range(j, j + math.lcm(k, y.step), k):
            words = y.windows(k, q)
            if words:
                idx = encode_rows(np.array(sorted(words)), y.n)
                if np.any(tau.perm[idx] != idx):
                    return False
        return True
    level = phi.atom_level
    r = phi.radius(level)
    for q in range(0, math.lcm(level, y.step), level):
        words = y.windows((2 * r + 1) * level, q - r * level)
        if not words:
            continue
        arr = np.array(sorted(words), dtype=np.int64)
        out = phi.evaluate(arr)
        if not np.array_equal(out[:, r * level:(r + 1) * level], arr[:, r * level:(r + 1) * level]):
            return False
    return True


def stp(y: Subshift, family: Sequence) -> list[Element]:
    """The members of ``family`` fixing ``y`` pointwise."""
    return [as_element(phi) for phi in family if fixes(phi, y)]


def fix(generators: Sequence, n: int, capacity: int | None = DEFAULT_CAPACITY) -> Subshift:
    """The points fixed by every generator, as a forbidden-word subshift."""
    pinned: list[tuple[int, int, Word]] = []
    steps = [1]
    for phi in generators:
        phi = as_element(phi)
        simple = _simple_conjugate(phi)
        if simple is not None:
            tau, j = simple
            k = tau.level
            words = all_words(n, k, capacity)
            moved = np.flatnonzero(tau.perm != np.arange(tau.perm.size))
            pinned.extend((k, j % k, tuple(words[i].tolist())) for i in moved)
            steps.append(k)
            continue
        level = phi.atom_level
        r = phi.radius(level)
        windows = all_words(n, (2 * r + 1) * level, capacity)
        out = phi.evaluate(windows)
        centre = slice(r * level, (r + 1) * level)
        bad = np.flatnonzero(np.any(out[:, centre] != windows[:, centre], axis=1))
        pinned.extend((level, 0, tuple(windows[i].tolist())) for i in bad)
        steps.append(level)
    step = math.lcm(*steps)
    pats = {((o + t * k) % step, w) for k, o, w in pinned for t in range(step // k)}
    return Subshift.sft(n, pats, step)


def minimal_forbidden_words(y: Subshift, max_length: int, offset: int = 0) -> list[Word]:
    """Words ``v`` outside the aligned language whose maximal proper subwords are inside."""
    out = []
    for m in range(1, max_length + 1):
        here = y.windows(m, offset)
        prefixes = y.windows(m - 1, offset) if m > 1 else {()}
        suffixes = y.windows(m - 1, offset + 1) if m > 1 else {()}
        for u in prefixes:
            for a in range(y.n):
                v = u + (a,)
                if v not in here and v[1:] in suffixes:
                    out.append(v)
    return sorted(out, key=lambda v: (len(v), v))


def swap_gadget(n: int, v: Word, a: int, b: int) -> SimpleAuto:
    """Level ``|v|+1`` simple automorphism exchanging the blocks ``va`` and ``vb``."""
    k = len(v) + 1
    perm = np.arange(n**k)
    i = int(encode_rows(np.array([v + (a,)]), n)[0])
    j = int(encode_rows(np.array([v + (b,)]), n)[0])
    perm[i], perm[j] = j, i
    return SimpleAuto(n, k, perm)


def conjugates(tau: SimpleAuto) -> list[Element]:
    n = tau.n
    return [Element([ShiftPower(n, -j), tau, ShiftPower(n, j)], n=n) for j in range(tau.level)]


def stabilizer_family(y: Subshift, cutoff: int, extra: int = 12, seed: int = 0) -> list[Element]:
    """A test family of automorphisms for stabilizer computations on ``y``.

    It holds, with all shift conjugates, swap gadgets ``va <-> vb`` for the
    minimal forbidden words ``v`` of ``y`` up to the cutoff, random
    transpositions of blocks of length at most 2, and the shift itself.
    """
    n = y.n
    fam: list[Element] = [Element([ShiftPower(n, 1)], n=n)]
    for v in minimal_forbidden_words(y, cutoff):
        for a in range(n if n > 2 else 1):
            fam.extend(conjugates(swap_gadget(n, v, a, (a + 1) % n)))
    rng = np.random.default_rng(seed)
    for _ in range(extra):
        k = int(rng.integers(1, 3))
        size = n**k
        i, j = rng.choice(size, 2, replace=False)
        perm = np.arange(size)
        perm[i], perm[j] = j, i
        fam.extend(conjugates(SimpleAuto(n, k, perm)))
    return fam


def galois_check(y: Subshift, family: Sequence, cutoff: int) -> dict:
    """Compare ``Fix(Stp(y))`` with ``y`` on aligned words up to ``cutoff``."""
    members = stp(y, family)
    z = fix(members, y.n)
    step = math.lcm(z.step, y.step)
    first = None
    contained = True
    for m in range(1, cutoff + 1):
        for p in range(step):
            a, b = y.windows(m, p), z.windows(m, p)
            contained &= a <= b
            if a != b and first is None:
                first = (m, p)
    return {"holds": first is None and contained, "members": len(members), "family": len(family),
            "fix_step": z.step, "first_difference": first, "contained": contained}


def stp_continuity_check(sequence: Sequence[Subshift], y: Subshift, phi) -> dict:
    """Membership of ``phi`` in ``Stp(Y_m)`` settles no later than the relevant words agree."""
    phi = as_element(phi)
    level, r = phi.atom_level, phi.radius(phi.atom_level)
    target = fixes(phi, y)
    member = [fixes(phi, ym) for ym in sequence]
    agree = []
    for ym in sequence:
        s = math.lcm(level, ym.step, y.step)
        width = (2 * r + 1) * level
        agree.append(all(ym.windows(width, q - r * level) == y.windows(width, q - r * level)
                         for q in range(0, s, level)))
    last = len(sequence)

    def settle(flags):
        idx = last
        while idx > 0 and flags[idx - 1]:
            idx -= 1
        return idx

    membership_index = settle([m == target for m in member])
    language_index = settle(agree)
    return {"member_of_limit": target, "membership_index": membership_index,
            "language_index": language_index, "holds": membership_index <= language_index}


# -- realisation on subshifts ---------------------------------------------

def verraum_subshift(psi, y: Subshift, cutoff: int = 6, family: Sequence | None = None,
                     capacity: int | None = DEFAULT_CAPACITY) -> dict:
    """Image of ``y`` under the spatial realisation of ``psi``.

    Finite subshifts are mapped point by point.  Chain recurrent forbidden-
    word subshifts are mapped through their finite approximations and the
    result is read off from the stabilised languages up to ``cutoff``.
    """
    from .psi import degree
    from .verraum import global_verraum

    d, _ = degree(psi, capacity=capacity)
    if y.kind == "finite":
        step = math.lcm(y.step, d)
        image = Subshift.finite(y.n, [global_verraum(psi, x, capacity) for x in y.points], step)
        report = {"kind": "finite", "image": image}
        if family is not None:
            report["stabilizers"] = stabilizer_transport_check(psi, y, image, family)
        return report
    if d != 1:
        raise ValueError("forbidden-word subshifts need an automorphism of degree 1")
    images = []
    for m in range(1, cutoff + 2):
        q = finite_approximations(y, m)
        images.append(Subshift.finite(y.n, [global_verraum(psi, x, capacity) for x in q.points], y.step))
    languages = {}
    for j in range(1, cutoff + 1):
        seq = [z.windows(j) for z in images]
        if seq[-1] != seq[-2]:
            raise NoStabilizationError(f"words of length {j} have not stabilised")
        languages[j] = seq[-1]
    languages[0] = frozenset({()})
    minimal = [u + (a,) for j in range(1, cutoff + 1) for u in languages[j - 1] for a in range(y.n)
               if u + (a,) not in languages[j] and (u + (a,))[1:] in languages[j - 1]]
    del languages[0]
    limit = Subshift.sft(y.n, minimal)
    return {"kind": "sft", "image": limit, "languages": languages, "approximations": images}


def stabilizer_transport_check(psi, y: Subshift, z: Subshift, family: Sequence) -> dict:
    """For each ``phi`` in the family: ``phi`` fixes ``z`` exactly when ``psi(phi)`` fixes ``y``.

    With ``z`` the image of ``y`` this says ``psi(Stp(z)) == Stp(y)`` on the family.
    """
    mismatches = []
    members = 0
    for phi in family:
        phi = as_element(phi)
        a = fixes(phi, z)
        b = fixes(psi.apply(phi), y)
        members += a
        if a != b:
            mismatches.append(phi)
    return {"holds": not mismatches, "members": members, "mismatches": len(mismatches)}
