"""Finitely presented groups: coset enumeration, Reidemeister-Schreier, abelianization.

Words are tuples of letters; generator ``g`` is letter ``2g`` and its
inverse is ``2g + 1``.  This is an independent route to the abelianization
of the type-preserving subgroup, which must agree with the first homology of
the quotient complex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactalg import AbelianGroup, cokernel
from .presentation import TrianglePresentation

Word = tuple[int, ...]

DEFAULT_COSET_LIMIT = 10_000


class CosetLimitError(RuntimeError):
    """Coset enumeration exceeded its limit."""


def inv(letter: int) -> int:
    return letter ^ 1


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(inv(x) for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == inv(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == inv(w[j]):
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def word(*pairs: tuple[int, int]) -> Word:
    """Build a word from ``(generator, exponent)`` pairs."""
    out = []
    for g, e in pairs:
        out.extend([2 * g + (e < 0)] * abs(e))
    return free_reduce(out)


@dataclass(frozen=True)
class FpGroup:
    gens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        rels = []
        for r in self.relators:
            r = cyclic_reduce(r)
            if any(not 0 <= x < 2 * self.gens for x in r):
                raise ValueError(f"relator {r} uses a letter outside {2 * self.gens}")
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def from_presentation(cls, p: TrianglePresentation) -> "FpGroup":
        """``<x_0..x_{P-1} | x_i x_j x_k for (i, j, k) in T>`` (one relator per cycle)."""
        rels = [tuple(2 * g for g in t) for t in p.cyclic_classes()]
        return cls(p.gens, tuple(rels))


@dataclass(frozen=True)
class CosetTable:
    """``table[c][letter]`` is the coset ``c * letter``; coset 0 is the subgroup."""

    table: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, c: int, w: Sequence[int]) -> int:
        for x in w:
            c = self.table[c][x]
        return c


class _Enumerator:
    """Hasselgrove-Leech-Trotter enumeration with coincidence processing."""

    def __init__(self, nletters: int, limit: int):
        self.n = nletters
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * nletters]
        self.parent = [0]  # union-find forwarding for coincident cosets
        self.live = 1

    def find(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def new_coset(self) -> int:
        if self.live >= self.limit:
            raise CosetLimitError(f"coset enumeration exceeded {self.limit} cosets")
        self.table.append([None] * self.n)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def define(self, c: int, x: int) -> int:
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][inv(x)] = c
        return d

    def lookup(self, c: int, x: int):
        d = self.table[c][x]
        return None if d is None else self.find(d)

    def coincidence(self, a: int, b: int) -> None:
        queue = deque([(a, b)])
        while queue:
            a, b = (self.find(x) for x in queue.popleft())
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.live -= 1
            for x in range(self.n):
                d = self.table[b][x]
                if d is None:
                    continue
                d = self.find(d)
                self.table[b][x] = None
                e = self.lookup(a, x)
                if e is None:
                    self.table[a][x] = d
                else:
                    queue.append((d, e))
                f = self.lookup(d, inv(x))
                if f is None:
                    self.table[d][inv(x)] = a
                elif f != a:
                    queue.append((f, a))

    def scan_and_fill(self, c: int, w: Word) -> None:
        """Trace ``w`` from ``c`` in both directions, defining cosets to close it."""
        if not w:
            return
        while True:
            f, i = c, 0
            while i < len(w):
                nxt = self.lookup(f, w[i])
                if nxt is None:
                    break
                f, i = nxt, i + 1
            else:
                if f != self.find(c):
                    self.coincidence(f, c)
                return
            b, j = self.find(c), len(w) - 1
            while j >= i:
                nxt = self.lookup(b, inv(w[j]))
                if nxt is None:
                    break
                b, j = nxt, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][w[i]] = b
                self.table[b][inv(w[i])] = f
                return
            self.define(f, w[i])

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c


def coset_enumeration(g: FpGroup, subgroup_gens: Iterable[Sequence[int]] = (),
                      limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    """Coset table of ``<subgroup_gens>`` in ``g``; raises ``CosetLimitError``."""
    if limit < 1:
        raise ValueError("coset limit must be positive")
    e = _Enumerator(2 * g.gens, limit)
    for w in subgroup_gens:
        e.scan_and_fill(0, free_reduce(w))
    c = 0
    while c < len(e.table):
        if e.is_live(c):
            for r in g.relators:
                if not e.is_live(c):
                    break
                e.scan_and_fill(c, r)
            if e.is_live(c):
                for x in range(e.n):
                    if e.table[c][x] is None:
                        e.define(c, x)
        c += 1
    live = [c for c in range(len(e.table)) if e.is_live(c)]
    # renumber in breadth-first order from the subgroup coset
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(e.n):
            d = e.lookup(c, x)
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    if len(order) != len(live):
        raise AssertionError("coset table is not connected")
    rows = [None] * len(order)
    for c, idx in order.items():
        rows[idx] = tuple(order[e.lookup(c, x)] for x in range(e.n))
    table = CosetTable(tuple(rows))
    _check_closed(g, table)
    return table


def _check_closed(g: FpGroup, t: CosetTable) -> None:
    for c in range(t.index):
        for x in range(len(t.table[c])):
            if t.table[t.table[c][x]][inv(x)] != c:
                raise AssertionError(f"coset table not consistent at ({c}, {x})")
        for r in g.relators:
            if t.act(c, r) != c:
                raise AssertionError(f"relator {r} does not close at coset {c}")


def schreier_transversal(t: CosetTable) -> list[Word]:
    """Representatives by breadth-first search over positive letters, lowest first."""
    reps: dict[int, Word] = {0: ()}
    queue = deque([0])
    ngens = len(t.table[0]) // 2
    while queue:
        c = queue.popleft()
        for gen in range(ngens):
            d = t.table[c][2 * gen]
            if d not in reps:
                reps[d] = reps[c] + (2 * gen,)
                queue.append(d)
    if len(reps) != t.index:
        raise AssertionError("positive letters do not reach every coset")
    return [reps[c] for c in range(t.index)]


def reidemeister_schreier(g: FpGroup, t: CosetTable) -> FpGroup:
    """Presentation of the subgroup on the Schreier generators ``(coset, generator)``.

    Generator ``c * g.gens + x`` stands for ``rep(c) x rep(c x)^{-1}``; those
    that are trivial because of the transversal tree are killed by extra
    one-letter relators, keeping all ``index * gens`` symbols so that the
    count ``index * gens - index + 1`` of nontrivial ones can be checked.
    """
    reps = schreier_transversal(t)
    n = g.gens
    trivial = set()
    for c, w in enumerate(reps):
        if w:
            parent = t.act(0, w[:-1])
            trivial.add(parent * n + w[-1] // 2)
    nontrivial = t.index * n - len(trivial)
    if nontrivial != t.index * n - t.index + 1:
        raise AssertionError(f"{nontrivial} Schreier generators, expected {t.index * n - t.index + 1}")
    rels: list[Word] = [(2 * s,) for s in sorted(trivial)]
    for c in range(t.index):
        for r in g.relators:
            out = []
            cur = c
            for x in r:
                gen = x // 2
                if x % 2 == 0:
                    out.append(2 * (cur * n + gen))
                    cur = t.table[cur][x]
                else:
                    cur = t.table[cur][x]
                    out.append(2 * (cur * n + gen) + 1)
            if cur != c:
                raise AssertionError("relator does not close in the coset table")
            rels.append(tuple(out))
    return FpGroup(t.index * n, tuple(rels))


def abelianization(g: FpGroup) -> AbelianGroup:
    rows = []
    for r in g.relators:
        row = [0] * g.gens
        for x in r:
            row[x // 2] += -1 if x % 2 else 1
        rows.append(row)
    return cokernel(rows, cols=g.gens)


def type_preserving_subgroup(p: TrianglePresentation, limit: int = DEFAULT_COSET_LIMIT):
    """Coset table and rewritten presentation of the kernel of ``x_j -> 1 in Z/3``."""
    from .presentation import type_epimorphism_check

    g = FpGroup.from_presentation(p)
    gens = [word(*w) for w in type_epimorphism_check(p)]
    table = coset_enumeration(g, gens, limit)
    return g, table, reidemeister_schreier(g, table)
