"""Rank-2 affine Coxeter diagrams and their alcove geometry.

Each diagram is realised as a triangle tiling of the plane with exact
rational coordinates (a rational Gram matrix absorbs the irrational
lengths).  An alcove is a triple of vertices indexed by type ``(s, a, b)``;
crossing the panel of cotype ``t`` reflects the type-``t`` vertex through
the line spanned by the other two.  Galleries, residues and translates of
the base chamber are all computed by breadth-first search over this
adjacency.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

TYPES = ("s", "a", "b")

KINDS = ("A2affine", "B2affine", "G2affine")

_KIND_ALIASES = {
    "a2": "A2affine",
    "a2affine": "A2affine",
    "a2tilde": "A2affine",
    "b2": "B2affine",
    "b2affine": "B2affine",
    "b2tilde": "B2affine",
    "c2": "B2affine",
    "g2": "G2affine",
    "g2affine": "G2affine",
    "g2tilde": "G2affine",
}

# edge orders m(s,a), m(a,b), m(b,s)
_EDGE_ORDERS = {
    "A2affine": (3, 3, 3),
    "B2affine": (4, 4, 2),
    "G2affine": (3, 6, 2),
}

_SPECIAL = {
    "A2affine": ("s", "a", "b"),
    "B2affine": ("s", "b"),
    "G2affine": ("s",),
}

_F = Fraction

# (Gram matrix, base chamber vertices by type)
_GEOMETRY = {
    "A2affine": (((_F(1), _F(1, 2)), (_F(1, 2), _F(1))),
                 ((_F(0), _F(0)), (_F(1), _F(0)), (_F(0), _F(1)))),
    "B2affine": (((_F(1), _F(0)), (_F(0), _F(1))),
                 ((_F(0), _F(0)), (_F(0), _F(1)), (_F(1), _F(1)))),
    "G2affine": (((_F(1), _F(0)), (_F(0), _F(3))),
                 ((_F(0), _F(0)), (_F(0), _F(1)), (_F(1), _F(1)))),
}

STANDARD_CONFIGS = ("CtoCprime", "CtoCdoublePrime", "CtoCprimeTwoSpecial")


def normalize_kind(kind: str) -> str:
    if kind in KINDS:
        return kind
    key = kind.lower().replace("~", "").replace("_", "").replace("-", "")
    try:
        return _KIND_ALIASES[key]
    except KeyError:
        raise ValueError(f"unknown diagram kind {kind!r}; expected one of {KINDS}") from None


@dataclass(frozen=True)
class CoxeterDiagram:
    """Rank-2 affine diagram with thickness parameters ``q_t``.

    ``params`` holds ``(q_s, q_a, q_b)``.  Types joined by an edge of odd
    order must carry equal parameters (their panels are conjugate), which
    forces ``q_s = q_a = q_b`` for A2affine and ``q_s = q_a`` for G2affine.
    """

    kind: str
    params: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        params = tuple(int(q) for q in self.params)
        if len(params) != 3:
            raise ValueError("expected three parameters (q_s, q_a, q_b)")
        object.__setattr__(self, "params", params)
        for t, q in zip(TYPES, params):
            if q < 2:
                raise ValueError(f"q_{t} = {q}; thickness requires q_t >= 2")
        for (x, y), m in zip((("s", "a"), ("a", "b"), ("b", "s")), _EDGE_ORDERS[self.kind]):
            if m % 2 and self.q(x) != self.q(y):
                raise ValueError(
                    f"{self.kind}: m({x},{y}) = {m} is odd, so q_{x} must equal q_{y}")

    @classmethod
    def make(cls, kind: str, q) -> "CoxeterDiagram":
        """Build from a single split parameter, a 3-sequence, or a mapping."""
        if isinstance(q, Mapping):
            params = tuple(q[t] for t in TYPES)
        elif isinstance(q, int):
            params = (q, q, q)
        else:
            q = list(q)
            params = tuple(q * 3) if len(q) == 1 else tuple(q)
        return cls(kind, params)

    @property
    def types(self) -> tuple[str, str, str]:
        return TYPES

    @property
    def special_types(self) -> tuple[str, ...]:
        return _SPECIAL[self.kind]

    @property
    def edge_orders(self) -> dict[tuple[str, str], int]:
        ms, ma, mb = _EDGE_ORDERS[self.kind]
        return {("s", "a"): ms, ("a", "b"): ma, ("b", "s"): mb}

    def m(self, x: str, y: str) -> int:
        orders = self.edge_orders
        return orders.get((x, y)) or orders[(y, x)]

    def q(self, t: str) -> int:
        return self.params[TYPES.index(t)]

    @property
    def is_split(self) -> bool:
        return len(set(self.params)) == 1

    @property
    def is_exceptional(self) -> bool:
        return self.kind == "G2affine"

    @property
    def chi_exponent(self) -> int:
        """``m`` in ``chi = (q-1)(q^m-1) n_s``: 2, 3, 5 for A2, B2, G2."""
        return {"A2affine": 2, "B2affine": 3, "G2affine": 5}[self.kind]


@dataclass(frozen=True)
class Monomial:
    """``q_s^s q_a^a q_b^b``."""

    s: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if min(self.s, self.a, self.b) < 0:
            raise ValueError("monomial exponents must be nonnegative")

    @classmethod
    def from_word(cls, word: Iterable[str]) -> "Monomial":
        word = list(word)
        return cls(word.count("s"), word.count("a"), word.count("b"))

    @property
    def exponents(self) -> tuple[int, int, int]:
        return (self.s, self.a, self.b)

    @property
    def degree(self) -> int:
        return self.s + self.a + self.b

    def value(self, diagram: CoxeterDiagram) -> int:
        qs, qa, qb = diagram.params
        return qs**self.s * qa**self.a * qb**self.b

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.s + other.s, self.a + other.a, self.b + other.b)

    def __str__(self) -> str:
        parts = []
        for t, e in zip(TYPES, self.exponents):
            if e:
                parts.append(f"q_{t}" if e == 1 else f"q_{t}^{e}")
        return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class GalleryType:
    """Word of crossed panel cotypes."""

    word: tuple[str, ...]

    def __post_init__(self):
        word = tuple(self.word)
        bad = [t for t in word if t not in TYPES]
        if bad:
            raise ValueError(f"gallery letters {bad} not in {TYPES}")
        object.__setattr__(self, "word", word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def reversed(self) -> "GalleryType":
        return GalleryType(self.word[::-1])

    def as_ints(self) -> tuple[int, ...]:
        return tuple(TYPES.index(t) for t in self.word)

    def __str__(self) -> str:
        return ",".join(self.word)


# --- alcove geometry ---------------------------------------------------------

Point = tuple[Fraction, Fraction]
Alcove = tuple[Point, Point, Point]


def base_chamber(kind: str) -> Alcove:
    return _GEOMETRY[normalize_kind(kind)][1]


def _dot(gram, u, v) -> Fraction:
    return (u[0] * (gram[0][0] * v[0] + gram[0][1] * v[1])
            + u[1] * (gram[1][0] * v[0] + gram[1][1] * v[1]))


def _reflect(gram, x: Point, p: Point, r: Point) -> Point:
    d = (r[0] - p[0], r[1] - p[1])
    g = (gram[0][0] * d[0] + gram[0][1] * d[1], gram[1][0] * d[0] + gram[1][1] * d[1])
    n = (-g[1], g[0])
    xp = (x[0] - p[0], x[1] - p[1])
    c = 2 * _dot(gram, n, xp) / _dot(gram, n, n)
    return (x[0] - c * n[0], x[1] - c * n[1])


def cross(kind: str, alcove: Alcove, t: str) -> Alcove:
    """The alcove sharing the panel of cotype ``t`` with ``alcove``."""
    gram = _GEOMETRY[kind][0]
    i = TYPES.index(t)
    others = [alcove[j] for j in range(3) if j != i]
    out = list(alcove)
    out[i] = _reflect(gram, alcove[i], others[0], others[1])
    return tuple(out)


def _wall(alcove: Alcove, t: str) -> tuple[int, int, int]:
    """Canonical integer equation of the line carrying the cotype-``t`` panel."""
    i = TYPES.index(t)
    p, r = [alcove[j] for j in range(3) if j != i]
    a = r[1] - p[1]
    b = p[0] - r[0]
    c = a * p[0] + b * p[1]
    den = 1
    for x in (a, b, c):
        den = den * x.denominator // gcd(den, x.denominator)
    coeffs = [int(x * den) for x in (a, b, c)]
    g = 0
    for x in coeffs:
        g = gcd(g, x)
    coeffs = [x // g for x in coeffs]
    if coeffs[0] < 0 or (coeffs[0] == 0 and coeffs[1] < 0):
        coeffs = [-x for x in coeffs]
    return tuple(coeffs)


def translate(alcove: Alcove, v: Point) -> Alcove:
    return tuple((p[0] + v[0], p[1] + v[1]) for p in alcove)


def walk(kind: str, word: Iterable[str], start: Alcove | None = None) -> list[Alcove]:
    kind = normalize_kind(kind)
    cur = base_chamber(kind) if start is None else start
    out = [cur]
    for t in word:
        cur = cross(kind, cur, t)
        out.append(cur)
    return out


def is_reduced(kind: str, word: Sequence[str]) -> bool:
    """A gallery is minimal iff it never crosses the same wall twice."""
    kind = normalize_kind(kind)
    cur = base_chamber(kind)
    seen = set()
    for t in word:
        w = _wall(cur, t)
        if w in seen:
            return False
        seen.add(w)
        cur = cross(kind, cur, t)
    return True


def _bfs_path(kind: str, start: Alcove, target: Alcove, limit: int = 64) -> tuple[str, ...]:
    """Lexicographically least shortest word from ``start`` to ``target``."""
    if start == target:
        return ()
    parent: dict[Alcove, tuple[Alcove, str] | None] = {start: None}
    frontier = deque([start])
    depth = {start: 0}
    while frontier:
        cur = frontier.popleft()
        if depth[cur] >= limit:
            break
        for t in TYPES:
            nxt = cross(kind, cur, t)
            if nxt in parent:
                continue
            parent[nxt] = (cur, t)
            depth[nxt] = depth[cur] + 1
            if nxt == target:
                word = []
                node = nxt
                while parent[node] is not None:
                    node, letter = parent[node]
                    word.append(letter)
                return tuple(reversed(word))
            frontier.append(nxt)
    raise ValueError(f"target alcove not reached within {limit} steps")


def gallery_distance(kind: str, target: Alcove, start: Alcove | None = None) -> int:
    kind = normalize_kind(kind)
    return len(_bfs_path(kind, base_chamber(kind) if start is None else start, target))


@lru_cache(maxsize=None)
def vertex_types(kind: str, radius: int = 16) -> dict[Point, str]:
    """Types of all vertices of alcoves within ``radius`` steps of the base chamber."""
    kind = normalize_kind(kind)
    c = base_chamber(kind)
    types: dict[Point, str] = {}
    seen = {c}
    frontier = [c]
    for _ in range(radius + 1):
        nxt = []
        for al in frontier:
            for t, p in zip(TYPES, al):
                types.setdefault(p, t)
            for t in TYPES:
                n = cross(kind, al, t)
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
        frontier = nxt
    return types


def _typed(kind: str, points: Iterable[Point]) -> Alcove:
    """Order three vertices of an alcove by their types."""
    types = vertex_types(kind)
    by_type = {types[p]: p for p in points}
    return tuple(by_type[t] for t in TYPES)


def _in_sector(kind: str, v: Point) -> bool:
    """Whether ``v`` lies in the closed cone over the base chamber at its s-vertex."""
    _, pa, pb = base_chamber(kind)
    # v = x pa + y pb
    det_ = pa[0] * pb[1] - pa[1] * pb[0]
    x = (v[0] * pb[1] - v[1] * pb[0]) / det_
    y = (pa[0] * v[1] - pa[1] * v[0]) / det_
    return x >= 0 and y >= 0


def _config_target(diagram: CoxeterDiagram, config: str) -> Alcove:
    kind = diagram.kind
    c = base_chamber(kind)
    v, pa, pb = c
    if config == "CtoCprime":
        vp = _reflect(_GEOMETRY[kind][0], v, pa, pb)
        return translate(c, vp)
    if config == "CtoCdoublePrime":
        types = vertex_types(kind)
        for k in range(2, 12):
            p = (k * pb[0], k * pb[1])
            if types.get(p) == "s":
                return translate(c, p)
        raise AssertionError("no special vertex found on the b-ray")
    if config == "CtoCprimeTwoSpecial":
        if len(diagram.special_types) < 2:
            raise ValueError(
                f"{kind} has a single special type; CtoCprimeTwoSpecial is undefined")
        return _typed(kind, translate(c, pb))
    raise ValueError(f"unknown configuration {config!r}; expected one of {STANDARD_CONFIGS}")


def minimal_gallery_type(diagram: CoxeterDiagram, config: str) -> GalleryType:
    """Type of a minimal gallery from the base chamber ``C`` to ``C'``/``C''``.

    ``C'`` is the translate of ``C`` to the special vertex obtained by
    reflecting the base vertex in the opposite panel; ``C''`` the translate
    to the first type-``s`` vertex along the ray through the ``b``-vertex of
    ``C``; for ``CtoCprimeTwoSpecial`` the translate of ``C`` to its own
    second special vertex.  The lexicographically least shortest word is
    returned.
    """
    if config == "CtoCprimeTwoSpecial" and len(diagram.special_types) < 2:
        raise ValueError(
            f"{diagram.kind} has a single special type; CtoCprimeTwoSpecial is undefined")
    return GalleryType(_minimal_word(diagram.kind, config))


@lru_cache(maxsize=None)
def _minimal_word(kind: str, config: str) -> tuple[str, ...]:
    # the geometry depends on the kind only, not on the parameters
    diagram = CoxeterDiagram(kind, (2, 2, 2))
    word = _bfs_path(kind, base_chamber(kind), _config_target(diagram, config))
    if not word or word[0] != "s":
        raise AssertionError(f"minimal gallery {word} does not start with s")
    return word


def sector_translation(diagram: CoxeterDiagram | str, word: Sequence[str]) -> Point:
    """Check that ``word`` is a valid loop configuration and return its translation.

    Valid means: the gallery starting at ``C`` is minimal and ends at the
    translate ``C + v'`` of ``C`` by a type-``s`` vertex ``v'`` of the closed
    sector spanned by ``C``.  Raises ``ValueError`` otherwise.
    """
    kind = diagram.kind if isinstance(diagram, CoxeterDiagram) else normalize_kind(diagram)
    word = tuple(word)
    bad = [t for t in word if t not in TYPES]
    if bad:
        raise ValueError(f"gallery letters {bad} not in {TYPES}")
    if not is_reduced(kind, word):
        raise ValueError(f"gallery word {','.join(word)} is not reduced")
    c = base_chamber(kind)
    end = walk(kind, word)[-1]
    v = end[0]
    if translate(c, v) != end:
        raise ValueError(f"gallery word {','.join(word)} does not end at a translate of C")
    if not _in_sector(kind, v):
        raise ValueError(f"gallery word {','.join(word)} leaves the sector based at C")
    return v


def sector_translation_words(diagram: CoxeterDiagram, max_length: int) -> list[GalleryType]:
    """All loop configurations ``C -> C + v'`` of gallery length <= ``max_length``.

    One (lexicographically least) word per translation, ordered by length
    then word.
    """
    kind = diagram.kind
    c = base_chamber(kind)
    parent: dict[Alcove, tuple[Alcove, str] | None] = {c: None}
    layer = [c]
    found: list[tuple[str, ...]] = []
    for _ in range(max_length):
        nxt = []
        for al in layer:
            for t in TYPES:
                n = cross(kind, al, t)
                if n in parent:
                    continue
                parent[n] = (al, t)
                nxt.append(n)
        for al in nxt:
            v = al[0]
            if translate(c, v) == al and _in_sector(kind, v):
                word = []
                node = al
                while parent[node] is not None:
                    node, letter = parent[node]
                    word.append(letter)
                found.append(tuple(reversed(word)))
        layer = nxt
    found.sort(key=lambda w: (len(w), w))
    return [GalleryType(w) for w in found]


def gallery_count(diagram: CoxeterDiagram, g: GalleryType | Sequence[str]) -> Monomial:
    """Number of galleries of type ``g`` ending at a fixed chamber, as a monomial."""
    if not isinstance(g, GalleryType):
        g = GalleryType(tuple(g))
    return Monomial.from_word(g.word)


def residue_words(diagram: CoxeterDiagram, t: str) -> list[tuple[str, ...]]:
    """Reduced words of the residue group ``W_{I - {t}}``, one per element.

    Found by breadth-first search over the alcoves containing the type-``t``
    vertex of ``C``.
    """
    if t not in TYPES:
        raise ValueError(f"type {t!r} not in {TYPES}")
    kind = diagram.kind
    c = base_chamber(kind)
    gens = [x for x in TYPES if x != t]
    words = {c: ()}
    frontier = deque([c])
    while frontier:
        cur = frontier.popleft()
        for x in gens:
            n = cross(kind, cur, x)
            if n not in words:
                words[n] = words[cur] + (x,)
                frontier.append(n)
    return list(words.values())


def alpha(diagram: CoxeterDiagram, t: str) -> int:
    """Number of chambers containing a vertex of type ``t``, weighted by ``q``.

    Poincare sum over the finite dihedral residue group: each element
    contributes the product of ``q_j`` over the letters of a reduced word.
    """
    total = 0
    for w in residue_words(diagram, t):
        total += Monomial.from_word(w).value(diagram)
    return total


def covolume(n_s: int, diagram: CoxeterDiagram) -> int:
    """Number of chamber orbits of a lattice with ``n_s`` orbits of s-vertices."""
    if n_s < 1:
        raise ValueError("n_s must be positive")
    return n_s * alpha(diagram, "s")
