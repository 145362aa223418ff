"""Chamber orbits, gallery-count matrices and the presented coinvariant group.

Chamber orbits of the type-preserving subgroup are the triples of ``T``: the
chamber ``(g, g x_i, g x_i x_j)`` with ``g`` of type 0 is labelled
``(i, j, k)``.  A walk carries ``(dtype, t)`` where ``dtype`` is the type of
the listed base vertex; rotating the triple rebases the chamber at another
of its vertices, so walks never need group elements.

Panel rules for the chamber ``(dtype, (i, j, k))``:

* crossing label ``dtype`` (drop the base vertex) gives ``(dtype + 1, (j, m, n))``
  for ``(j, m, n)`` in ``T`` other than ``(j, k, i)``;
* label ``dtype + 1`` gives ``(dtype, (a, b, k))`` with ``a != i``;
* label ``dtype + 2`` gives ``(dtype, (i, b, c))`` other than ``(i, j, k)``.

Gallery letters ``s, a, b`` are the vertex types ``0, 1, 2``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .coxeter import CoxeterDiagram, GalleryType, TYPES, minimal_gallery_type, sector_translation
from .exactalg import INFINITE, AbelianGroup, as_intmatrix, cokernel, order_in_cokernel
from .presentation import TrianglePresentation

LABELS = {t: n for n, t in enumerate(TYPES)}

DEFAULT_CONFIGS = ("CtoCprime", "CtoCdoublePrime")


@dataclass(frozen=True, order=True)
class ChamberOrbit:
    triple: tuple[int, int, int]


@dataclass(frozen=True, order=True)
class WalkState:
    dtype: int
    triple: tuple[int, int, int]


def parse_gallery(word) -> GalleryType:
    """Accept ``GalleryType``, ``"s,a,b"``, ``"0,1,2"`` or a sequence of labels."""
    if isinstance(word, GalleryType):
        return word
    if isinstance(word, str):
        parts = [x.strip() for x in word.split(",") if x.strip()] if word.strip() else []
    else:
        parts = list(word)
    letters = []
    for x in parts:
        if isinstance(x, str) and x in LABELS:
            letters.append(x)
        elif str(x) in ("0", "1", "2"):
            letters.append(TYPES[int(x)])
        else:
            raise ValueError(f"gallery letter {x!r} is not one of s, a, b / 0, 1, 2")
    return GalleryType(tuple(letters))


def default_galleries() -> list[GalleryType]:
    """Minimal galleries ``C -> C'`` and ``C -> C''`` of the split ``A2`` apartment."""
    diagram = CoxeterDiagram.make("A2affine", 2)
    return [minimal_gallery_type(diagram, c) for c in DEFAULT_CONFIGS]


class ChamberSystem:
    """Neighbour tables of the chamber orbits of one presentation."""

    def __init__(self, p: TrianglePresentation):
        self.presentation = p
        self.q = p.q
        self.triples: list[tuple[int, int, int]] = p.sorted_triples()
        self.index = {t: n for n, t in enumerate(self.triples)}
        n, q = len(self.triples), p.q
        by_first: dict[int, list[int]] = {}
        by_third: dict[int, list[int]] = {}
        for idx, (i, j, k) in enumerate(self.triples):
            by_first.setdefault(i, []).append(idx)
            by_third.setdefault(k, []).append(idx)
        nbr = np.zeros((3, n, q), dtype=np.int64)
        for idx, (i, j, k) in enumerate(self.triples):
            lists = (
                [x for x in by_first[j] if self.triples[x] != (j, k, i)],
                [x for x in by_third[k] if x != idx],
                [x for x in by_first[i] if x != idx],
            )
            for r, lst in enumerate(lists):
                if len(lst) != q:
                    raise AssertionError(
                        f"panel {r} of chamber {(i, j, k)} has {len(lst) + 1} chambers, expected {q + 1}")
                nbr[r, idx] = lst
        self.nbr = nbr
        trans = np.zeros((3, n, n), dtype=np.int64)
        for r in range(3):
            for idx in range(n):
                trans[r, idx, nbr[r, idx]] = 1
        self.trans = trans
        rebase = np.zeros((3, n), dtype=np.int64)
        for idx, (i, j, k) in enumerate(self.triples):
            rebase[0, idx] = idx
            rebase[1, idx] = self.index[(k, i, j)]
            rebase[2, idx] = self.index[(j, k, i)]
        self.rebase = rebase

    def __len__(self) -> int:
        return len(self.triples)

    def rebased(self, state: WalkState) -> tuple[int, int, int]:
        return self.triples[self.rebase[state.dtype % 3, self.index[state.triple]]]

    def neighbors(self, state: WalkState, crossing_type) -> list[WalkState]:
        label = LABELS[crossing_type] if crossing_type in LABELS else int(crossing_type)
        if label not in (0, 1, 2):
            raise ValueError(f"crossing type {crossing_type!r} is not a panel label")
        if state.triple not in self.index:
            raise ValueError(f"{state.triple} is not a chamber orbit")
        d = state.dtype % 3
        r = (label - d) % 3
        nd = (d + 1) % 3 if r == 0 else d
        return [WalkState(nd, self.triples[x]) for x in self.nbr[r, self.index[state.triple]]]


def chamber_orbits(p: TrianglePresentation) -> list[ChamberOrbit]:
    return [ChamberOrbit(t) for t in p.sorted_triples()]


def neighbors(state: WalkState, crossing_type, p: TrianglePresentation | ChamberSystem) -> list[WalkState]:
    system = p if isinstance(p, ChamberSystem) else ChamberSystem(p)
    return system.neighbors(state, crossing_type)


@dataclass(frozen=True)
class GalleryCountMatrix:
    gallery: GalleryType
    m: np.ndarray
    n_value: int

    @property
    def row_sums_ok(self) -> bool:
        return all(int(x) == self.n_value for x in self.m.sum(axis=1))

    @property
    def col_sums_ok(self) -> bool:
        return all(int(x) == self.n_value for x in self.m.sum(axis=0))

    def to_dict(self) -> dict:
        return {"gallery": str(self.gallery), "N": self.n_value, "size": int(self.m.shape[0]),
                "row_sums_ok": self.row_sums_ok, "col_sums_ok": self.col_sums_ok,
                "nonnegative": bool(np.all(self.m >= 0))}


def _system(p) -> ChamberSystem:
    return p if isinstance(p, ChamberSystem) else ChamberSystem(p)


def gallery_matrix(p: TrianglePresentation | ChamberSystem, gallery, workers: int = 1,
                   chunk: int | None = None) -> GalleryCountMatrix:
    """``M[x][y]``: galleries of the given type from ``x`` ending in orbit ``y``.

    Start orbits are split into chunks counted independently (optionally on
    a thread pool) and reassembled in order, so the result does not depend
    on ``workers``.
    """
    system = _system(p)
    g = parse_gallery(gallery)
    if len(g) and g.word[0] != "s":
        raise ValueError(f"gallery {g} must start with s")
    n = len(system)
    n_value = system.q ** len(g)
    word = np.array(g.as_ints(), dtype=np.int64)
    big = n_value >= _kernels.INT64_LIMIT
    starts = np.arange(n, dtype=np.int64)
    if chunk is None:
        chunk = max(1, -(-n // max(1, workers)))
    pieces = [starts[i:i + chunk] for i in range(0, n, chunk)]

    def run(s):
        return _kernels.propagate(system.nbr, system.trans, system.rebase, word, s, big)

    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, pieces))
    else:
        parts = [run(s) for s in pieces]
    m = as_intmatrix(np.concatenate(parts, axis=0)) if not big else np.concatenate(parts, axis=0)
    out = GalleryCountMatrix(g, m, n_value)
    if not (out.row_sums_ok and out.col_sums_ok):
        raise AssertionError(f"gallery {g}: row/column sums differ from N = {n_value}")
    return out


def gallery_matrix_dfs(p: TrianglePresentation | ChamberSystem, gallery) -> np.ndarray:
    """Reference count by explicit depth-first enumeration of every gallery."""
    system = _system(p)
    g = parse_gallery(gallery)
    n = len(system)
    m = [[0] * n for _ in range(n)]
    labels = g.as_ints()
    for x, t in enumerate(system.triples):
        stack = [(WalkState(0, t), 0)]
        while stack:
            state, depth = stack.pop()
            if depth == len(labels):
                m[x][system.index[system.rebased(state)]] += 1
                continue
            for nb in system.neighbors(state, labels[depth]):
                stack.append((nb, depth + 1))
    return as_intmatrix(m)


@dataclass(frozen=True)
class CoinvariantModel:
    group: AbelianGroup
    ord_one: object
    relation_source: tuple[str, ...]
    matrices: tuple[GalleryCountMatrix, ...] = ()

    def to_dict(self) -> dict:
        return {"group": self.group.to_dict(), "group_str": str(self.group),
                "ord_one": _order_token(self.ord_one),
                "relation_source": list(self.relation_source)}


def _order_token(x):
    return "infinite" if x is INFINITE else int(x)


def validate_loop_word(gallery) -> GalleryType:
    """Reject words that are not minimal galleries ``C -> C + v'`` inside the sector."""
    g = parse_gallery(gallery)
    if not len(g) or g.word[0] != "s":
        raise ValueError(f"gallery {g} must start with s")
    sector_translation("A2affine", g.word)
    return g


def relation_rows(m: np.ndarray) -> list[list[int]]:
    """Rows ``e_x - sum_y M(x, y) e_y``."""
    rows = []
    for x in range(m.shape[0]):
        row = [-int(v) for v in m[x]]
        row[x] += 1
        rows.append(row)
    return rows


def coinvariant_model(p: TrianglePresentation | ChamberSystem,
                      galleries: Iterable | None = None, extra: Iterable = (),
                      workers: int = 1) -> CoinvariantModel:
    """Cokernel of the gallery relations and the order of ``[1] = sum_x [x]``.

    This group surjects onto the boundary coinvariants, so ``ord_one``
    bounds the true order from above.
    """
    system = _system(p)
    words = list(default_galleries() if galleries is None else (parse_gallery(g) for g in galleries))
    words += [parse_gallery(g) for g in extra]
    if not words:
        raise ValueError("need at least one gallery type")
    words = [validate_loop_word(g) for g in words]
    seen, unique = set(), []
    for g in words:
        if g not in seen:
            seen.add(g)
            unique.append(g)
    mats = tuple(gallery_matrix(system, g, workers=workers) for g in unique)
    rows = [r for mat in mats for r in relation_rows(mat.m)]
    n = len(system)
    group = cokernel(rows, cols=n)
    ord_one = order_in_cokernel(rows, [1] * n, cols=n)
    return CoinvariantModel(group, ord_one, tuple(str(g) for g in unique), mats)
