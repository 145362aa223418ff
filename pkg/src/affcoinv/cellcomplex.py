"""The quotient complex of the building by a triangle-presentation lattice.

The lattice acts simply transitively on vertices, so the quotient has one
vertex per type, ``3P`` edge orbits and ``|T|`` triangle orbits.  Edges are
keyed by ``(family, generator)``: family ``01`` edges by the generator of the
step from the type-0 vertex, families ``12`` and ``20`` by the second and
third triple coordinates.  The triangle ``(i, j, k)`` has boundary
``e01_i + e12_j + e20_k`` and ``e01_i -> v1 - v0``, ``e12_j -> v2 - v1``,
``e20_k -> v0 - v2``.

The quotient is a ``K(Gamma, 1)``, so its homology is the group homology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactalg import AbelianGroup, as_intmatrix, matmul, smith_normal_form
from .presentation import TrianglePresentation

FAMILIES = ("01", "12", "20")


@dataclass(frozen=True)
class QuotientComplex:
    name: str
    q: int
    triples: tuple[tuple[int, int, int], ...]
    boundary_1: np.ndarray  # edges x vertices
    boundary_2: np.ndarray  # triangles x edges

    @property
    def vertices(self) -> int:
        return self.boundary_1.shape[1]

    @property
    def edges(self) -> int:
        return self.boundary_1.shape[0]

    @property
    def faces(self) -> int:
        return self.boundary_2.shape[0]

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    def edge_label(self, e: int) -> str:
        gens = self.edges // 3
        return f"e{FAMILIES[e // gens]}_{e % gens}"


@dataclass(frozen=True)
class HomologyResult:
    H0: AbelianGroup
    H1: AbelianGroup
    H2: AbelianGroup
    euler: int

    def to_dict(self) -> dict:
        return {"H0": self.H0.to_dict(), "H1": self.H1.to_dict(),
                "H2": self.H2.to_dict(), "euler": self.euler}


def build_complex(p: TrianglePresentation) -> QuotientComplex:
    gens = p.gens
    triples = tuple(p.sorted_triples())
    d1 = [[0, 0, 0] for _ in range(3 * gens)]
    for g in range(gens):
        d1[g][0], d1[g][1] = -1, 1                 # e01: v0 -> v1
        d1[gens + g][1], d1[gens + g][2] = -1, 1   # e12: v1 -> v2
        d1[2 * gens + g][2], d1[2 * gens + g][0] = -1, 1  # e20: v2 -> v0
    d2 = []
    for i, j, k in triples:
        row = [0] * (3 * gens)
        row[i] += 1
        row[gens + j] += 1
        row[2 * gens + k] += 1
        d2.append(row)
    c = QuotientComplex(p.name, p.q, triples, as_intmatrix(d1), as_intmatrix(d2, 3 * gens))
    if np.any(matmul(c.boundary_2, c.boundary_1) != 0):
        raise AssertionError("boundary of a boundary is nonzero")
    return c


def _snf_diag(a: np.ndarray) -> list[int]:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return []
    return [d for d in smith_normal_form(a, transforms=False).diagonal if d]


def homology(c: QuotientComplex) -> HomologyResult:
    """Integer homology from the Smith forms of the two boundary maps.

    ``H_k = Z^(dim C_k - rank d_k - rank d_{k+1}) + torsion(coker d_{k+1})``.
    """
    d1 = _snf_diag(c.boundary_1)
    d2 = _snf_diag(c.boundary_2)
    r1, r2 = len(d1), len(d2)
    h0 = AbelianGroup(c.vertices - r1, tuple(d for d in d1 if d > 1))
    h1 = AbelianGroup(c.edges - r1 - r2, tuple(d for d in d2 if d > 1))
    # nothing maps into C_2, so H_2 = ker d_2 is free
    h2 = AbelianGroup(c.faces - r2, ())
    if h0 != AbelianGroup(1):
        raise AssertionError(f"quotient complex is not connected: H0 = {h0}")
    euler = h0.free_rank - h1.free_rank + h2.free_rank
    if euler != c.euler:
        raise AssertionError(f"rank sum {euler} differs from cell count {c.euler}")
    return HomologyResult(h0, h1, h2, euler)


def euler_characteristic_formula(q: int, n_s: int = 1, kind: str = "A2affine") -> int:
    """``(q - 1)(q^m - 1) n_s`` with ``m = 2, 3, 5`` for ``A2, B2, G2``."""
    from .coxeter import CoxeterDiagram

    if q < 2 or n_s < 1:
        raise ValueError("need q >= 2 and n_s >= 1")
    m = CoxeterDiagram.make(kind, q).chi_exponent
    return (q - 1) * (q**m - 1) * n_s


def reduced_k_groups(h: HomologyResult) -> tuple[AbelianGroup, AbelianGroup]:
    """``K0 = Z^chi`` and ``K1 = H1`` of the reduced group C*-algebra."""
    if not h.H1.is_finite:
        raise ValueError(f"H1 = {h.H1} is infinite; these lattices have finite abelianization")
    if h.euler < 0:
        raise ValueError(f"negative Euler characteristic {h.euler}")
    return AbelianGroup(h.euler), h.H1
