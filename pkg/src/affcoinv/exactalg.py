"""Exact integer linear algebra over Python integers.

Matrices are 2-D numpy arrays of ``dtype=object`` holding Python ``int``
entries, so nothing here ever overflows or touches floating point.  The
artifact-wide convention is that *rows are relations and columns are
generators*: the cokernel of ``a`` is ``Z^cols / rowspace(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class _Infinite:
    """Order of an element with a free component."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def as_intmatrix(a, cols: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a 2-D object array of Python ints.

    ``cols`` fixes the column count when ``a`` has no rows.
    """
    if isinstance(a, np.ndarray) and a.ndim == 2:
        rows, ncols = a.shape
        out = np.empty((rows, ncols), dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = _to_int(x)
        return out
    rows = [list(r) for r in a]
    if not rows:
        if cols is None:
            raise ValueError("cannot infer column count of an empty matrix; pass cols")
        return np.empty((0, cols), dtype=object)
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix rows")
    if cols is not None and cols != ncols:
        raise ValueError(f"expected {cols} columns, got {ncols}")
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = _to_int(x)
    return out


def _to_int(x) -> int:
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("boolean entries are not integers")
    if isinstance(x, (int, np.integer)):
        return int(x)
    raise TypeError(f"non-integer matrix entry {x!r}")


def identity(n: int) -> np.ndarray:
    return as_intmatrix([[int(i == j) for j in range(n)] for i in range(n)], n)


def _pyints(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x)
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two object-int matrices."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return _pyints(np.zeros((a.shape[0], b.shape[1]), dtype=object))
    return a.dot(b)


def det(a: np.ndarray) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in a]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + sum Z/d_i``.

    ``torsion`` is the invariant-factor chain ``d_1 | d_2 | ... | d_k`` with
    every ``d_i >= 2``.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invalid invariant factor {d}")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbelianGroup":
        """Normalise an arbitrary direct sum of cyclic groups.

        An order of 0 contributes a free summand; orders of 1 are dropped.
        """
        orders = [abs(int(o)) for o in orders]
        free_rank += sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(free_rank, ())
        diag = smith_normal_form(_diag_matrix(finite)).diagonal
        return cls(free_rank, tuple(d for d in diag if d > 1))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        """Group order, or ``INFINITE``."""
        if self.free_rank:
            return INFINITE
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def exponent(self):
        if self.free_rank:
            return INFINITE
        return self.torsion[-1] if self.torsion else 1

    def primary_decomposition(self) -> dict[int, list[int]]:
        """Map prime ``p`` to the list of prime-power orders of p-parts."""
        out: dict[int, list[int]] = {}
        for d in self.torsion:
            for p, e in _factorize(d).items():
                out.setdefault(p, []).append(p**e)
        return {p: sorted(v) for p, v in sorted(out.items())}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for p, powers in self.primary_decomposition().items():
            for pk in sorted(set(powers)):
                mult = powers.count(pk)
                parts.append(f"(Z/{pk})^{mult}" if mult > 1 else f"Z/{pk}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d: dict) -> "AbelianGroup":
        return cls(int(d["free_rank"]), tuple(d.get("torsion", ())))


def _factorize(n: int) -> dict[int, int]:
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


def _diag_matrix(entries: Sequence[int]) -> np.ndarray:
    n = len(entries)
    return as_intmatrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class SnfDecomposition:
    """``left @ a @ right == diag(diagonal)`` with unimodular transforms.

    ``diagonal`` has ``min(rows, cols)`` entries; trailing zeros encode the
    rank deficiency.
    """

    diagonal: tuple[int, ...]
    left: np.ndarray
    right: np.ndarray

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def diagonal_matrix(self, shape: tuple[int, int]) -> np.ndarray:
        d = _pyints(np.zeros(shape, dtype=object))
        for i, x in enumerate(self.diagonal):
            d[i, i] = x
        return d


def _find_pivot(a: np.ndarray, t: int):
    """Smallest nonzero |entry| in a[t:, t:]; ties topmost then leftmost."""
    sub = a[t:, t:]
    flat = np.flatnonzero(sub != 0)
    if flat.size == 0:
        return None
    vals = np.abs(sub.ravel()[flat])
    k = int(np.argmin(vals))  # first minimum in row-major order
    i, j = divmod(int(flat[k]), sub.shape[1])
    return t + i, t + j


def smith_normal_form(a, *, transforms: bool = True) -> SnfDecomposition:
    """Smith normal form with deterministic pivoting.

    The pivot is always the entry of smallest absolute value in the active
    submatrix, ties broken topmost-then-leftmost, so the transforms are
    reproducible.  With ``transforms=False`` the returned ``left`` and
    ``right`` are ``None`` (faster on large inputs).
    """
    a = as_intmatrix(a).copy()
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        raise ValueError("smith_normal_form requires a nonempty matrix")
    left = identity(rows) if transforms else None
    right = identity(cols) if transforms else None

    def swap_rows(i, j):
        if i != j:
            a[[i, j]] = a[[j, i]]
            if transforms:
                left[[i, j]] = left[[j, i]]

    def swap_cols(i, j):
        if i != j:
            a[:, [i, j]] = a[:, [j, i]]
            if transforms:
                right[:, [i, j]] = right[:, [j, i]]

    for t in range(min(rows, cols)):
        while True:
            pos = _find_pivot(a, t)
            if pos is None:
                break
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            p = a[t, t]
            # row t and column t stay fixed while clearing, so each sweep is
            # one rank-one update (identical to sequential elimination)
            qs = a[t + 1:, t] // p
            if np.any(qs != 0):
                a[t + 1:, t:] -= np.outer(qs, a[t, t:])
                if transforms:
                    left[t + 1:] -= np.outer(qs, left[t])
            qs = a[t, t + 1:] // p
            if np.any(qs != 0):
                a[t:, t + 1:] -= np.outer(a[t:, t], qs)
                if transforms:
                    right[:, t + 1:] -= np.outer(right[:, t], qs)
            dirty = bool(np.any(a[t + 1:, t] != 0) or np.any(a[t, t + 1:] != 0))
            if dirty:
                continue
            # pivot row/column are clear; enforce divisibility of the rest
            rest = a[t + 1:, t + 1:]
            if rest.size == 0:
                break
            bad_rows = np.flatnonzero(np.any(rest % p != 0, axis=1))
            if bad_rows.size == 0:
                break
            bad = t + 1 + int(bad_rows[0])
            a[t] = a[t] + a[bad]
            if transforms:
                left[t] = left[t] + left[bad]
        if a[t, t] < 0:
            a[t] = -a[t]
            if transforms:
                left[t] = -left[t]
    diagonal = tuple(int(a[i, i]) for i in range(min(rows, cols)))
    return SnfDecomposition(diagonal, left, right)


def cokernel(a, cols: int | None = None) -> AbelianGroup:
    """``Z^cols / rowspace(a)`` in invariant-factor form."""
    a = as_intmatrix(a, cols)
    rows, ncols = a.shape
    if rows == 0 or not np.any(a != 0):
        return AbelianGroup(ncols, ())
    diag = smith_normal_form(a, transforms=False).diagonal
    nonzero = [d for d in diag if d]
    return AbelianGroup(ncols - len(nonzero), tuple(d for d in nonzero if d > 1))


def _check_vector(a, v, cols):
    v = [_to_int(x) for x in v]
    if cols is None:
        cols = len(v)
    a = as_intmatrix(a, cols)
    if len(v) != a.shape[1]:
        raise ValueError(f"vector length {len(v)} does not match {a.shape[1]} generators")
    return a, v


def order_in_cokernel(a, v: Sequence[int], cols: int | None = None):
    """Order of ``v + rowspace(a)`` in the cokernel, or ``INFINITE``.

    Computed as ``|tors G| / |tors G/<v>|`` with ``G/<v>`` the cokernel of
    ``a`` with ``v`` appended as a relation; ``v`` has infinite order exactly
    when appending it lowers the free rank.
    """
    a, v = _check_vector(a, v, cols)
    if not any(v):
        return 1
    g = cokernel(a)
    h = cokernel(np.vstack([a, as_intmatrix([v])]))
    if h.free_rank < g.free_rank:
        return INFINITE
    return g.order_of_torsion // h.order_of_torsion


def order_in_cokernel_snf(a, v: Sequence[int], cols: int | None = None):
    """Same as ``order_in_cokernel``, read off the coordinates ``v @ right``."""
    a, v = _check_vector(a, v, cols)
    if a.shape[0] == 0 or not np.any(a != 0):
        return 1 if not any(v) else INFINITE
    snf = smith_normal_form(a)
    w = matmul(as_intmatrix([v]), snf.right)[0]
    order = 1
    for i, x in enumerate(w):
        x = int(x)
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if x:
                return INFINITE
            continue
        k = d // gcd(d, x)
        order = order * k // gcd(order, k)
    return order


def hermite_normal_form(a, cols: int | None = None) -> np.ndarray:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Returns the nonzero rows only: echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.
    """
    a = as_intmatrix(a, cols)
    m = [list(map(int, r)) for r in a]
    ncols = a.shape[1]
    basis: list[list[int]] = []
    pivots: list[int] = []
    row = 0
    for j in range(ncols):
        active = [r for r in m[row:] if r[j]]
        rest = [r for r in m[row:] if not r[j]]
        if not active:
            continue
        # Euclid on column j across the active rows
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[j]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[j] // piv[j]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[j]:
                    nxt.append(r)
                else:
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[j] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        pivots.append(j)
        m = m[:row] + [piv] + rest
        row += 1
    for k, (r, j) in enumerate(zip(basis, pivots)):
        for k2 in range(k):
            q = basis[k2][j] // r[j]
            if q:
                basis[k2] = [x - q * y for x, y in zip(basis[k2], r)]
    if not basis:
        return np.empty((0, ncols), dtype=object)
    return as_intmatrix(basis)
