"""Annihilators of the class ``[1]`` and bounds on its order.

A minimal gallery of type ``i`` from a chamber at a type-``s`` vertex to the
corresponding chamber at another type-``t`` vertex produces the identity
``(n_t N_i - n_s)[1] = 0`` with ``N_i`` the gallery count; when ``t = s``
this reads ``n_s (N_i - 1)[1] = 0``.

Several loop identities at ``s`` combine: ``x = n_s[1]`` is then fixed by
multiplication by ``q^e`` for every exponent vector ``e`` in the lattice
generated by the loop monomials (``q_t`` is invertible modulo the order of
``x``, since that order divides some ``N - 1``).  Each lattice vector
``e = u - v`` split into positive and negative parts therefore gives the
annihilator ``|q^u - q^v|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .coxeter import (CoxeterDiagram, Monomial, STANDARD_CONFIGS, covolume,
                      gallery_count, minimal_gallery_type)
from .exactalg import hermite_normal_form


@dataclass(frozen=True)
class GalleryIdentity:
    """``(n_end * N - n_start)[1] = 0`` for a gallery with count ``N``."""

    start_type: str
    end_type: str
    count: Monomial
    n_start: int = 1
    n_end: int = 1

    @property
    def is_loop(self) -> bool:
        return self.start_type == self.end_type


@dataclass(frozen=True)
class OrderCertificate:
    diagram: CoxeterDiagram
    n_s: int
    identities: tuple[GalleryIdentity, ...]
    annihilators: tuple[int, ...]
    gcd_annihilator: int
    covolume: int
    bound_thm2: int
    bound_thm3: int | None
    exceptional: bool
    equal_hyperspecial: bool = False
    words: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram.kind,
            "q": {t: self.diagram.q(t) for t in self.diagram.types},
            "n_s": self.n_s,
            "equal_hyperspecial": self.equal_hyperspecial,
            "galleries": list(self.words),
            "annihilators": list(self.annihilators),
            "gcd_annihilator": self.gcd_annihilator,
            "covolume": self.covolume,
            "bound_thm2": self.bound_thm2,
            "bound_thm3": self.bound_thm3,
            "exceptional": self.exceptional,
        }


def _check_special(identity: GalleryIdentity, diagram: CoxeterDiagram) -> None:
    for t in (identity.start_type, identity.end_type):
        if t not in diagram.special_types:
            raise ValueError(f"type {t!r} is not special in {diagram.kind}")


def annihilator_from_identity(identity: GalleryIdentity, diagram: CoxeterDiagram) -> int:
    _check_special(identity, diagram)
    n = identity.count.value(diagram)
    if identity.is_loop:
        if identity.n_start != identity.n_end:
            raise ValueError("a loop identity has a single vertex-orbit count")
        a = identity.n_start * (n - 1)
    else:
        a = abs(identity.n_end * n - identity.n_start)
    if a == 0:
        raise ValueError("identity yields the zero annihilator")
    return a


def refined_annihilator(identities: Sequence[GalleryIdentity], diagram: CoxeterDiagram) -> int:
    """``n_s`` times the gcd of ``|q^u - q^v|`` over a basis of the loop lattice.

    The plain annihilators ``N - 1`` are folded into the gcd as well, so the
    result always divides each of them.
    """
    if not identities:
        raise ValueError("need at least one gallery identity")
    loops = []
    for ident in identities:
        _check_special(ident, diagram)
        if not ident.is_loop and ident.n_start != ident.n_end:
            raise ValueError("refinement needs loop identities (or equal vertex-orbit counts)")
        loops.append(ident)
    n_s = loops[0].n_start
    if any(ident.n_start != n_s or ident.n_end != n_s for ident in loops):
        raise ValueError("refinement needs a common n_s")
    g = 0
    for ident in loops:
        g = gcd(g, ident.count.value(diagram) - 1)
    basis = hermite_normal_form([list(ident.count.exponents) for ident in loops], cols=3)
    for row in basis:
        u = Monomial(*(max(int(e), 0) for e in row))
        v = Monomial(*(max(-int(e), 0) for e in row))
        g = gcd(g, u.value(diagram) - v.value(diagram))
    if g == 0:
        raise ValueError("identities yield the zero annihilator")
    return n_s * g


def standard_identities(diagram: CoxeterDiagram, n_s: int = 1,
                        equal_hyperspecial: bool = False) -> list[tuple[str, GalleryIdentity]]:
    """The identities of the standard configurations, labelled by gallery word.

    The two-special-vertex identity relates ``n_s`` to the orbit count of the
    second special type; it is included only when the caller asserts the two
    counts agree.
    """
    out = []
    for config in STANDARD_CONFIGS:
        if config == "CtoCprimeTwoSpecial":
            if not equal_hyperspecial or len(diagram.special_types) < 2:
                continue
        g = minimal_gallery_type(diagram, config)
        end = "s"
        if config == "CtoCprimeTwoSpecial":
            end = next(t for t in diagram.special_types if t != "s")
        out.append((str(g), GalleryIdentity("s", end, gallery_count(diagram, g), n_s, n_s)))
    return out


def bounds_report(diagram: CoxeterDiagram, n_s: int, equal_hyperspecial: bool = False) -> OrderCertificate:
    """Annihilators of ``[1]`` from the standard configurations plus the general bounds.

    ``bound_thm2 = q_s * covol``.  With at least two special types the
    sharper ``covol - n_s`` applies; it is absent for the exceptional ``G2``.
    """
    if n_s < 1:
        raise ValueError("n_s must be positive")
    labelled = standard_identities(diagram, n_s, equal_hyperspecial)
    ids = tuple(ident for _, ident in labelled)
    annihilators = tuple(annihilator_from_identity(ident, diagram) for ident in ids)
    refined = refined_annihilator(ids, diagram)
    covol = covolume(n_s, diagram)
    exceptional = diagram.is_exceptional
    return OrderCertificate(
        diagram=diagram,
        n_s=n_s,
        identities=ids,
        annihilators=annihilators,
        gcd_annihilator=refined,
        covolume=covol,
        bound_thm2=diagram.q("s") * covol,
        bound_thm3=None if exceptional else covol - n_s,
        exceptional=exceptional,
        equal_hyperspecial=equal_hyperspecial,
        words=tuple(w for w, _ in labelled),
    )
