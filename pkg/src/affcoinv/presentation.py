"""Triangle presentations: parsing, schema expansion and validation.

A presentation over ``P = q^2 + q + 1`` generators is a set ``T`` of
ordered triples ``(i, j, k)``, one relator ``x_i x_j x_k = 1`` each, closed
under cyclic rotation.  Files are JSON documents::

    {"name": "regular-q4", "q": 4, "modulus": 21,
     "patterns": [[0, 7, 14], [0, 14, 7], [0, 3, -6]]}

Each pattern ``(c0, c1, c2)`` expands to the relators
``x_{j+c0} x_{j+c1} x_{j+c2}`` for every ``j`` mod ``modulus``.  An explicit
``"triples"`` list, when present, overrides the patterns.

Besides cyclic closure, two further axioms are enforced because the chamber
walks rely on them: every index is the first coordinate of exactly ``q+1``
triples, and each ordered pair ``(i, j)`` has at most one completing ``k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

Triple = tuple[int, int, int]

BUNDLED = ("regular-q4", "group-1.1-q3")


class PresentationError(ValueError):
    """Malformed presentation document."""


class ValidationError(PresentationError):
    """A triangle-presentation axiom fails; ``witness`` pins the failure."""

    def __init__(self, axiom: str, witness, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} axiom violated (witness {witness})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class RelatorSchema:
    """Modular relator families ``x_{j+c0} x_{j+c1} x_{j+c2}``, ``j`` mod ``modulus``."""

    modulus: int
    patterns: tuple[Triple, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise PresentationError("modulus must be positive")
        object.__setattr__(self, "patterns", tuple(tuple(int(c) for c in p) for p in self.patterns))
        for p in self.patterns:
            if len(p) != 3:
                raise PresentationError(f"pattern {p} is not a triple")

    def relators(self) -> set[Triple]:
        n = self.modulus
        return {((j + c0) % n, (j + c1) % n, (j + c2) % n)
                for c0, c1, c2 in self.patterns for j in range(n)}


@dataclass(frozen=True)
class TrianglePresentation:
    name: str
    q: int
    triples: frozenset

    @property
    def gens(self) -> int:
        return self.q * self.q + self.q + 1

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)

    def cyclic_classes(self) -> list[Triple]:
        """One representative (the least rotation) per relator."""
        reps = set()
        for i, j, k in self.triples:
            reps.add(min((i, j, k), (j, k, i), (k, i, j)))
        return sorted(reps)


def cyclic_closure(triples: Iterable[Triple]) -> set[Triple]:
    out = set()
    for i, j, k in triples:
        out.update({(i, j, k), (j, k, i), (k, i, j)})
    return out


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def validate(triples: set[Triple], gens: int, q: int | None = None) -> int:
    """Check the axioms and return ``q``.

    When ``q`` is not given it is read off the first-coordinate fiber size.
    """
    for t in sorted(triples):
        if any(not 0 <= x < gens for x in t):
            raise ValidationError("index-range", t, f"indices must lie in [0, {gens})")
    for i, j, k in sorted(triples):
        if (j, k, i) not in triples:
            raise ValidationError("cyclic-closure", (i, j, k), f"rotation {(j, k, i)} missing")
    fibers = [0] * gens
    for t in triples:
        fibers[t[0]] += 1
    if q is None:
        sizes = sorted(set(fibers))
        if len(sizes) != 1:
            idx = fibers.index(sizes[0])
            raise ValidationError("fiber-size", idx, "fiber sizes differ between generators")
        q = sizes[0] - 1
        if q < 2:
            raise ValidationError(
                "fiber-size", 0, f"first-coordinate fiber size {sizes[0]} != q+1 for any valid q >= 2")
    if q < 2 or not is_prime_power(q):
        raise ValidationError("order", q, "q must be a prime power >= 2")
    if gens != q * q + q + 1:
        raise ValidationError("generator-count", gens, f"expected q^2+q+1 = {q * q + q + 1} generators")
    for idx, f in enumerate(fibers):
        if f != q + 1:
            raise ValidationError(
                "fiber-size", idx, f"index {idx} is the first coordinate of {f} triples, expected q+1 = {q + 1}")
    completions: dict[tuple[int, int], Triple] = {}
    for t in sorted(triples):
        key = (t[0], t[1])
        if key in completions:
            raise ValidationError("pair-uniqueness", key, f"completed by both {completions[key]} and {t}")
        completions[key] = t
    expected = (q + 1) * (q * q + q + 1)
    if len(triples) != expected:
        raise ValidationError("triple-count", len(triples), f"expected (q+1)(q^2+q+1) = {expected}")
    return q


def expand_schema(schema: RelatorSchema, q: int | None = None, name: str = "") -> TrianglePresentation:
    triples = cyclic_closure(schema.relators())
    q = validate(triples, schema.modulus, q)
    return TrianglePresentation(name, q, frozenset(triples))


def from_triples(triples: Iterable[Sequence[int]], q: int, name: str = "") -> TrianglePresentation:
    gens = q * q + q + 1
    ts = set()
    for t in triples:
        if len(t) != 3:
            raise PresentationError(f"triple {list(t)} does not have three entries")
        ts.add(tuple(int(x) % gens for x in t))
    q = validate(ts, gens, q)
    return TrianglePresentation(name, q, frozenset(ts))


def type_epimorphism_check(p: TrianglePresentation) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Confirm every relator lies in the kernel of ``x_j -> 1 in Z/3``.

    Returns the kernel generators ``x_j x_0^{-1}`` (``j >= 1``) as words of
    ``(generator, exponent)`` pairs.
    """
    for t in p.sorted_triples():
        if len(t) % 3:
            raise AssertionError(f"relator {t} has length {len(t)}")
    return [((j, 1), (0, -1)) for j in range(1, p.gens)]


# --- files -------------------------------------------------------------------

_KEYS = {"name", "q", "modulus", "patterns", "triples"}


def parse_presentation(text: str, source: str = "<string>") -> TrianglePresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise PresentationError(f"{source}: top level must be an object")
    unknown = sorted(set(doc) - _KEYS)
    if unknown:
        raise PresentationError(f"{source}: unknown keys {unknown}")
    for key in ("q", "modulus"):
        if key not in doc:
            raise PresentationError(f"{source}: missing key {key!r}")
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise PresentationError(f"{source}: {key!r} must be an integer")
    q, modulus = doc["q"], doc["modulus"]
    name = str(doc.get("name", Path(source).stem))
    if "triples" in doc:
        rows = _int_triples(doc["triples"], source, "triples")
        if modulus != q * q + q + 1:
            raise ValidationError("generator-count", modulus, f"expected q^2+q+1 = {q * q + q + 1}")
        return from_triples(rows, q, name)
    if "patterns" not in doc:
        raise PresentationError(f"{source}: need 'patterns' or 'triples'")
    patterns = _int_triples(doc["patterns"], source, "patterns")
    if not patterns:
        raise PresentationError(f"{source}: 'patterns' is empty")
    return expand_schema(RelatorSchema(modulus, tuple(patterns)), q, name)


def _int_triples(rows, source: str, key: str) -> list[Triple]:
    if not isinstance(rows, list):
        raise PresentationError(f"{source}: {key!r} must be a list")
    out = []
    for n, r in enumerate(rows):
        if (not isinstance(r, list) or len(r) != 3
                or any(not isinstance(x, int) or isinstance(x, bool) for x in r)):
            raise PresentationError(f"{source}: {key}[{n}] = {r!r} is not a triple of integers")
        out.append(tuple(r))
    return out


def dumps(p: TrianglePresentation) -> str:
    """Serialise with explicit triples; ``parse_presentation`` inverts it."""
    doc = {"name": p.name, "q": p.q, "modulus": p.gens,
           "triples": [list(t) for t in p.sorted_triples()]}
    return json.dumps(doc, indent=1)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("affcoinv") / "data" / "fixtures" / f"{name}.json"))


def resolve_path(path: str | Path) -> Path:
    """Accept a file path, a path missing its ``.json`` suffix, or a bundled name."""
    p = Path(path)
    if p.is_file():
        return p
    if p.with_suffix(".json").is_file():
        return p.with_suffix(".json")
    if p.name in BUNDLED:
        return bundled_path(p.name)
    raise PresentationError(f"{path}: no such presentation file")


def load_presentation(path: str | Path) -> TrianglePresentation:
    p = resolve_path(path)
    return parse_presentation(p.read_text(), str(p))


def load_bundled(name: str) -> TrianglePresentation:
    if name not in BUNDLED:
        raise KeyError(f"no bundled fixture {name!r}; available: {BUNDLED}")
    return load_presentation(bundled_path(name))
