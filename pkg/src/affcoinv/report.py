"""The invariant report: one JSON-serialisable bundle per presentation.

Reports are deterministic: no timings, hostnames or dictionary-order
effects; ``dumps`` sorts keys.  Expectation files are JSON objects carrying
``schema_version`` and any subset of report fields; keys starting with
``_`` are commentary and ignored by ``verify``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .cellcomplex import build_complex, euler_characteristic_formula, homology, reduced_k_groups
from .chambers import ChamberSystem, coinvariant_model, default_galleries, parse_gallery
from .coxeter import CoxeterDiagram
from .exactalg import INFINITE, AbelianGroup
from .orderbounds import bounds_report
from .presentation import TrianglePresentation
from .subgrp import abelianization, type_preserving_subgroup

SCHEMA_VERSION = 1


class ExpectationError(ValueError):
    """Expectation file unusable: bad JSON, wrong version or unknown fields."""


def group_entry(g: AbelianGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion), "text": str(g)}


def homology_report(p: TrianglePresentation) -> dict:
    c = build_complex(p)
    h = homology(c)
    k0, k1 = reduced_k_groups(h)
    return {
        "cells": {"vertices": c.vertices, "edges": c.edges, "faces": c.faces},
        "euler": h.euler,
        "euler_formula": euler_characteristic_formula(p.q, 1),
        "H0": group_entry(h.H0),
        "H1": group_entry(h.H1),
        "H2": group_entry(h.H2),
        "K0_rank": k0.free_rank,
        "K1": group_entry(k1),
    }


def coinvariant_report(p: TrianglePresentation, extra: Iterable = (), use_defaults: bool = True,
                       workers: int = 1, system: ChamberSystem | None = None) -> dict:
    system = system or ChamberSystem(p)
    base = default_galleries() if use_defaults else []
    words = [*base, *(parse_gallery(w) for w in extra)]
    model = coinvariant_model(system, words, workers=workers)
    cert = bounds_report(CoxeterDiagram.make("A2affine", p.q), 1)
    ord_one = model.ord_one
    finite = ord_one is not INFINITE
    return {
        "galleries": [m.to_dict() for m in model.matrices],
        "group": group_entry(model.group),
        "ord_one": "infinite" if not finite else int(ord_one),
        "relation_source": list(model.relation_source),
        "refined_annihilator": cert.gcd_annihilator,
        "multiple_of_q_minus_1": finite and int(ord_one) % (p.q - 1) == 0,
        "divides_refined_annihilator": finite and cert.gcd_annihilator % int(ord_one) == 0,
    }


def analyze(p: TrianglePresentation, extra: Iterable = (), use_defaults: bool = True,
            workers: int = 1) -> dict:
    """Run the whole pipeline and return the report dictionary."""
    hom = homology_report(p)
    _, table, sub = type_preserving_subgroup(p)
    gamma_ab = abelianization(sub)
    coinv = coinvariant_report(p, extra, use_defaults, workers)
    cert = bounds_report(CoxeterDiagram.make("A2affine", p.q), 1)
    ord_one = coinv["ord_one"]
    report = {
        "schema_version": SCHEMA_VERSION,
        "fixture": p.name,
        "q": p.q,
        "generators": p.gens,
        "triples": len(p.triples),
        **hom,
        "gamma_ab": group_entry(gamma_ab),
        "subgroup_index": table.index,
        "coinvariants": coinv,
        "bounds": cert.to_dict(),
    }
    report["consistency"] = {
        "K0_rank_equals_euler": hom["K0_rank"] == hom["euler"],
        "euler_matches_formula": hom["euler"] == hom["euler_formula"],
        "K1_equals_H1": hom["K1"] == hom["H1"],
        "H1_equals_gamma_ab": hom["H1"] == report["gamma_ab"],
        "gallery_sums_ok": all(g["row_sums_ok"] and g["col_sums_ok"] for g in coinv["galleries"]),
        "ord_one_divides_annihilator": coinv["divides_refined_annihilator"],
        "ord_one_below_bound_thm2": ord_one != "infinite" and ord_one < cert.bound_thm2,
    }
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# --- expectations ------------------------------------------------------------

def load_expectations(path: str | Path) -> dict:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as e:
        raise ExpectationError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ExpectationError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ExpectationError(f"{path}: top level must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ExpectationError(f"{path}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    return doc


@dataclass(frozen=True)
class Check:
    field: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def _compare(expected, observed, prefix: str, out: list[Check]) -> None:
    for key in sorted(expected):
        if key.startswith("_"):
            continue
        name = f"{prefix}.{key}" if prefix else key
        if not isinstance(observed, dict) or key not in observed:
            raise ExpectationError(f"expectation field {name!r} is not part of the report schema")
        exp, obs = expected[key], observed[key]
        if isinstance(exp, dict) and isinstance(obs, dict):
            _compare(exp, obs, name, out)
        else:
            out.append(Check(name, exp, obs))


def verify(report: dict, expected: dict) -> list[Check]:
    """Field-by-field comparison of ``report`` against an expectation subset."""
    if expected.get("schema_version") != report.get("schema_version"):
        raise ExpectationError("schema_version of report and expectations differ")
    checks: list[Check] = []
    _compare(expected, report, "", checks)
    return checks


def bundled_expectations(name: str) -> Path:
    return Path(str(resources.files("affcoinv") / "data" / "expected" / f"{name}.json"))
