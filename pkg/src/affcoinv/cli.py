"""Command-line interface.

Exit status: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report as rpt
from .coxeter import KINDS, CoxeterDiagram
from .orderbounds import bounds_report
from .presentation import BUNDLED, PresentationError, load_presentation
from .subgrp import CosetLimitError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("presentation",
                   help=f"presentation file (JSON) or bundled fixture name: {', '.join(BUNDLED)}")


def _add_walks(p: argparse.ArgumentParser, flag: str) -> None:
    p.add_argument(flag, nargs="+", default=[], metavar="WORD",
                   help="extra gallery words, comma-separated letters s,a,b (or 0,1,2)")
    p.add_argument("--no-default-galleries", action="store_true",
                   help="use only the given words instead of adding them to the two defaults")
    p.add_argument("--workers", type=int, default=1, help="threads for gallery counting")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affcoinv",
        description="Homology, K-groups and boundary-coinvariant invariants of triangle presentations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report")
    _add_input(p)
    _add_walks(p, "--galleries")
    _add_common(p)

    p = sub.add_parser("homology", help="quotient complex homology and reduced K-groups")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("coinvariants", help="gallery matrices and the presented coinvariant group")
    _add_input(p)
    _add_walks(p, "--galleries")
    _add_common(p)

    p = sub.add_parser("bounds", help="annihilators of [1] and order bounds for a rank-2 diagram")
    p.add_argument("--diagram", required=True, help=f"one of {', '.join(KINDS)} (or A2, B2, G2)")
    p.add_argument("--q", required=True, help="q, or comma-separated q_s,q_a,q_b")
    p.add_argument("--ns", type=int, default=1, help="number of vertex orbits of type s")
    p.add_argument("--equal-hyperspecial", action="store_true",
                   help="assume equal orbit counts for the two special types (B2/A2)")
    _add_common(p)

    p = sub.add_parser("verify", help="compare a fresh report against an expectation file")
    _add_input(p)
    p.add_argument("--expected", help="expectation file (default: bundled one for fixtures)")
    _add_walks(p, "--galleries")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", "-o")
    return parser


def _group(g: dict) -> str:
    return g["text"]


def _text_homology(r: dict) -> list[str]:
    c = r["cells"]
    return [
        f"cells: V={c['vertices']} E={c['edges']} F={c['faces']}",
        f"euler characteristic: {r['euler']} (closed form {r['euler_formula']})",
        f"H0 = {_group(r['H0'])}",
        f"H1 = {_group(r['H1'])}",
        f"H2 = {_group(r['H2'])}",
        f"K0(C*_r) = Z^{r['K0_rank']}",
        f"K1(C*_r) = {_group(r['K1'])}",
    ]


def _text_coinvariants(r: dict, q: int) -> list[str]:
    lines = []
    for g in r["galleries"]:
        ok = "ok" if g["row_sums_ok"] and g["col_sums_ok"] else "FAILED"
        lines.append(f"gallery {g['gallery']}: N={g['N']}, {g['size']}x{g['size']}, row/column sums {ok}")
    lines += [
        f"presented coinvariant group: {_group(r['group'])}",
        f"order of [1]: {r['ord_one']}",
        f"  multiple of q-1 = {q - 1}: {'yes' if r['multiple_of_q_minus_1'] else 'no'}",
        f"  divides refined annihilator {r['refined_annihilator']}: "
        f"{'yes' if r['divides_refined_annihilator'] else 'no'}",
    ]
    return lines


def _text_bounds(b: dict) -> list[str]:
    q = ",".join(f"q_{t}={v}" for t, v in b["q"].items())
    lines = [f"diagram {b['diagram']} ({q}), n_s={b['n_s']}"]
    for w, a in zip(b["galleries"], b["annihilators"]):
        lines.append(f"  gallery {w}: annihilator {a}")
    lines += [
        f"refined annihilator: {b['gcd_annihilator']}",
        f"covolume: {b['covolume']}",
        f"bound q_s*covol: {b['bound_thm2']}",
        ("bound covol-n_s: not available (exceptional diagram)" if b["exceptional"]
         else f"bound covol-n_s: {b['bound_thm3']}"),
    ]
    return lines


def _header(r: dict) -> str:
    return f"{r['fixture']}: q={r['q']}, {r['generators']} generators, {r['triples']} triples"


def _emit(args, doc: dict, lines: list[str]) -> None:
    text = rpt.dumps(doc) if args.format == "json" else "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_q(text: str):
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"--q expects integers, got {text!r}") from None
    return values[0] if len(values) == 1 else values


def _analysis(args, presentation):
    return rpt.analyze(presentation, args.galleries, not args.no_default_galleries, args.workers)


def _run(args) -> int:
    if args.command == "bounds":
        diagram = CoxeterDiagram.make(args.diagram, _parse_q(args.q))
        cert = bounds_report(diagram, args.ns, args.equal_hyperspecial).to_dict()
        _emit(args, cert, _text_bounds(cert))
        return EXIT_OK

    p = load_presentation(args.presentation)
    if args.command == "homology":
        doc = {"schema_version": rpt.SCHEMA_VERSION, "fixture": p.name, "q": p.q,
               "generators": p.gens, "triples": len(p.triples), **rpt.homology_report(p)}
        _emit(args, doc, [_header(doc), *_text_homology(doc)])
        return EXIT_OK
    if args.command == "coinvariants":
        doc = rpt.coinvariant_report(p, args.galleries, not args.no_default_galleries, args.workers)
        _emit(args, doc, [f"{p.name}: q={p.q}", *_text_coinvariants(doc, p.q)])
        return EXIT_OK
    if args.command == "analyze":
        doc = _analysis(args, p)
        lines = [_header(doc), *_text_homology(doc), f"gamma_ab (Reidemeister-Schreier) = {_group(doc['gamma_ab'])}",
                 *_text_coinvariants(doc["coinvariants"], p.q), *_text_bounds(doc["bounds"]),
                 "consistency: " + ", ".join(f"{k}={'yes' if v else 'NO'}"
                                             for k, v in sorted(doc["consistency"].items()))]
        _emit(args, doc, lines)
        return EXIT_OK
    if args.command == "verify":
        expected_path = args.expected or rpt.bundled_expectations(p.name)
        expected = rpt.load_expectations(expected_path)
        checks = rpt.verify(_analysis(args, p), expected)
        failed = [c for c in checks if not c.ok]
        doc = {"expected": str(expected_path), "checked": len(checks), "failed": len(failed),
               "failures": [{"field": c.field, "expected": c.expected, "observed": c.observed}
                            for c in failed]}
        lines = [f"{'FAIL' if not c.ok else 'ok  '} {c.field}"
                 + ("" if c.ok else f": expected {json.dumps(c.expected)}, observed {json.dumps(c.observed)}")
                 for c in checks]
        lines.append(f"{len(checks) - len(failed)}/{len(checks)} fields match {expected_path}")
        _emit(args, doc, lines)
        return EXIT_FAIL if failed else EXIT_OK
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("affcoinv: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _run(args)
    except (PresentationError, rpt.ExpectationError, CosetLimitError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"affcoinv: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
