"""Command-line front end.

Four subcommands over a graph file: ``analyze`` (structure of the center),
``center`` (explicit basis of one graded piece), ``verify`` (brute-force
cross-check of the constructed center), ``idempotents`` (the Boolean algebra
of central idempotents).  Output is plain text, or a stable key/value tree
with ``--json``.  Exit codes: 0 success, 1 failed verification, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .graph import Graph, GraphParseError, parse_graph
from .hereditary import finitary_boolean_subalgebra, center_structure, perp
from .algebra import LeavittAlgebra, PrimeField, Rationals
from .center import (
    brute_force_center,
    center_basis,
    center_dimension_predicted,
    idempotent,
    oracle_bound,
    spans_equal,
)

__all__ = ["main", "build_parser"]


def _field_arg(text: str):
    if text == "rat":
        return Rationals()
    if text.startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    raise argparse.ArgumentTypeError(f"unknown field {text!r}: use rat or fp:<prime>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Compute the center of the Leavitt path algebra of a finite directed graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="graph file (vertex/edge lines)")
        p.add_argument("--json", action="store_true", help="emit a machine-readable report")
        p.add_argument(
            "--field",
            type=_field_arg,
            default=Rationals(),
            metavar="rat|fp:<prime>",
            help="scalar field (default rat)",
        )

    p = sub.add_parser("analyze", help="decompose the center of the algebra")
    common(p)

    p = sub.add_parser("center", help="basis of one graded piece of the center")
    common(p)
    p.add_argument("--degree", type=int, required=True, help="grading degree")

    p = sub.add_parser("verify", help="cross-check the center against a brute-force solver")
    common(p)
    p.add_argument("--max-degree", type=int, default=3, help="check all |d| up to this (default 3)")
    p.add_argument(
        "--max-len",
        type=int,
        default=None,
        help="monomial size cap for the solver (default: derived bound)",
    )

    p = sub.add_parser("idempotents", help="central idempotents of the Boolean algebra")
    common(p)

    return parser


def _load_graph(path: str) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphParseError(str(exc)) from exc
    g = parse_graph(text)
    if not g.vertices:
        raise GraphParseError("graph has no vertices")
    return g


def _set_str(g: Graph, ws) -> str:
    return "{" + ",".join(sorted(ws, key=g.vertex_index)) + "}"


def _counted(n: int, singular: str, plural: str) -> str:
    return f"{n} {singular if n == 1 else plural}"


def _graph_line(g: Graph) -> str:
    return (
        f"graph: {_counted(len(g.vertices), 'vertex', 'vertices')}, "
        f"{_counted(len(g.edge_ids()), 'edge', 'edges')}"
    )


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))


def _report(command: str, g: Graph, payload: dict) -> dict:
    return {
        "format_version": "1",
        "command": command,
        "graph": {"vertices": len(g.vertices), "edges": len(g.edge_ids())},
        "payload": payload,
    }


def _cmd_analyze(args, g: Graph) -> int:
    rep = center_structure(g)
    k = len(rep.minimal_sets)
    m = len(rep.summands)
    payload = {
        "minimal_sets": [sorted(w, key=g.vertex_index) for w in rep.minimal_sets],
        "classes": [
            {
                "members": list(s.members),
                "support": sorted(s.support, key=g.vertex_index),
                "kind": "laurent" if s.is_laurent else "field",
                "cycle": str(s.cycle) if s.cycle is not None else None,
                "cycle_length": s.cycle_length,
            }
            for s in rep.summands
        ],
        "k": k,
        "m": m,
        "annihilator_size": 2**k,
        "finitary_size": 2**m,
        "isomorphism": rep.isomorphism,
    }

    lines = [_graph_line(g)]
    lines.append("minimal hereditary sets:")
    for i, w in enumerate(rep.minimal_sets, 1):
        lines.append(f"  W{i} = {_set_str(g, w)}")
    lines.append("classes:")
    for i, s in enumerate(rep.summands, 1):
        members = ",".join(f"W{j + 1}" for j in s.members)
        if s.is_laurent:
            kind = f"Laurent via cycle {s.cycle} of length {s.cycle_length}"
        else:
            kind = "field"
        lines.append(f"  I{i} = {{{members}}}: support {_set_str(g, s.support)}, {kind}")
    lines.append(f"annihilator algebra: {2**k} subsets (2^{k})")
    lines.append(f"finitary subalgebra: {2**m} subsets (2^{m})")
    lines.append(f"center: {rep.isomorphism}")
    _emit(args, _report("analyze", g, payload), lines)
    return 0


def _cmd_center(args, g: Graph) -> int:
    algebra = LeavittAlgebra(g, field=args.field)
    basis = center_basis(algebra, args.degree)
    predicted = center_dimension_predicted(g, args.degree)
    payload = {
        "field": args.field.name,
        "degree": args.degree,
        "predicted_dimension": predicted,
        "basis": [
            {"element": str(el), "provenance": why}
            for el, why in zip(basis.elements, basis.provenance)
        ],
    }
    lines = [_graph_line(g)]
    lines.append(f"degree {args.degree} basis (predicted dimension {predicted}):")
    if basis.elements:
        for el, why in zip(basis.elements, basis.provenance):
            lines.append(f"  {el}  ({why})")
    else:
        lines.append("  (none)")
    _emit(args, _report("center", g, payload), lines)
    return 0


def _cmd_verify(args, g: Graph) -> int:
    if args.max_degree < 0:
        print("error: --max-degree must be >= 0", file=sys.stderr)
        return 2
    if args.max_len is not None and args.max_len < 0:
        print("error: --max-len must be >= 0", file=sys.stderr)
        return 2
    algebra = LeavittAlgebra(g, field=args.field)
    rows = []
    lines = [_graph_line(g)]
    all_ok = True
    for d in range(-args.max_degree, args.max_degree + 1):
        bound = args.max_len if args.max_len is not None else oracle_bound(g, d)
        found = brute_force_center(algebra, d, bound)
        basis = center_basis(algebra, d)
        predicted = center_dimension_predicted(g, d)
        ok = len(found) == predicted == len(basis.elements) and spans_equal(
            found, basis.elements
        )
        all_ok = all_ok and ok
        rows.append(
            {
                "degree": d,
                "oracle_dimension": len(found),
                "predicted_dimension": predicted,
                "bound": bound,
                "ok": ok,
            }
        )
        lines.append(
            f"degree {d}: oracle dim {len(found)}, predicted {predicted}, "
            f"bound {bound}: {'OK' if ok else 'FAIL'}"
        )
    lines.append("all degrees OK" if all_ok else "verification FAILED")
    payload = {
        "field": args.field.name,
        "max_degree": args.max_degree,
        "degrees": rows,
        "ok": all_ok,
    }
    _emit(args, _report("verify", g, payload), lines)
    return 0 if all_ok else 1


def _cmd_idempotents(args, g: Graph) -> int:
    algebra = LeavittAlgebra(g, field=args.field)
    family = finitary_boolean_subalgebra(g)
    members = {w: idempotent(algebra, w) for w in family}
    family_set = set(family)
    one = algebra.one()

    # Boolean laws must hold before anything is printed
    for w1 in family:
        for w2 in family:
            meet = w1 & w2
            if meet not in family_set:
                raise RuntimeError(f"family not closed under intersection at {_set_str(g, meet)}")
            if members[w1] * members[w2] != members[meet]:
                raise RuntimeError(
                    f"product law fails for {_set_str(g, w1)} and {_set_str(g, w2)}"
                )
    for w in family:
        comp = perp(g, w)
        if comp not in family_set:
            raise RuntimeError(f"complement {_set_str(g, comp)} escapes the family")
        if members[comp] != one - members[w]:
            raise RuntimeError(f"complement law fails for {_set_str(g, w)}")
    texts = [str(members[w]) for w in family]
    if len(set(texts)) != len(family):
        raise RuntimeError("idempotent map is not injective")

    payload = {
        "field": args.field.name,
        "count": len(family),
        "subsets": [
            {"vertices": sorted(w, key=g.vertex_index), "element": str(members[w])}
            for w in family
        ],
    }
    lines = [_graph_line(g)]
    lines.append(f"finitary annihilator subsets: {len(family)}")
    for w in family:
        lines.append(f"  {_set_str(g, w)} -> {members[w]}")
    _emit(args, _report("idempotents", g, payload), lines)
    return 0


_HANDLERS = {
    "analyze": _cmd_analyze,
    "center": _cmd_center,
    "verify": _cmd_verify,
    "idempotents": _cmd_idempotents,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        g = _load_graph(args.file)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _HANDLERS[args.command](args, g)


if __name__ == "__main__":
    sys.exit(main())
