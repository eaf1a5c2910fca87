"""Command-line interface: ``biasmat <command> ...``.

Exit codes: 0 success, 1 a negative mathematical answer (not isomorphic, not
graphic, construction without the circuit equality, failed verification
suite), 2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import acceptance
from .bgformat import GraphFile, read, render, write
from .biased import SignedGraph
from .budget import Budget
from .classify import BudgetExceeded, NotGraphic, find_graphic_witness, witness_families, zaslavsky_form
from .errors import BudgetError, InputError
from .families import (
    ConsecutiveTwistingParts,
    CurlingSpec,
    FatThetaParts,
    FourTwistingParts,
    PinchSpec,
    Witness,
    even_twisting_condition,
    make_4_twisting,
    make_balanced,
    make_consecutive_twisting,
    make_curling,
    make_fat_theta,
    make_pinch,
)
from .graph_core import MultiGraph, sort_ids
from .matroid import Matroid, cycle_matroid, frame_matroid, is_isomorphic, lift_matroid

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

MATROIDS = ("cycle", "frame", "lift")


def _load(path: str) -> GraphFile:
    try:
        return read(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _matroid_of(f: GraphFile, kind: str) -> Matroid:
    if kind == "auto":
        kind = "cycle" if f.kind == "graph" else "frame"
    if kind == "cycle":
        return cycle_matroid(f.graph)
    if kind == "frame":
        return frame_matroid(f.as_biased())
    if f.signed is not None:
        return lift_matroid(f.signed)
    if f.bias in (None, "all"):
        return lift_matroid(SignedGraph.all_positive(f.graph))
    raise InputError("the lift matroid needs a signed graph (bias signed)")


def _edges_json(g: MultiGraph) -> dict:
    return {"vertices": [str(v) for v in g.vertex_ids], "edges": [[str(e), *map(str, g.ends(e))] for e in g.edge_ids]}


def _graph_from_json(obj) -> MultiGraph:
    if not isinstance(obj, dict) or "edges" not in obj:
        raise InputError("a graph is an object with an 'edges' field")
    raw = obj["edges"]
    if isinstance(raw, dict):
        edges = {str(k): tuple(map(str, v)) for k, v in raw.items()}
    else:
        edges = {}
        for item in raw:
            if len(item) != 3:
                raise InputError(f"edge entries are [id, u, v], got {item!r}")
            edges[str(item[0])] = (str(item[1]), str(item[2]))
    for e, ends in edges.items():
        if len(ends) != 2:
            raise InputError(f"edge {e!r} needs two ends")
    verts = obj.get("vertices")
    return MultiGraph(edges, vertices=None if verts is None else [str(v) for v in verts])


def _parts_from_json(spec: dict, arity: int, allow_empty: bool):
    parts, marked = [], []
    for i, item in enumerate(spec.get("parts", [])):
        g = _graph_from_json(item.get("graph", {"edges": []}))
        marks = item.get("marks")
        if marks is None:
            if not (allow_empty and g.num_edges == 0):
                raise InputError(f"part {i + 1} needs 'marks'")
            marked.append(None)
        else:
            if len(marks) != arity:
                raise InputError(f"part {i + 1} needs {arity} marks")
            marked.append(tuple(str(m) for m in marks))
        parts.append(g)
    return tuple(parts), tuple(marked)


def _construct(family: str, spec: dict, k: int | None) -> tuple[Witness, dict]:
    extra: dict = {}
    if family == "balanced":
        return make_balanced(_graph_from_json(spec["h"])), extra
    if family == "pinch":
        return make_pinch(PinchSpec(_graph_from_json(spec["h"]), str(spec["v1"]), str(spec["v2"]))), extra
    if family == "curling":
        att = tuple((str(a["vertex"]), frozenset(map(str, a["edges"]))) for a in spec["attachments"])
        c = CurlingSpec(_graph_from_json(spec["h"]), str(spec["v"]), att)
        return make_curling(c, strict=bool(spec.get("strict", False))), extra
    if family == "fat-theta":
        parts, marked = _parts_from_json(spec, 2, False)
        return make_fat_theta(FatThetaParts(parts, marked)), extra
    if family == "4-twisting":
        parts, marked = _parts_from_json(spec, 3, True)
        return make_4_twisting(FourTwistingParts(parts, marked)), extra
    if family == "consecutive-twisting":
        parts, marked = _parts_from_json(spec, 3, False)
        if k is not None and k != len(parts):
            raise InputError(f"--k {k} does not match the {len(parts)} parts in the spec")
        p = ConsecutiveTwistingParts(parts, marked)
        w = make_consecutive_twisting(p)
        if p.k % 2 == 0:
            extra["even_condition"] = even_twisting_condition(p)
        return w, extra
    raise InputError(f"unknown family {family!r}")


def _omega_file(w: Witness) -> GraphFile:
    if w.signed is not None:
        return GraphFile.of_signed(w.signed)
    if all(w.omega.flags):
        return GraphFile.of_biased(w.omega, "all")
    return GraphFile.of_biased(w.omega)


# -- commands -------------------------------------------------------------------


def cmd_circuits(args, out) -> int:
    f = _load(args.file)
    m = _matroid_of(f, args.matroid)
    circuits = [[str(e) for e in c] for c in m.sorted_circuits()]
    if args.json:
        json.dump({"matroid": args.matroid, "ground": [str(e) for e in m.elements], "circuits": circuits}, out, indent=2)
        out.write("\n")
    else:
        for c in circuits:
            out.write(" ".join(c) + "\n")
    return EXIT_OK


def cmd_construct(args, out) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise InputError(f"{args.spec}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.spec}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(spec, dict):
        raise InputError("the spec file must hold a JSON object")
    try:
        w, extra = _construct(args.family, spec, args.k)
    except KeyError as exc:
        raise InputError(f"spec is missing field {exc.args[0]!r}") from None
    ok = w.verify()
    out.write(f"family={w.family}\n")
    out.write(f"edges={w.h.num_edges}\n")
    for key, val in extra.items():
        out.write(f"{key}={str(val).lower()}\n")
    out.write(f"verified={str(ok).lower()}\n")
    omega_file = _omega_file(w)
    if args.out:
        write(args.out, omega_file)
    else:
        out.write("# omega\n" + render(omega_file))
    if args.out_h:
        write(args.out_h, GraphFile.of_graph(w.h))
    else:
        out.write("# h\n" + render(GraphFile.of_graph(w.h)))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _budget() -> Budget:
    return Budget.from_env()


def cmd_classify(args, out) -> int:
    f = _load(args.file)
    b = f.as_biased()
    budget = _budget()
    forms = zaslavsky_form(b, budget)
    result = find_graphic_witness(b, budget)
    form_tag = ",".join(fm.tag for fm in forms)
    if args.json:
        doc = {
            "forms": [{"form": fm.tag, "edges": [str(e) for e in sort_ids(fm.edges)]} for fm in forms],
            "graphic": isinstance(result, Witness),
        }
        if isinstance(result, Witness):
            doc["witness"] = {"family": result.family, "families": witness_families(result), "h": _edges_json(result.h)}
        else:
            doc["reason"] = result.reason
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        out.write(f"form={form_tag}\n")
        if isinstance(result, Witness):
            out.write(f"witness={result.family}\n")
            if result.family == "direct_sum":
                out.write("components=" + ",".join(witness_families(result)) + "\n")
            if not args.out_h:
                out.write("# h\n" + render(GraphFile.of_graph(result.h)))
        else:
            out.write(f"witness=none\nreason={result.reason}\n")
    if isinstance(result, Witness) and args.out_h:
        write(args.out_h, GraphFile.of_graph(result.h))
    if isinstance(result, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(result, NotGraphic):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_check_iso(args, out) -> int:
    kinds = list(args.matroid or ["auto"])
    if len(kinds) == 1:
        kinds *= 2
    if len(kinds) != 2:
        raise InputError("--matroid takes one or two kinds")
    fa = _load(args.file_a)
    fb = _load(args.file_b) if args.file_b else fa
    ma, mb = _matroid_of(fa, kinds[0]), _matroid_of(fb, kinds[1])
    phi = is_isomorphic(ma, mb, _budget())
    if args.json:
        doc = {"isomorphic": phi is not None}
        if phi is not None:
            doc["bijection"] = {str(k): str(phi[k]) for k in sort_ids(phi)}
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif phi is None:
        out.write("NOT-ISOMORPHIC\n")
    else:
        for k in sort_ids(phi):
            out.write(f"{k} -> {phi[k]}\n")
    return EXIT_OK if phi is not None else EXIT_NEGATIVE


def cmd_verify(args, out) -> int:
    keys = acceptance.resolve_suite(args.suite)
    failed = 0
    for key in keys:
        r = acceptance.run_one(key, seed=args.seed)
        failed += not r.passed
        out.write(r.line() + "\n")
        out.flush()
    out.write(f"{len(keys) - failed}/{len(keys)} criteria passed\n")
    return EXIT_OK if not failed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biasmat", description="Frame matroids of biased graphs and their graphic representations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("circuits", help="list the circuits of a matroid of a .bg file")
    c.add_argument("file")
    c.add_argument("--matroid", choices=MATROIDS + ("auto",), default="auto")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_circuits)

    c = sub.add_parser("construct", help="build (omega, H) from a JSON family spec")
    c.add_argument("family", choices=("balanced", "fat-theta", "curling", "pinch", "4-twisting", "consecutive-twisting"))
    c.add_argument("spec")
    c.add_argument("--out", help="write omega here as .bg")
    c.add_argument("--out-h", dest="out_h", help="write H here as .bg")
    c.add_argument("--k", type=int, help="expected number of parts (consecutive-twisting)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("classify", help="binarity form and graphic witness of a .bg file")
    c.add_argument("file")
    c.add_argument("--out-h", dest="out_h", help="write the witness graph here")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check-iso", help="matroid isomorphism between two .bg files")
    c.add_argument("file_a")
    c.add_argument("file_b", nargs="?")
    c.add_argument("--matroid", nargs="+", choices=MATROIDS + ("auto",),
                   help="matroid kind for both files, or one per file (default auto: cycle for plain graphs, frame otherwise)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check_iso)

    c = sub.add_parser("verify", help="run acceptance criteria ('all', a number 1-11 or a name)")
    c.add_argument("suite", nargs="?", default="all")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetError as exc:
        print(f"biasmat: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"biasmat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
