"""Command-line interface.

Every subcommand prints a deterministic report (text by default, JSON with
``--json``) and exits with:

* 0 -- the queried property holds, or the requested object was produced;
* 1 -- the property fails; the report carries a reproducible counterexample;
* 2 -- usage error, malformed file, or domain/tier violation.

Graphs are 2-uniform families, so ``hall`` reads the ordinary family file
format with k = 2.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import ConstructionSpec
from .errors import CoverableError, DomainError
from .family import SetFamily, find_perfect_matching, min_blocking_size
from .graphs import Graph, hall_witness
from .graphprop import (
    PropInstance,
    build_fig1,
    build_fig2,
    cover_b,
    edge_bound,
    exhaustive_verify,
    sampled_verify,
    validate,
)
from .search import SearchBudget, extremal_search, maximality_check
from .shifting import is_meaningful, potential, shift, shift_closure

SCHEMA = 1


def _report(command: str, verdict: str, data: dict, witnesses: dict | None = None) -> dict:
    out = {"schema": SCHEMA, "command": command, "verdict": verdict, "data": data}
    if witnesses:
        out["witnesses"] = witnesses
    return out


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    print(f"command: {report['command']}")
    print(f"verdict: {report['verdict']}")
    for key, value in report["data"].items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, separators=(",", ":"))
        print(f"{key}: {value}")
    for key, value in report.get("witnesses", {}).items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, separators=(",", ":"))
        print(f"witness {key}: {value}")


def _write_or_print(obj_text: str, json_obj: dict, path, as_json: bool) -> None:
    if path is not None:
        text = json.dumps(json_obj, indent=2) + "\n" if str(path).endswith(".json") else obj_text
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    elif as_json:
        print(json.dumps(json_obj, indent=2))
    else:
        sys.stdout.write(obj_text)


_FIXED_K = {"eprime3": 3, "aug-e2": 2}


def _cmd_construct(args) -> tuple[dict | None, int]:
    k = args.k if args.k is not None else _FIXED_K.get(args.kind)
    if k is None:
        raise DomainError(f"construct {args.kind} requires -k")
    spec = ConstructionSpec(args.kind, k, args.n, args.b)
    fam = spec.build()
    if args.out is None:
        if args.spec:
            raise DomainError("--spec requires -o (the family goes to the file)")
        _write_or_print(fam.to_text(), fam.to_json_obj(), None, args.json)
        return None, 0
    fam.save(args.out)
    data = {"kind": spec.kind, "k": fam.k, "n": fam.n, "b": spec.b, "size": len(fam), "path": str(args.out)}
    if args.spec:
        data["spec"] = spec.to_json_obj()
    return _report("construct", "holds", data), 0


def _cmd_verify(args) -> tuple[dict, int]:
    fam = SetFamily.load(args.family)
    base = {"path": str(args.family), "n": fam.n, "k": fam.k, "size": len(fam)}
    if args.perfect_matching:
        m = find_perfect_matching(fam)
        if m is None:
            return _report("verify --perfect-matching", "holds", {**base, "perfect_matching": "absent"}), 0
        return (
            _report(
                "verify --perfect-matching",
                "fails",
                {**base, "perfect_matching": "present"},
                {"matching": [list(s) for s in m.sets]},
            ),
            1,
        )
    if args.min_blocking is not None:
        res = min_blocking_size(fam, args.min_blocking)
        data = {**base, "cap": args.min_blocking}
        if res is None:
            data["min_blocking_size"] = None
            return _report("verify --min-blocking", "holds", data), 0
        size, witness = res
        data["min_blocking_size"] = size
        return (
            _report("verify --min-blocking", "holds", data, {"blocking_set": list(witness.vertices)}),
            0,
        )
    witness = maximality_check(fam)
    if witness is None:
        return _report("verify --maximal", "holds", {**base, "maximal": True}), 0
    return (
        _report("verify --maximal", "fails", {**base, "maximal": False}, {"addable_set": list(witness)}),
        1,
    )


def _cmd_shift(args) -> tuple[dict | None, int]:
    fam = SetFamily.load(args.family)
    if args.closure:
        if args.b is None:
            raise DomainError("shift --closure requires -b")
        trace = shift_closure(fam, args.b)
        if args.out is not None:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(json.dumps(trace.to_json_obj(), indent=2) + "\n")
            data = {
                "b": args.b,
                "steps": len(trace.steps),
                "potential_final": potential(trace.final),
                "shifted_region_end": trace.shifted_region[-1],
                "path": str(args.out),
            }
            return _report("shift --closure", "holds", data), 0
        print(json.dumps(trace.to_json_obj(), indent=2))
        return None, 0
    if args.x is None or args.y is None:
        raise DomainError("shift needs either --x and --y, or --closure B")
    meaningful = is_meaningful(fam, args.x, args.y)
    shifted = shift(fam, args.x, args.y)
    if args.out is None:
        _write_or_print(shifted.to_text(), shifted.to_json_obj(), None, args.json)
        return None, 0
    shifted.save(args.out)
    data = {
        "x": args.x,
        "y": args.y,
        "meaningful": meaningful,
        "potential_before": potential(fam),
        "potential_after": potential(shifted),
        "path": str(args.out),
    }
    return _report("shift", "holds", data), 0


def _cmd_prop(args) -> tuple[dict | None, int]:
    if args.prop_command == "build-fig1":
        inst = build_fig1(args.b, args.k)
        _write_or_print(inst.to_text(), inst.to_json_obj(), args.out, args.json)
        if args.out is None:
            return None, 0
        return _report("prop build-fig1", "holds", {"b": args.b, "k": args.k, "path": str(args.out)}), 0
    if args.prop_command == "build-fig2":
        inst = build_fig2(args.b)
        _write_or_print(inst.to_text(), inst.to_json_obj(), args.out, args.json)
        if args.out is None:
            return None, 0
        return _report("prop build-fig2", "holds", {"b": args.b, "path": str(args.out)}), 0
    if args.prop_command == "check":
        with open(args.instance) as fh:
            inst = PropInstance.from_text(fh.read())
        violations = validate(inst)
        base = {"path": str(args.instance), "n": inst.n, "b": inst.b, "k": inst.k}
        if violations:
            return _report("prop check", "fails", {**base, "violations": violations}), 1
        cover = cover_b(inst)
        bound = edge_bound(inst.b, inst.k)
        data = {
            **base,
            "violations": [],
            "coverable": cover is not None,
            "edges": len(inst.edges),
            "bound": bound,
        }
        if cover is not None:
            return _report("prop check", "holds", data, {"cover": [list(u) for u in cover.items]}), 0
        if len(inst.edges) <= bound:
            return _report("prop check", "holds", data), 0
        return _report("prop check", "fails", data, {"instance": inst.to_json_obj()}), 1
    # exhaust
    if args.sample is not None:
        report = sampled_verify(args.b, args.k, args.exterior, samples=args.sample, seed=args.seed)
        command = "prop exhaust --sample"
    else:
        report = exhaustive_verify(args.b, args.k, args.exterior, workers=args.workers)
        command = "prop exhaust"
    verdict = "holds" if not report.violations else "fails"
    data = report.to_json_obj()
    data["equality_classes"] = report.class_counts()
    witnesses = (
        {"violations": [i.to_json_obj() for i in report.violations]} if report.violations else None
    )
    return _report(command, verdict, data, witnesses), 0 if verdict == "holds" else 1


def _cmd_hall(args) -> tuple[dict, int]:
    fam = SetFamily.load(args.graph)
    graph = Graph.from_family(fam)
    targets = tuple(int(t) for t in args.target.split(",") if t.strip())
    base = {"path": str(args.graph), "n": graph.n, "edges": len(graph.edges), "target": list(targets)}
    try:
        witness = hall_witness(graph, targets)
    except CoverableError as exc:
        return (
            _report(
                "hall",
                "fails",
                {**base, "coverable": True},
                {"covering_matching": [list(e) for e in exc.matching]},
            ),
            1,
        )
    closed = graph.neighborhood(witness)
    data = {
        **base,
        "coverable": False,
        "witness_size": len(witness),
        "neighborhood_size": len(closed),
    }
    return _report("hall", "holds", data, {"witness": list(witness)}), 0


def _cmd_search(args) -> tuple[dict, int]:
    budget = SearchBudget(mode=args.mode, node_cap=args.node_cap, seed=args.seed)
    result = extremal_search(args.k, args.n, args.b, budget, workers=args.workers)
    verdict = "holds" if result.exact else "indeterminate"
    data = {
        "k": args.k,
        "n": args.n,
        "b": args.b,
        "mode": args.mode,
        "max_size": result.max_size,
        "exact": result.exact,
    }
    return _report("search --extremal", verdict, data, {"family": result.witness.to_json_obj()}), 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockmatch",
        description="construct, verify and search k-uniform families with no perfect matching",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit one of the named families")
    p.add_argument("kind", choices=["E", "eprime3", "kleitman", "aug-e2"])
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", type=int, default=None)
    p.add_argument("-o", dest="out", default=None, help="output family file (.json for JSON)")
    p.add_argument("--spec", action="store_true", help="echo construction parameters in the report")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="decide properties of a family file")
    p.add_argument("family")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--perfect-matching", action="store_true")
    g.add_argument("--min-blocking", type=int, metavar="CAP")
    g.add_argument("--maximal", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("shift", help="apply one shift or run the constrained closure")
    p.add_argument("family")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--closure", action="store_true")
    p.add_argument("-b", type=int, default=None)
    p.add_argument("-o", dest="out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("prop", help="instance-level edge-bound tools")
    psub = p.add_subparsers(dest="prop_command", required=True)
    q = psub.add_parser("build-fig1")
    q.add_argument("-b", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-o", dest="out", default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_prop)
    q = psub.add_parser("build-fig2")
    q.add_argument("-b", type=int, required=True)
    q.add_argument("-o", dest="out", default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_prop)
    q = psub.add_parser("check")
    q.add_argument("instance")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_prop)
    q = psub.add_parser("exhaust")
    q.add_argument("-b", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("--exterior", type=int, default=0)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--sample", type=int, default=None, help="sample size for randomized mode")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_prop)

    p = sub.add_parser("hall", help="neighborhood witness that a target set is not coverable")
    p.add_argument("graph", help="graph as a k=2 family file")
    p.add_argument("--target", required=True, help="comma-separated target vertices")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_hall)

    p = sub.add_parser("search", help="extremal family search")
    p.add_argument("--extremal", action="store_true", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "randomized"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-cap", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report, code = args.func(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        _emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
