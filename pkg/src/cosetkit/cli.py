"""Command-line front end: ``cosetkit <command> ...``.

Every command builds a report dictionary with a schema tag, the command
line, a digest of each input file, a status and the results.  ``--json``
prints the report; the default is a readable listing of the same data.
Only the ``timing`` field varies between identical runs.

Exit codes: 0 success, 1 input or parse error, 2 a refuted check or a graph
that is not 2-acyclic where that is required, 3 node budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

from . import catalog as cat
from . import hypergraph as hg
from .acyclicity import acyclicity_level, find_coset_cycle, girth, is_2_acyclic
from .cosets import Coset, gen_set, partition
from .covering import check_compatible, covering_map, verify_covering
from .duality import DualHypergraph, check_two_distances, compare_levels, convex_closure_cayley
from .errors import (
    BudgetExceeded,
    ConstructionFailed,
    CosetKitError,
    GuardTooWeak,
    NotTwoAcyclic,
)
from .group import CayleyGraph, build_group, load_spec
from .paths import find_min_path, parse_constraint
from .verify import SUITES, catalog_instances, overall_status, run_suite

SCHEMA = "cosetkit.report/1"
EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _clean(x):
    """JSON-safe copy: infinities become "inf", tuples become lists."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _digest(path: str) -> dict:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return {"file": path, "sha256": hashlib.sha256(data).hexdigest()}


def _load_graph(path: str, **kwargs) -> CayleyGraph:
    try:
        spec = load_spec(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return CayleyGraph(build_group(spec, **kwargs))


def _vertex(g: CayleyGraph, word: str) -> int:
    return g.vertex(word)


def _word(g: CayleyGraph, v: int) -> str:
    return g.vertex_label(v) or "1"


def _mask(g: CayleyGraph, text: str | None) -> int | None:
    if text is None:
        return None
    labels = [t for t in text.replace(" ", ",").split(",") if t]
    return g.gens.mask(labels)


def _cycle_json(g: CayleyGraph, cycle) -> dict | None:
    if cycle is None:
        return None
    return {"length": len(cycle), "links": cycle.to_json(g), "text": cycle.describe(g)}


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> tuple[str, dict, list]:
    g = _load_graph(args.file)
    cap = args.cap
    two = is_2_acyclic(g)
    short_cycle = find_coset_cycle(g, 2)
    level = acyclicity_level(g, cap)
    max_len = args.max_cycle_len or cap + 1
    cycle = find_coset_cycle(g, max_len)
    res = {
        "group": g.name,
        "order": g.order,
        "generators": list(g.gens.labels),
        "girth": girth(g),
        "two_acyclic": bool(two),
        "two_cycle": _cycle_json(g, two.cycle),
        "acyclicity_level": level,
        "cap": cap,
        "shortest_cycle": _cycle_json(g, cycle),
        "max_cycle_len": max_len,
    }
    status = "verified"
    if bool(two) != (short_cycle is None):
        status = "refuted"
    if two:
        cmp = compare_levels(g, cap)
        res["dual_level"] = cmp.dual_level
        res["levels_agree"] = cmp.agree
        if not cmp.agree:
            status = "refuted"
    return status, res, [args.file]


def cmd_distance(args) -> tuple[str, dict, list]:
    g = _load_graph(args.file)
    v, u = _vertex(g, args.source), _vertex(g, args.target)
    if v == u:
        raise InputError("--from and --to must name different vertices")
    if not is_2_acyclic(g):
        raise NotTwoAcyclic(witness=is_2_acyclic(g).cycle)
    gamma = _mask(g, args.gamma)
    gen = gen_set(g, (v, u))
    kind = args.constraint or ("non-t" if gamma is not None else "nontrivial")
    c = parse_constraint(kind, gamma)
    p = find_min_path(g, v, u, c, max_len=args.max_len)
    res = {
        "from": _word(g, v),
        "to": _word(g, u),
        "gen": g.gens.names(gen),
        "constraint": kind,
        "distance": math.inf if p is None else p.length,
        "path": None if p is None else p.to_json(g),
    }
    status = "verified"
    if c.gamma is not None or kind == "nontrivial":
        check_gamma = gen if c.gamma is None else c.gamma
        rep = check_two_distances(g, v, u, check_gamma)
        res["gamma"] = g.gens.names(check_gamma)
        res["gamma_in_gen"] = rep.canonical
        res["dual_distance"] = rep.dual
        res["crosscheck"] = rep.status
        if rep.status == "refuted":
            status = "refuted"
        elif rep.status == "unverified-guard":
            status = "unverified-guard"
    return status, res, [args.file]


def cmd_dual(args) -> tuple[str, dict, list]:
    g = _load_graph(args.file)
    dual = DualHypergraph.of(g)
    h = dual.hyper
    res = {
        "group": g.name,
        "vertices": len(dual),
        "hyperedges": len(h.edges),
        "hyperedge_size": len(h.edges[0]) if h.edges else 0,
        "colors": {g.gens.fmt(m): n for m, n in sorted(dual.color_counts.items())},
    }
    status = "verified"
    if args.check_acyclic is not None:
        n = args.check_acyclic
        verdict = hg.is_n_acyclic(h, n)
        res["n"] = n
        res["dual_n_acyclic"] = verdict.ok
        res["dual_witness"] = _dual_witness(g, verdict.witness)
        res["coset_n_acyclic"] = find_coset_cycle(g, n) is None
        if is_2_acyclic(g) and res["coset_n_acyclic"] != verdict.ok:
            status = "refuted"
    if args.emit_hypergraph:
        Path(args.emit_hypergraph).write_text(json.dumps(dual.to_json(), indent=2) + "\n")
        res["written"] = args.emit_hypergraph
    return status, res, [args.file]


def _dual_witness(g: CayleyGraph, witness) -> dict | None:
    """("clique" | "cycle", cosets) with cosets printed as [word]_{labels}."""
    if witness is None:
        return None
    kind, items = witness
    if isinstance(items, (set, frozenset)):
        items = sorted(items, key=lambda c: (c.mask, c.rep))
    return {"kind": kind, "cosets": [c.fmt(g) if isinstance(c, Coset) else str(c) for c in items]}


def _parse_coset(g: CayleyGraph, text: str) -> Coset:
    word, sep, labels = text.partition(":")
    if not sep:
        raise InputError(f"coset {text!r} must look like WORD:LABELS, e.g. ab:a,b")
    mask = _mask(g, labels) or 0
    v = _vertex(g, "" if word == "1" else word)
    return Coset(mask, partition(g, mask).label[v])


def cmd_closure(args) -> tuple[str, dict, list]:
    g = _load_graph(args.file)
    cosets = [_parse_coset(g, c) for c in args.coset]
    if not cosets:
        raise InputError("give at least one --coset")
    rep = convex_closure_cayley(g, cosets, args.m)
    res = {"P": sorted(c.fmt(g) for c in cosets), **rep.to_json(g)}
    return ("verified" if rep.contained else "refuted"), res, [args.file]


def _label_map(text: str | None) -> dict | None:
    if not text:
        return None
    out = {}
    for part in text.split(","):
        a, sep, b = part.partition("=")
        if not sep:
            raise InputError(f"label map entry {part!r} must look like src=dst")
        out[a.strip()] = b.strip()
    return out


def cmd_cover(args) -> tuple[str, dict, list]:
    g = _load_graph(args.source)
    h = _load_graph(args.target, distinct_generators=False)
    lm = _label_map(args.label_map)
    verdict = check_compatible(g, h, lm)
    res: dict = {"source": g.name, "target": h.name, "compatible": verdict.ok, "witness": verdict.witness}
    status = "verified" if verdict.ok else "refuted"
    if verdict.ok:
        m = covering_map(g, h, lm)
        res["map"] = m.to_json()
        if args.verify:
            cv = verify_covering(m)
            res["covering"] = cv.ok
            res["covering_witness"] = None if cv.ok else {"vertex": _word(g, cv.vertex), "reason": cv.reason}
            if not cv.ok:
                status = "refuted"
    return status, res, [args.source, args.target]


def cmd_catalog(args) -> tuple[str, dict, list]:
    if args.action == "list":
        rows = []
        for e in cat.CATALOG.values():
            rows.append({
                "name": e.name,
                "family": e.family,
                "params": e.params,
                "order": e.order,
                "girth": e.girth,
                "two_acyclic": e.two_acyclic,
                "level": e.level,
                "source": e.source,
            })
        return "verified", {"families": list(cat.FAMILIES), "entries": rows}, []
    if not args.name:
        raise InputError("catalog emit needs a name")
    if args.name in cat.CATALOG:
        spec = cat.CATALOG[args.name].spec()
    else:
        spec = cat.make(args.name, cat.parse_params(args.name, args.params))
    data = spec.to_dict()
    res = {"name": spec.name, "spec": data}
    if args.output:
        Path(args.output).write_text(json.dumps(data, indent=2) + "\n")
        res = {"name": spec.name, "written": args.output}
    return "verified", res, []


def cmd_verify(args) -> tuple[str, dict, list]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; known: all, {', '.join(SUITES)}")
    if args.file:
        instances = [(Path(args.file).stem, _load_graph(args.file))]
        inputs = [args.file]
    else:
        instances = catalog_instances(args.max_order, args.max_gens)
        inputs = []
    results = [run_suite(s, g, name) for s in names for name, g in instances]
    res = {
        "suites": names,
        "instances": [name for name, _ in instances],
        "results": [r.to_json() for r in results],
    }
    return overall_status(results), res, inputs


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; runs single-threaded")

    p = _Parser(prog="cosetkit", description="Coset acyclicity of Cayley graphs and their dual hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="girth, 2-acyclicity, acyclicity level, dual level")
    a.add_argument("file")
    a.add_argument("--cap", type=int, default=6)
    a.add_argument("--max-cycle-len", type=int, default=None, help="search bound for the reported coset cycle")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("distance", parents=[common], help="coset path distance between two vertices")
    d.add_argument("file")
    d.add_argument("--from", dest="source", required=True, help="word for the start vertex ('' is the identity)")
    d.add_argument("--to", dest="target", required=True)
    d.add_argument("--gamma", default=None, help="comma separated labels; selects the non-t distance")
    d.add_argument("--constraint", default=None, help="any, nontrivial, inner or non-t")
    d.add_argument("--max-len", type=int, default=None)
    d.set_defaults(func=cmd_distance)

    u = sub.add_parser("dual", parents=[common], help="dual hypergraph summary and acyclicity")
    u.add_argument("file")
    u.add_argument("--check-acyclic", type=int, default=None, metavar="N")
    u.add_argument("--emit-hypergraph", default=None, metavar="OUT")
    u.set_defaults(func=cmd_dual)

    c = sub.add_parser("closure", parents=[common], help="convex closure of a set of cosets")
    c.add_argument("file")
    c.add_argument("--coset", action="append", default=[], help="WORD:LABELS, repeatable")
    c.add_argument("--m", type=int, default=3)
    c.set_defaults(func=cmd_closure)

    v = sub.add_parser("cover", parents=[common], help="compatibility and covering check")
    v.add_argument("source")
    v.add_argument("target")
    v.add_argument("--verify", action="store_true", help="also check the local isomorphism property")
    v.add_argument("--label-map", default=None, help="src=dst pairs, comma separated")
    v.set_defaults(func=cmd_cover)

    k = sub.add_parser("catalog", parents=[common], help="built-in groups")
    k.add_argument("action", choices=["list", "emit"])
    k.add_argument("name", nargs="?")
    k.add_argument("params", nargs="*")
    k.add_argument("-o", "--output", default=None)
    k.set_defaults(func=cmd_catalog)

    f = sub.add_parser("verify", parents=[common], help="run property suites")
    f.add_argument("file", nargs="?", help="group spec; the catalog when omitted")
    f.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    f.add_argument("--max-order", type=int, default=48)
    f.add_argument("--max-gens", type=int, default=4)
    f.set_defaults(func=cmd_verify)
    return p


def _render(x, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k, val in x.items():
            if isinstance(val, dict) or (isinstance(val, list) and val and isinstance(val[0], dict)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(val, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(val)}")
    elif isinstance(x, list):
        for item in x:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(x))
    return lines


def _inline(x) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(x)


def _exit_for(status: str) -> int:
    return {"refuted": EXIT_REFUTED, "budget-exceeded": EXIT_BUDGET}.get(status, EXIT_OK)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    report: dict = {"schema": SCHEMA, "command": args.command, "argv": argv}
    code = EXIT_OK
    try:
        status, results, inputs = args.func(args)
        report["inputs"] = [_digest(p) for p in inputs]
        report["status"] = status
        report["results"] = results
        code = _exit_for(status)
    except NotTwoAcyclic as exc:
        report["status"] = "refuted"
        report["error"] = {"type": "NotTwoAcyclic", "message": str(exc)}
        if exc.witness is not None and hasattr(exc.witness, "to_json"):
            report["error"]["witness"] = exc.witness.to_json(_witness_graph(args))
        code = EXIT_REFUTED
    except (ConstructionFailed, GuardTooWeak) as exc:
        report["status"] = "refuted" if isinstance(exc, ConstructionFailed) else "unverified-guard"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_REFUTED if isinstance(exc, ConstructionFailed) else EXIT_OK
    except BudgetExceeded as exc:
        report["status"] = "budget-exceeded"
        report["error"] = {"type": "BudgetExceeded", "message": str(exc)}
        code = EXIT_BUDGET
    except (InputError, CosetKitError, OSError, KeyError) as exc:
        report["status"] = "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc).strip("'\"")}
        code = EXIT_INPUT
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report = _clean(report)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        shown = {k: val for k, val in report.items() if k not in ("schema", "argv", "timing") and val != []}
        print("\n".join(_render(shown)))
    if code == EXIT_INPUT and not args.json:
        print(f"cosetkit: {report['error']['message']}", file=sys.stderr)
    return code


def _witness_graph(args) -> CayleyGraph:
    return _load_graph(args.file)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


__all__ = ["build_parser", "main"]
