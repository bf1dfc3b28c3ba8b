"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 computation error,
3 theorem violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bruhat import bruhat_graph, graph_to_json, to_dot
from .coxeter import build_system, parse_word, reflections
from .errors import (
    BruhatSmoothError, MalformedCartan, PreconditionViolated, TheoremViolation,
    UnknownType, WordParseError,
)
from .smoothness import certificate_to_dict, cross_validate, find_broken_rhombi, rationally_smooth_cp
from .subgroups import (
    compare_bruhat_graphs, dihedral_type, is_coxeter_system, parse_reflection,
    reflection_closure, subgroup_dot,
)
from .verifier import verify_theorem

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VIOLATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_info(args) -> str:
    W = build_system(args.system, cap=args.cap)
    w0 = W.longest()
    doc = {
        "schema": 1,
        "system": W.label,
        "rank": W.rank,
        "order": W.order,
        "reflections": W.nroots,
        "simply_laced": W.simply_laced,
        "longest": w0.label,
        "longest_length": w0.length,
        "exponents": list(W.exponents),
        "cartan": [list(r) for r in W.cartan],
        "coxeter_matrix": [list(r) for r in W.coxeter_matrix],
    }
    if args.format == "json":
        return _dump(doc)
    lines = [
        f"system        {W.label}",
        f"rank          {W.rank}",
        f"|W|           {W.order}",
        f"|T|           {W.nroots}",
        f"simply laced  {'yes' if W.simply_laced else 'no'}",
        f"w0            {w0.label} (length {w0.length})",
        "coxeter matrix",
    ]
    lines += ["  " + " ".join(f"{m:>2}" for m in row) for row in W.coxeter_matrix]
    return "\n".join(lines) + "\n"


def _element(args):
    W = build_system(args.system, cap=args.cap)
    return W, W.element(parse_word(args.word, W.rank))


def cmd_graph(args) -> str:
    _, w = _element(args)
    g = bruhat_graph(w)
    if args.format == "json":
        return graph_to_json(g)
    if args.format == "text":
        table = w.system.table
        lines = [f"B({w.label}) in {w.system.label}: {len(g)} vertices, {g.edge_count} edges"]
        for v, d in zip(g.interval.indices, g.degrees):
            lines.append(f"  {table.label_of(int(v)):<{max(6, w.length + 1)}} degree {int(d)}")
        return "\n".join(lines) + "\n"
    return to_dot(g)


def cmd_smooth(args) -> str:
    _, w = _element(args)
    cp = rationally_smooth_cp(w)
    rhombi = find_broken_rhombi(w, "all" if args.all_rhombi else "first")
    if bool(rhombi) == cp.rationally_smooth:
        raise BruhatSmoothError(
            f"regularity and broken-rhombus criteria disagree on {w.label}; please report"
        )
    doc = certificate_to_dict(cp, rhombi)
    if args.format == "json":
        return _dump(doc)
    if cp.smooth is None:
        verdict = "rationally smooth (smoothness undecided)" if cp.rationally_smooth else "not rationally smooth"
    else:
        verdict = "smooth" if cp.smooth else "not smooth"
    lines = [f"{w.system.label} {w.label}: {verdict}"]
    if "defect" in doc:
        lines.append(f"  degree defect at {doc['defect']['vertex']}: {doc['defect']['degree']} > {w.length}")
    for r in rhombi:
        lab = r.labels()
        lines.append(f"  broken rhombus ({lab['x']}, {lab['u']}, {lab['v']}), missing y: {', '.join(lab['witnesses'])}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> str:
    report = verify_theorem(
        build_system(args.system, cap=args.cap), jobs=args.jobs, long_run=args.long_run
    )
    if args.format == "json":
        return report.to_json(timing=not args.no_timing)
    kind = "smooth" if report.simply_laced else "rationally smooth"
    lines = [
        f"{report.system}: {report.involution_count} involutions, "
        f"{len(report.smooth)} {kind}, {len(report.singular)} singular",
        f"  parabolic longest elements: {len(report.parabolic_longest)}",
        f"  degree defects: {report.degree_defects}, rhombus witnesses validated: {report.witnesses_validated}",
        f"  equivalence holds: {'yes' if report.equivalence_holds else 'no'}",
    ]
    if report.mismatches:
        lines.append("  mismatches: " + ", ".join(report.mismatches))
    return "\n".join(lines) + "\n"


def cmd_subgroup(args) -> str:
    W = build_system(args.system, cap=args.cap)
    gens = [parse_reflection(W.element(parse_word(text, W.rank))) for text in args.reflections]
    H = reflection_closure(gens)
    if args.format == "dot":
        return subgroup_dot(H)
    X = sorted(H.canonical_gens, key=lambda t: t.element.index)
    doc = {
        "schema": 1,
        "system": W.label,
        "order": len(H),
        "reflections": sorted((t.label for t in H.reflections_in), key=lambda s: (len(s), s)),
        "canonical_generators": [t.label for t in X],
        "coxeter_system": is_coxeter_system(H),
        "graphs_match": compare_bruhat_graphs(H),
    }
    if len(X) == 2:
        doc["m"] = dihedral_type(H)
    if args.format == "json":
        return _dump(doc)
    lines = [
        f"subgroup of {W.label} of order {doc['order']}",
        f"  X = {{{', '.join(doc['canonical_generators'])}}}",
    ]
    if "m" in doc:
        lines.append(f"  m = {doc['m']}")
    lines.append(f"  (W', X) Coxeter system: {'yes' if doc['coxeter_system'] else 'no'}")
    lines.append(f"  induced graph equals internal graph: {'yes' if doc['graphs_match'] else 'no'}")
    return "\n".join(lines) + "\n"


def cmd_crossval(args) -> str:
    report = cross_validate(build_system(args.system, cap=args.cap), jobs=args.jobs)
    if args.format == "json":
        return _dump(report.to_dict())
    return (
        f"{report.system}: {report.checked} elements, {report.rationally_smooth} rationally smooth, "
        f"{len(report.disagreements)} disagreements\n"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=_env_int("BRUHATSMOOTH_CAP", None),
                        help="maximum group order to enumerate (default 1000000)")
    common.add_argument("--jobs", type=int, default=_env_int("BRUHATSMOOTH_JOBS", 1),
                        help="worker processes for verify and crossval")

    parser = _Parser(prog="bruhatsmooth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, formats, default, help_, word=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("system", help="type label such as D4, or a Cartan matrix file")
        if word:
            p.add_argument("word", help='generator indices, e.g. "2 1 3 4 2"; "" or e for the identity')
        p.add_argument("--format", choices=formats, default=default)
        p.set_defaults(func=fn)
        return p

    add("info", cmd_info, ["text", "json"], "text", "summary of a Coxeter system")
    add("graph", cmd_graph, ["dot", "json", "text"], "dot", "Bruhat graph of [e, w]", word=True)
    p = add("smooth", cmd_smooth, ["json", "text"], "json", "smoothness certificate for w", word=True)
    p.add_argument("--all-rhombi", action="store_true", help="list every broken rhombus")
    p = add("verify", cmd_verify, ["json", "text"], "json", "sweep all involutions")
    p.add_argument("--long-run", action="store_true", help="allow groups above 10000 elements")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    p = add("subgroup", cmd_subgroup, ["text", "json", "dot"], "text", "inspect a reflection subgroup")
    p.add_argument("reflections", nargs="+", help='reflections as words, e.g. "1" "1 2 1"')
    add("crossval", cmd_crossval, ["json", "text"], "json", "compare both smoothness criteria on all of W")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (UnknownType, MalformedCartan, WordParseError, PreconditionViolated) as exc:
        print(f"bruhatsmooth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"bruhatsmooth: THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except BruhatSmoothError as exc:
        print(f"bruhatsmooth: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
