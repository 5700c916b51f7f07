"""
Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 resource cap
reached, 4 verification failure.  ``--json`` reports are written with sorted
keys so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .builders import PLATONIC, NonSimpleMapError, build_platonic, build_torus44
from .ends import DEFAULT_MAX_VERTICES, ends_profile, parse_source
from .errors import CAP_ENV, ResourceCapExceeded
from .flags import MapFragment, schlafli_type, surface_invariants, validate
from .presentations import (DEFAULT_MAX_COSETS, WordSyntaxError, cayley_graph, coxeter_presentation, parse_word,
                            schwarz_presentation, todd_coxeter)
from .symmetry import aut_group, classify, reflection_generators, rotation_generators
from .tessellation import DEFAULT_MAX_FLAGS, fragment_local_check, universal_ball
from .verify import compare_ends, disjoint_translates, verify_correspondence

OK, USAGE, INVALID, CAP, FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load(path: str):
    try:
        return io.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    if args.kind == "platonic":
        fs = build_platonic(args.name)
    elif args.kind == "torus44":
        fs = build_torus44(args.b, args.c)
    else:
        fs = universal_ball((args.p, args.q, args.radius), max_flags=args.max_flags)
        if fs.is_closed():
            fs = fs.to_flag_system()
    io.save(fs, args.output)
    kind = "fragment" if isinstance(fs, MapFragment) else "flag system"
    print(f"wrote {kind} with {fs.n} flags to {args.output}")
    return OK


# ---------------------------------------------------------------------------
# analyze


def _generator_report(gens) -> dict | None:
    if gens is None:
        return None
    return {
        "base": gens.base,
        "convention": gens.convention or None,
        "orders": gens.orders,
        "relations": gens.relations,
        "permutations": {name: list(g.image) for name, g in gens.generators.items()},
    }


def analysis_report(fs) -> dict:
    """Structured analysis of a flag file's contents."""
    name = fs.meta.get("name") if isinstance(fs.meta, dict) else None
    if isinstance(fs, MapFragment) and not fs.is_closed():
        problems = fragment_local_check(fs)
        return {
            "name": name, "flags": fs.n, "fragment": True, "valid": not problems,
            "boundary": len(fs.boundary), "interior": len(fs.interior), "problems": problems,
        }
    if isinstance(fs, MapFragment):
        fs = fs.to_flag_system()
    report = validate(fs)
    if not report.ok:
        return {"name": name, "flags": fs.n, "fragment": False, "valid": False,
                "problems": [str(p) for p in report.problems]}
    inv = surface_invariants(fs)
    st = schlafli_type(fs)
    group = aut_group(fs)
    cls = classify(fs, group)
    return {
        "name": name,
        "flags": fs.n,
        "fragment": False,
        "valid": True,
        "problems": [],
        "V": inv.V, "E": inv.E, "F": inv.F, "chi": inv.chi,
        "orientable": inv.orientable,
        "genus": inv.genus,
        "schlafli": {"p": st.p, "q": st.q} if st.uniform else None,
        "symmetry": {
            "class": cls.tag,
            "orbits": cls.orbit_count,
            "orbit_sizes": [len(o) for o in cls.orbits],
            "diagnostic": cls.diagnostic or None,
        },
        "aut_order": len(group),
        "reflections": _generator_report(reflection_generators(fs)),
        "rotations": _generator_report(rotation_generators(fs)),
    }


def _format_analysis(rep: dict) -> str:
    lines = [f"name: {rep['name']}", f"flags: {rep['flags']}"]
    if rep["fragment"]:
        lines += [f"fragment: boundary {rep['boundary']}, interior {rep['interior']}",
                  f"local check: {'ok' if rep['valid'] else 'FAILED'}"]
        lines += [f"  {p}" for p in rep["problems"]]
        return "\n".join(lines) + "\n"
    if not rep["valid"]:
        lines.append("validation: FAILED")
        lines += [f"  {p}" for p in rep["problems"]]
        return "\n".join(lines) + "\n"
    st = rep["schlafli"]
    sym = rep["symmetry"]
    lines += [
        f"V E F: {rep['V']} {rep['E']} {rep['F']}",
        f"euler characteristic: {rep['chi']}",
        f"orientable: {'yes' if rep['orientable'] else 'no'}",
        f"genus: {rep['genus']}",
        f"schlafli type: {'{%d,%d}' % (st['p'], st['q']) if st else 'NonUniform'}",
        f"symmetry: {sym['class']} ({sym['orbits']} flag orbits)",
        f"|Aut|: {rep['aut_order']}",
    ]
    if sym["diagnostic"]:
        lines.append(f"diagnostic: {sym['diagnostic']}")
    for key in ("reflections", "rotations"):
        gens = rep[key]
        if gens is None:
            continue
        orders = ", ".join(f"{k}={v}" for k, v in gens["orders"].items())
        rels = ", ".join(f"{k} {'ok' if v else 'FAILS'}" for k, v in gens["relations"].items())
        lines.append(f"{key}: orders {orders}")
        lines.append(f"  relations: {rels}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    fs = _load(args.file)
    rep = analysis_report(fs)
    if args.json:
        _emit_json(rep)
    else:
        sys.stdout.write(_format_analysis(rep))
    return OK if rep["valid"] else INVALID


# ---------------------------------------------------------------------------
# cayley


def cmd_cayley(args) -> int:
    if args.coxeter:
        pres = coxeter_presentation(*args.coxeter)
    else:
        pres = schwarz_presentation(*args.schwarz)
    try:
        if args.extra_relator:
            pres = pres.with_relators(*args.extra_relator)
        subgroup = [parse_word(w, pres.names) for arg in args.subgroup or [] for w in arg.split(",") if w.strip()]
    except WordSyntaxError as exc:
        raise UsageError(str(exc)) from None
    table = todd_coxeter(pres, subgroup, max_cosets=args.max_cosets)
    report = {
        "presentation": str(pres),
        "subgroup": [pres.format_word(w) for w in subgroup],
        "status": table.status,
        "cosets": table.index if table.complete else None,
        "high_water": table.high_water,
        "max_cosets": args.max_cosets,
    }
    if args.json:
        _emit_json(report)
    else:
        print(f"presentation: {report['presentation']}")
        if subgroup:
            print(f"subgroup: <{', '.join(report['subgroup'])}>")
        print(f"status: {table.status}")
        if table.complete:
            print(f"cosets: {table.index}")
        print(f"high water: {table.high_water}")
    if not table.complete:
        print(f"coset limit {args.max_cosets} reached; no conclusion about finiteness", file=sys.stderr)
        return CAP
    graph = cayley_graph(table)
    if args.output:
        _write(args.output, graph.to_dot())
    if args.adjacency:
        _write(args.adjacency, graph.to_json() + "\n")
    return OK


# ---------------------------------------------------------------------------
# ends


def _source(spec: str):
    try:
        return parse_source(spec)
    except OSError as exc:
        raise UsageError(f"cannot read source {spec}: {exc.strerror or exc}") from None
    except ValueError as exc:
        if isinstance(exc, io.FlagFileError):
            raise
        raise UsageError(str(exc)) from None


def cmd_ends(args) -> int:
    src = _source(args.source)
    prof = ends_profile(src, args.max_inner, args.spread, max_vertices=args.max_vertices)
    if args.json:
        _emit_json(prof.as_dict())
    else:
        print(prof.format_table())
    return OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.check in ("correspondence", "theorem1"):
        fs = _load(args.target)
        if not validate(fs).ok:
            print("validation: FAILED", file=sys.stderr)
            return INVALID
        rep = verify_correspondence(fs)
        if args.json:
            _emit_json(rep.as_dict())
        else:
            print(f"{rep.check}: {'pass' if rep.passed else 'FAIL'}")
            if rep.message:
                print(rep.message)
        return OK if rep.passed else FAILED
    if args.check == "compare-ends":
        target = args.target
        if ":" not in target:
            target = f"file:{target}"
        try:
            cmp = compare_ends(target, args.max_inner, args.spread)
        except OSError as exc:
            raise UsageError(f"cannot read {args.target}: {exc.strerror or exc}") from None
        if args.json:
            _emit_json(cmp.as_dict())
        else:
            print(cmp.format_table())
        return OK if cmp.passed else FAILED
    # translates
    fs = _load(args.target)
    if not validate(fs).ok:
        print("validation: FAILED", file=sys.stderr)
        return INVALID
    try:
        seed = [int(x) for x in args.seed.split(",")]
    except ValueError:
        raise UsageError(f"--seed must be comma-separated flag indices, got {args.seed!r}") from None
    if any(not 0 <= x < fs.n for x in seed):
        raise UsageError(f"seed flags must lie in 0..{fs.n - 1}")
    found = disjoint_translates(fs, seed, args.count)
    ok = bool(found)
    report = {
        "seed": seed, "count": args.count, "passed": ok,
        "found": len(found) if ok else found.found,
        "witnesses": [g(seed[0]) for g in found] if ok else [],
    }
    if args.json:
        _emit_json(report)
    else:
        status = "pass" if ok else "FAIL"
        print(f"disjoint translates: {report['found']} of {args.count} requested -> {status}")
        if ok:
            print(f"witness images of flag {seed[0]}: {report['witnesses']}")
    return OK if ok else FAILED


# ---------------------------------------------------------------------------
# export


def flag_graph_dot(fs, name: str = "flags") -> str:
    lines = [f"graph {name} {{"]
    for x in range(fs.n):
        lines.append(f"  {x};")
    for i, ri in enumerate(fs.lists):
        for x, y in enumerate(ri):
            if y > x:
                lines.append(f'  {x} -- {y} [label="r{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    fs = _load(args.file)
    _write(args.output, flag_graph_dot(fs))
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagmaps", description="Flag systems of maps: generation, analysis and verification.",
                     epilog=f"Resource caps default to ${CAP_ENV} when set.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="build a map and write it as a flag file")
    gsub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    g = gsub.add_parser("platonic")
    g.add_argument("name", choices=sorted(PLATONIC))
    g.add_argument("-o", "--output", required=True)
    g = gsub.add_parser("torus44")
    g.add_argument("b", type=int)
    g.add_argument("c", type=int)
    g.add_argument("-o", "--output", required=True)
    g = gsub.add_parser("universal")
    g.add_argument("p", type=int)
    g.add_argument("q", type=int)
    g.add_argument("--radius", type=int, required=True)
    g.add_argument("--max-flags", type=int, default=DEFAULT_MAX_FLAGS)
    g.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=cmd_generate)

    an = sub.add_parser("analyze", help="surface invariants, symmetry class and generators")
    an.add_argument("file")
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=cmd_analyze)

    cay = sub.add_parser("cayley", help="Todd-Coxeter enumeration and Cayley graph export")
    which = cay.add_mutually_exclusive_group(required=True)
    which.add_argument("--coxeter", nargs=2, type=int, metavar=("P", "Q"))
    which.add_argument("--schwarz", nargs=2, type=int, metavar=("P", "Q"))
    cay.add_argument("--extra-relator", action="append", metavar="WORD")
    cay.add_argument("--subgroup", action="append", metavar="WORDS", help="comma-separated subgroup generators")
    cay.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    cay.add_argument("-o", "--output", metavar="DOT")
    cay.add_argument("--adjacency", metavar="FILE", help="write the adjacency structure as JSON")
    cay.add_argument("--json", action="store_true")
    cay.set_defaults(func=cmd_cayley)

    en = sub.add_parser("ends", help="component counts outside growing balls")
    en.add_argument("--source", required=True, help="file:F | universal:p,q | coxeter:p,q | zd:d | tree:k")
    en.add_argument("--max-inner", type=int, required=True)
    en.add_argument("--spread", type=int, required=True)
    en.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    en.add_argument("--json", action="store_true")
    en.set_defaults(func=cmd_ends)

    ver = sub.add_parser("verify", help="correspondence, ends comparison and translate checks")
    # theorem1 is the interface name for the correspondence check
    ver.add_argument("check", choices=["correspondence", "theorem1", "compare-ends", "translates"])
    ver.add_argument("target", help="flag file, or a source for compare-ends")
    ver.add_argument("--count", type=int, default=2)
    ver.add_argument("--seed", default="0", help="comma-separated seed flags for translates")
    ver.add_argument("--max-inner", type=int, default=4)
    ver.add_argument("--spread", type=int, default=6)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)

    ex = sub.add_parser("export", help="flag graph in DOT")
    ex.add_argument("file")
    ex.add_argument("--dot", action="store_true", required=True)
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except io.FlagFileError as exc:
        print(f"invalid flag file: {exc}", file=sys.stderr)
        return INVALID
    except NonSimpleMapError as exc:
        print(f"invalid map: {exc}", file=sys.stderr)
        return INVALID
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
