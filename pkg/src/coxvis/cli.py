"""Command-line front end.

Subcommands map one-to-one onto the library: info, ends, split, dunwoody,
fa, vfree, vs, word, intersect, refine, validate, and report (which also
renders figures).  Exit code 0 means the command ran (including negative
verdicts and inconclusive refinements), 1 is a domain error such as a
non-separating subset or a search budget blowout, and 2 is a usage or
parse error.  `--format lines` emits versioned machine-readable records,
one per line, under a `coxvis/1` header.
"""

import argparse
import os
import sys

from . import decompose, gog, refine, report, system, words
from .finite_type import is_finite

LINES_HEADER = "coxvis/1"


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _load_system(path: str) -> system.CoxeterSystem:
    return system.parse_system(_read(path))


def _braces(sys_, A) -> str:
    return "{" + ",".join(sys_.names_of(A)) + "}"


def _print_lines(records) -> None:
    print(LINES_HEADER)
    for rec in records:
        print(" ".join(str(x) for x in rec))


def _gog_records(sys_, g):
    for v in g.vertices:
        yield ["vertex", v.id, *sys_.names_of(v.label)]
    for e in g.edges:
        yield ["edge", e.id, e.ends[0], e.ends[1], *sys_.names_of(e.label)]


def _emit_gog_by_format(sys_, g, fmt, extra_records=()):
    if fmt == "dot":
        print(gog.export_dot_gog(sys_, g), end="")
    elif fmt == "lines":
        _print_lines([*extra_records, *_gog_records(sys_, g)])
    else:
        print(gog.emit_gog(sys_, g), end="")


def _no_dot(fmt):
    if fmt == "dot":
        raise _UsageError("--format dot is not applicable to this subcommand")


class _UsageError(Exception):
    pass


def cmd_info(args) -> int:
    sys_ = _load_system(args.cox)
    if args.format == "dot":
        print(system.export_dot(sys_), end="")
        return 0
    fv = is_finite(sys_, sys_.generators)
    comps = system.diagram_components(sys_, sys_.generators)
    cliques = system.maximal_cliques(sys_)
    if args.format == "lines":
        recs = [["rank", sys_.rank], ["generators", *sys_.names]]
        if fv.finite:
            factors = "*".join(str(f) for f in fv.factors) or "1"
            recs.append(["finiteness", "finite", fv.order, factors])
        else:
            recs.append(["finiteness", "infinite"])
        for comp in comps:
            recs.append(["component", *sys_.names_of(comp)])
        for c in cliques:
            recs.append(["clique", *sys_.names_of(c)])
        _print_lines(recs)
        return 0
    print(f"generators: {' '.join(sys_.names)}")
    rels = " ".join(
        f"m({sys_.names[i]},{sys_.names[j]})={sys_.order(i, j)}"
        for i, j in sys_.diagram_edges()
    )
    print(f"relations: {rels}" if rels else "relations: none")
    print(f"finiteness: {fv.describe()}")
    print("components: " + " ".join(_braces(sys_, c) for c in comps))
    print("cliques: " + " ".join(_braces(sys_, c) for c in cliques))
    return 0


def cmd_ends(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    verdict = decompose.ends(sys_)
    if args.format == "lines":
        recs = [["verdict", verdict.kind.value]]
        if verdict.kind is decompose.EndsClass.ZERO:
            recs.append(["witness-order", verdict.witness.order])
        elif verdict.kind is decompose.EndsClass.TWO:
            x, y, H = verdict.witness
            recs.append(["witness-pair", sys_.names[x], sys_.names[y]])
            recs.append(["witness-core", *sys_.names_of(H)])
        elif verdict.kind is decompose.EndsClass.INFINITE:
            recs.append(["witness", *sys_.names_of(verdict.witness)])
        _print_lines(recs)
        return 0
    print(verdict.describe(sys_))
    return 0


def cmd_split(args) -> int:
    sys_ = _load_system(args.cox)
    A = sys_.subset(args.over.split())
    g = gog.split_over(sys_, A)
    _emit_gog_by_format(sys_, g, args.format)
    return 0


def cmd_dunwoody(args) -> int:
    sys_ = _load_system(args.cox)
    g = decompose.visual_dunwoody(sys_)
    _emit_gog_by_format(sys_, g, args.format)
    return 0


def cmd_fa(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    subsets = decompose.maximal_fa(sys_)
    if args.format == "lines":
        _print_lines([["subset", *sys_.names_of(A)] for A in subsets])
        return 0
    for A in subsets:
        print(_braces(sys_, A))
    return 0


def cmd_vfree(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    verdict = decompose.is_virtually_free(sys_)
    if args.format == "lines":
        recs = [["answer", "yes" if verdict.answer else "no"]]
        if verdict.answer:
            recs.extend(_gog_records(sys_, verdict.witness))
        else:
            recs.append(["reason", verdict.reason])
        _print_lines(recs)
        return 0
    print(verdict.describe(sys_))
    if verdict.answer:
        print(gog.emit_gog(sys_, verdict.witness), end="")
    return 0


def cmd_vs(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    subsets = decompose.vs_candidates(sys_)
    if args.format == "lines":
        _print_lines([["subset", *sys_.names_of(A)] for A in subsets])
        return 0
    for A in subsets:
        print(_braces(sys_, A))
    return 0


def cmd_word(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    w = words.parse_word(sys_, args.reduce)
    nf = words.normal_form(sys_, w)
    if args.format == "lines":
        _print_lines([["word", words.format_word(sys_, nf)]])
        return 0
    print(words.format_word(sys_, nf))
    return 0


def cmd_intersect(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    P = words.ConjugateSpecial(
        words.parse_word(sys_, args.conj1), sys_.subset(args.gens1.split())
    )
    Q = words.ConjugateSpecial(
        words.parse_word(sys_, args.conj2), sys_.subset(args.gens2.split())
    )
    result = words.intersect_special_conjugates(sys_, P, Q)
    conj = words.format_word(sys_, result.conjugator)
    if args.format == "lines":
        _print_lines([["conjugator", conj], ["core", *sys_.names_of(result.core)]])
        return 0
    print(f"conjugator={conj} core={_braces(sys_, result.core)}")
    return 0


def cmd_refine(args) -> int:
    sys_ = _load_system(args.cox)
    split = refine.parse_split(sys_, _read(args.split))
    outcome = refine.refine_to_visual(
        sys_,
        split,
        radius=args.radius,
        subgroup_depth=args.depth,
        max_cosets=args.max_cosets,
    )
    if outcome.status == "refined":
        if args.format == "dot":
            print(gog.export_dot_gog(sys_, outcome.decomposition), end="")
            return 0
        extra = [["status", "refined"], ["radius", outcome.radius_used]]
        if args.format == "lines":
            _emit_gog_by_format(sys_, outcome.decomposition, "lines", extra)
            return 0
        print(f"refined radius_used={outcome.radius_used}")
        print(gog.emit_gog(sys_, outcome.decomposition), end="")
        return 0
    _no_dot(args.format)
    if args.format == "lines":
        _print_lines([["status", "inconclusive"], ["reason", outcome.reason]])
        return 0
    print(f"inconclusive ({outcome.reason})")
    return 0


def cmd_validate(args) -> int:
    sys_ = _load_system(args.cox)
    _no_dot(args.format)
    g = gog.parse_gog(sys_, _read(args.gog))
    try:
        rep = gog.validate_visual(sys_, g)
    except gog.GogStructureError as exc:
        raise DomainError(f"malformed graph of groups: {exc}") from None
    if args.format == "lines":
        recs = [["status", "valid" if rep.valid else "invalid"]]
        for i, j in rep.uncovered_edges:
            recs.append(["uncovered", sys_.names[i], sys_.names[j]])
        if rep.bad_generators:
            recs.append(["bad", *sys_.names_of(rep.bad_generators)])
        _print_lines(recs)
        return 0
    if rep.valid:
        print("valid")
    else:
        unc = " ".join(
            f"{sys_.names[i]}-{sys_.names[j]}" for i, j in rep.uncovered_edges
        )
        bad = ",".join(sys_.names_of(rep.bad_generators))
        print(f"invalid uncovered_edges={{{unc}}} bad_generators={{{bad}}}")
    return 0


def cmd_report(args) -> int:
    sys_ = _load_system(args.cox)
    os.makedirs(args.out, exist_ok=True)
    diagram_path = os.path.join(args.out, "diagram.png")
    dunwoody_path = os.path.join(args.out, "dunwoody.png")
    g = decompose.visual_dunwoody(sys_)
    report.save_diagram_figure(sys_, diagram_path)
    report.save_gog_figure(sys_, g, dunwoody_path)
    recs = [
        ["figure", "diagram", diagram_path],
        ["figure", "dunwoody", dunwoody_path],
        *_gog_records(sys_, g),
    ]
    _print_lines(recs)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxvis",
        description="Analyze finitely generated Coxeter systems from presentation diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_, split_file=False, gog_file=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("cox", help="path to a .cox presentation file")
        if split_file:
            p.add_argument("split", help="path to a .split word-list splitting file")
        if gog_file:
            p.add_argument("gog", help="path to a .gog labeled-tree file")
        p.add_argument(
            "--format",
            choices=["text", "dot", "lines"],
            default="text",
            help="output format (default text)",
        )
        p.set_defaults(handler=handler)
        return p

    add("info", cmd_info, "summary: generators, relations, finiteness, components, cliques")
    add("ends", cmd_ends, "classify the number of ends")
    p = add("split", cmd_split, "visual splitting over a separating subset")
    p.add_argument("--over", required=True, help="generator names, space separated")
    add("dunwoody", cmd_dunwoody, "visual decomposition over finite subgroups")
    add("fa", cmd_fa, "maximal FA special subgroups (maximal cliques)")
    add("vfree", cmd_vfree, "decide virtual freeness, with witness or obstruction")
    add("vs", cmd_vs, "maximal subsets with no finite or two-ended splitting")
    p = add("word", cmd_word, "reduce a word to its canonical normal form")
    p.add_argument("--reduce", required=True, help="word as space-separated generators, or e")
    p = add("intersect", cmd_intersect, "intersection of two conjugated special subgroups")
    p.add_argument("--gens1", required=True, help="generators of the first special subgroup")
    p.add_argument("--conj1", default="e", help="conjugating word for the first subgroup")
    p.add_argument("--gens2", required=True, help="generators of the second special subgroup")
    p.add_argument("--conj2", default="e", help="conjugating word for the second subgroup")
    p = add("refine", cmd_refine, "refine an abstract splitting to a visual one", split_file=True)
    p.add_argument("--radius", type=int, default=6, help="Bass-Serre search radius (default 6)")
    p.add_argument("--depth", type=int, default=6, help="subgroup ball depth (default 6)")
    p.add_argument("--max-cosets", type=int, default=5000, help="coset budget (default 5000)")
    add("validate", cmd_validate, "check the subtree criterion for a labeled tree", gog_file=True)
    p = add("report", cmd_report, "write diagram and decomposition figures plus records")
    p.add_argument("--out", default=".", help="output directory for figures (default .)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except system.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, words.BudgetError, refine.SplitStructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
