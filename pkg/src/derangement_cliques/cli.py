"""Command line entry point.

Exit codes: 0 pass, 1 property failure, 2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, conjclasses, covering, hypergraph
from .derangement import (
    DerangementGraph,
    has_kclique,
    intersection_density,
    max_coclique,
)
from .errors import CapExceeded, DerangementCliquesError, InvalidPermutation, ParseError, PreconditionError
from .groupfile import parse_group_file, write_group_file
from .perm import PermGroup, blocks_action, block_system_with, minimal_block_systems, stabilizer
from .search import SearchStats, search_exceptional

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(items, fmt, out):
    items = list(items)
    if fmt == "kv":
        for k, v in items:
            out.write(f"{k}={v}\n")
    else:
        width = max((len(k) for k, _ in items), default=0)
        for k, v in items:
            out.write(f"{k.ljust(width)} : {v}\n")


def _load(path) -> PermGroup:
    return parse_group_file(path).group()


def _cmd_analyze(args, out):
    rec = parse_group_file(args.file)
    rep = catalog.analyze(rec, coclique=not args.no_coclique)
    _emit(rep.items(), args.format, out)
    bad = rep.bounds_hold is False or (rep.transitive and rec.degree >= 3 and rep.triangle is False)
    return EXIT_FAIL if bad else EXIT_OK


def _cmd_clique(args, out):
    G = _load(args.file)
    w = has_kclique(DerangementGraph(G), args.size)
    items = [("size", str(args.size)), ("found", "true" if w else "false")]
    if w:
        items += [(f"element{i}", s) for i, s in enumerate(w.cycle_strings())]
    _emit(items, args.format, out)
    return EXIT_OK if w else EXIT_FAIL


def _cmd_coclique(args, out):
    G = _load(args.file)
    alpha, witness = max_coclique(DerangementGraph(G))
    items = [("alpha", str(alpha))] + [(f"element{i}", g.cycle_string()) for i, g in enumerate(sorted(witness))]
    _emit(items, args.format, out)
    return EXIT_OK


def _cmd_density(args, out):
    G = _load(args.file)
    rho = intersection_density(G)
    _emit([("rho", str(rho)), ("rho_float", f"{float(rho):.6f}")], args.format, out)
    return EXIT_OK


def _cmd_blocks(args, out):
    G = _load(args.file)
    systems = minimal_block_systems(G)
    items = [("count", str(len(systems)))]
    for i, s in enumerate(systems):
        items.append((f"system{i}", f"{s.num_blocks}x{s.block_size} " +
                      " ".join("{" + ",".join(map(str, b)) + "}" for b in s.blocks)))
    _emit(items, args.format, out)
    return EXIT_OK


def _cmd_hypergraph(args, out):
    G = _load(args.group)
    stab = stabilizer(G, point=args.point)
    if args.hypergraph:
        graphs = [hypergraph.parse_hypergraph(Path(args.hypergraph).read_text())]
    else:
        if args.a is None or args.b is None:
            raise PreconditionError("give --a and --b, or --hypergraph")
        graphs = hypergraph.enumerate_special_hypergraphs(G, args.a, args.b)
    items = [("hypergraphs", str(len(graphs)))]
    failed = False
    for i, H in enumerate(graphs):
        fixed = hypergraph.point_stabilizer_fixes_edge(stab, H)
        col = hypergraph.random_colouring_search(H, args.colours, trials=args.trials, seed=args.seed)
        items += [(f"h{i}.edges", str(len(H.edges))), (f"h{i}.a", str(H.a)), (f"h{i}.b", str(H.b)),
                  (f"h{i}.stabilizer_fixes_edge", "true" if fixed else "false"),
                  (f"h{i}.random_colouring", "".join(map(str, col)) if col else "none")]
        if H.n <= hypergraph.EXACT_VERTEX_CAP:
            chi = hypergraph.exact_chromatic_number(H)
            items.append((f"h{i}.chi", str(chi)))
            if fixed and chi > args.colours:
                failed = True
        if fixed and col is None:
            failed = True
    _emit(items, args.format, out)
    return EXIT_FAIL if failed else EXIT_OK


def _resolve_ref(ref: str, A: PermGroup) -> PermGroup:
    if ref == "ambient":
        return A
    kind, _, arg = ref.partition(":")
    if kind == "kernel" and arg:
        sigma = block_system_with(A, int(arg))
        if sigma is None:
            raise PreconditionError(f"no minimal block system with {arg} blocks")
        return blocks_action(A, sigma)[1]
    if kind == "stabilizer" and arg:
        return stabilizer(A, point=int(arg))
    path = arg if kind == "file" else ref
    return _load(path)


def _cmd_covering(args, out):
    A = _load(args.ambient)
    H = _resolve_ref(args.normal, A)
    U = _resolve_ref(args.subgroup, A)
    inst = covering.CoveringInstance(A, H, U)
    covers = covering.is_covering_subgroup(inst)
    items = [("n", str(inst.n)), ("order_A", str(A.order)), ("order_H", str(H.order)),
             ("order_U", str(U.order)), ("covering", "true" if covers else "false")]
    ok = covers
    if covers and inst.n == 3:
        rep = covering.verify_neumann_praeger_n3(inst)
        items += rep.items()[1:]
        ok = rep.passed
    _emit(items, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_classes(args, out):
    T = _load(args.group)
    A = _load(args.ambient)
    t = conjclasses.aut_class_count(T, A)
    items = [("classes", str(t))]
    ok = True
    if args.kappa:
        formula = conjclasses.stars_and_bars(t, args.kappa)
        brute = conjclasses.brute_force_power_classes(T, A, args.kappa)
        ok = formula == brute
        items += [("kappa", str(args.kappa)), ("stars_and_bars", str(formula)),
                  ("brute_force", str(brute)), ("agree", "true" if ok else "false")]
    _emit(items, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_search(args, out):
    stats = SearchStats()
    records = search_exceptional(args.p, args.budget, seed=args.seed, workers=args.workers, stats=stats)
    items = [("p", str(args.p)), ("budget", str(args.budget)), ("seed", str(args.seed)),
             ("found", str(len(records)))]
    items += [(f"outcome.{k}", str(v)) for k, v in sorted(stats.outcomes.items())]
    for i, r in enumerate(records):
        items.append((f"record{i}", f"{r.name} " + " ".join(f"{k}={v}" for k, v in r.tags)))
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            write_group_file(r, Path(args.out) / f"{r.name}.grp")
    _emit(items, args.format, out)
    return EXIT_OK


def _cmd_verify(args, out):
    directory = args.dir if args.dir else catalog.catalog_dir()
    summary = catalog.verify_catalog(directory, workers=args.workers)
    if args.format == "kv":
        for r in summary.results:
            out.write(f"{r.name}={'pass' if r.passed else 'fail'}\n")
    else:
        for line in summary.lines():
            out.write(line + "\n")
    out.write(f"# {sum(r.passed for r in summary.results)}/{len(summary.results)} records pass\n")
    return EXIT_OK if summary.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "kv"), default="text")
    ap = argparse.ArgumentParser(prog="derangement-cliques",
                                 description="Cliques in derangement graphs of permutation groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for a group file")
    p.add_argument("file")
    p.add_argument("--no-coclique", action="store_true", help="skip the independence number")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("clique", parents=[common], help="look for a k-clique")
    p.add_argument("file")
    p.add_argument("--size", type=int, default=4)
    p.set_defaults(func=_cmd_clique)

    for name, func, text in (("coclique", _cmd_coclique, "maximum intersecting family"),
                             ("density", _cmd_density, "intersection density"),
                             ("blocks", _cmd_blocks, "minimal block systems")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("hypergraph-chroma", parents=[common],
                       help="colour the special (a,b)-hypergraphs of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--hypergraph", help="colour this hypergraph file instead of enumerating")
    p.add_argument("--colours", type=int, default=4)
    p.add_argument("--trials", type=int, default=hypergraph.RANDOM_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point", type=int, default=0, help="point whose stabilizer must fix an edge")
    p.set_defaults(func=_cmd_hypergraph)

    p = sub.add_parser("covering", parents=[common], help="covering subgroup check")
    p.add_argument("--ambient", required=True)
    p.add_argument("--normal", required=True, help="ambient | kernel:<blocks> | stabilizer:<pt> | <file>")
    p.add_argument("--subgroup", required=True, help="same forms as --normal")
    p.set_defaults(func=_cmd_covering)

    p = sub.add_parser("classes", parents=[common], help="classes under a conjugation action")
    p.add_argument("--group", required=True)
    p.add_argument("--ambient", required=True)
    p.add_argument("--kappa", type=int)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("search-exceptional", parents=[common],
                       help="random search for degree-6p groups without 4-cliques")
    p.add_argument("--p", type=int, choices=(3, 5), required=True)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="directory for the found group files")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify-catalog", parents=[common], help="check every tagged group file")
    p.add_argument("dir", nargs="?")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, InvalidPermutation, OSError, ValueError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DerangementCliquesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
