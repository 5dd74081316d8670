"""Command-line surface.

Exit codes: 0 success/holds/valid, 1 violation/invalid/none-found,
2 usage or input error, 3 resource-guard error.  All diagnostics go to
stderr; the data stream (stdout) carries only results, and identical
invocations produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bounds, complexes, graphs, hom, serialize
from .errors import InputError, ResourceLimitError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _num(x):
    return x if isinstance(x, int) or (isinstance(x, float) and math.isfinite(x)) else str(x)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        sys.stdout.write(serialize.dumps(payload))
    else:
        print(human)


def _load_pair(g_spec, h_spec):
    return serialize.load_graph(g_spec), serialize.load_graph(h_spec)


def cmd_chrom(args) -> int:
    g = serialize.load_graph(args.graph)
    chi = graphs.chromatic_number(g)
    _emit(args, {"chromatic_number": _num(chi)}, str(chi))
    return EXIT_OK


def cmd_maps(args) -> int:
    g, h = _load_pair(args.G, args.H)
    maps = hom.enumerate_graph_maps(g, h)
    if args.count:
        _emit(args, {"count": len(maps)}, str(len(maps)))
    else:
        payload = {"maps": [dict(zip(map(str, g.vertices), row)) for row in maps]}
        human = "\n".join(str(dict(zip(g.vertices, row))) for row in maps)
        _emit(args, payload, human if maps else "(none)")
    return EXIT_OK if maps else EXIT_NEGATIVE


def cmd_hom(args) -> int:
    g, h = _load_pair(args.G, args.H)
    poset = hom.enumerate_hom(g, h)
    if args.export:
        x = complexes.order_complex(poset)
        with open(args.export, "w") as fh:
            fh.write(serialize.dumps(x.export()))
    if args.components:
        comps = poset.components()
        payload = {"size": len(poset), "atoms": len(poset.atoms),
                   "components": [len(c) for c in comps]}
        human = (f"{len(poset)} elements, {len(poset.atoms)} atoms, "
                 f"{len(comps)} components of sizes {[len(c) for c in comps]}")
    else:
        payload = {"size": len(poset), "atoms": len(poset.atoms)}
        human = f"{len(poset)} elements, {len(poset.atoms)} atoms"
    _emit(args, payload, human)
    return EXIT_OK


def cmd_height(args) -> int:
    t = serialize.load_graph(args.T)
    z = serialize.load_involution(args.inv, t)
    g = serialize.load_graph(args.G)
    poset = hom.induced_involution(z, hom.enumerate_hom(t, g))
    if args.export and args.method == "full":
        x = complexes.order_complex(poset)
        quotient, w1 = complexes.quotient_with_w1(
            x, {i: poset.involution[i] for i in range(len(poset))})
        with open(args.export, "w") as fh:
            fh.write(serialize.dumps(
                {"quotient": quotient.export(), "w1": w1.export()}))
    res = complexes.sw_height(poset, method=args.method)
    payload = {"height": _num(res.value), "exact": res.exact, "method": res.method}
    bound = "" if res.exact else " (lower bound)"
    _emit(args, payload, f"{res.value}{bound} [{res.method}]")
    return EXIT_OK


def cmd_betti(args) -> int:
    g, h = _load_pair(args.G, args.H)
    poset = hom.enumerate_hom(g, h)
    if len(poset) == 0:
        _emit(args, {"betti": []}, "()")
        return EXIT_OK
    b = complexes.betti_mod2(complexes.order_complex(poset))
    _emit(args, {"betti": list(b)}, str(b))
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    cert = serialize.load_certificate(args.cert)
    check = hom.verify_certificate(cert)
    payload = {"valid": check.ok, "index": check.index, "reason": check.reason,
               "colorings": len(cert.colorings), "moves": cert.moves()}
    human = (f"valid: {len(cert.colorings)} colorings, {cert.moves()} moves"
             if check.ok else f"invalid at index {check.index}: {check.reason}")
    _emit(args, payload, human)
    return EXIT_OK if check.ok else EXIT_NEGATIVE


def cmd_find_path(args) -> int:
    g, h = _load_pair(args.G, args.H)
    phi = serialize.load_graph_map(args.start)
    psi = serialize.load_graph_map(args.end)
    cert = hom.find_path(g, h, phi, psi)
    if cert is None:
        _emit(args, {"found": False}, "no single-vertex-move path")
        return EXIT_NEGATIVE
    payload = {"found": True, "certificate": serialize.certificate_to_json(cert)}
    _emit(args, payload, f"path with {cert.moves()} moves")
    return EXIT_OK


def cmd_eqmap(args) -> int:
    t1 = serialize.load_graph(args.T1)
    z1 = serialize.load_involution(args.inv1, t1)
    t2 = serialize.load_graph(args.T2)
    z2 = serialize.load_involution(args.inv2, t2)
    phi = graphs.search_equivariant_map(z1, z2)
    if phi is None:
        _emit(args, {"found": False}, "no equivariant map")
        return EXIT_NEGATIVE
    payload = {"found": True,
               "map": {str(k): v for k, v in phi.as_dict().items()}}
    _emit(args, payload, str(phi.as_dict()))
    return EXIT_OK


def _report_exit(args, report) -> int:
    human = (f"{report.bound_kind}: chi(G)={report.chi_target} vs "
             f"{report.invariant_value} + chi(T)={report.chi_test} -> {report.status}")
    _emit(args, report.to_json(), human)
    return EXIT_NEGATIVE if report.status == "violated" else EXIT_OK


def cmd_check_swt(args) -> int:
    t = serialize.load_graph(args.T)
    z = serialize.load_involution(args.inv, t)
    g = serialize.load_graph(args.G)
    report = bounds.check_swt_bound(
        t=z, g=g, method=args.method,
        names=(str(args.T), str(args.inv), str(args.G)))
    return _report_exit(args, report)


def cmd_check_ht(args) -> int:
    t = serialize.load_graph(args.T)
    g = serialize.load_graph(args.G)
    report = bounds.check_ht_bound(t, g, allow_heuristic=args.heuristic,
                                   names=(str(args.T), str(args.G)))
    return _report_exit(args, report)


def cmd_sweep(args) -> int:
    t = serialize.load_graph(args.T)
    z = serialize.load_involution(args.inv, t)
    family = []
    for n in range(1, args.max_n + 1):
        family.extend(graphs.connected_graphs(n))
    reports = bounds.bound_suite(z, family, names=(str(args.T), str(args.inv)))
    violations = [r for r in reports if r.status == "violated"]
    for r in reports:
        sys.stdout.write(serialize.dumps(r.to_json()))
    if args.summary:
        print(f"# {len(reports)} graphs, {len(violations)} violations",
              file=sys.stderr)
    return EXIT_NEGATIVE if violations else EXIT_OK


def cmd_paper(args) -> int:
    if args.which == "theorem2":
        report = bounds.theorem2_pipeline()
    else:
        t = serialize.load_graph(args.graph)
        report = bounds.theorem1_pipeline(t)
    if args.json:
        sys.stdout.write(serialize.dumps(report.to_json()))
    else:
        for s in report.stages:
            print(f"[{'PASS' if s.passed else 'FAIL'}] {s.name}: {s.detail}")
        print(f"{report.pipeline}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="homlab",
        description="Hom complexes, mod-2 equivariant topology, and "
                    "chromatic-number test-graph checks",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps the subparser from clobbering a --json given before it
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add_parser("chrom", help="chromatic number of a graph")
    sp.add_argument("graph")
    sp.set_defaults(fn=cmd_chrom)

    sp = add_parser("maps", help="all graph maps G -> H")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.add_argument("--count", action="store_true")
    sp.set_defaults(fn=cmd_maps)

    sp = add_parser("hom", help="the Hom(G, H) poset")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.add_argument("--size", action="store_true")
    sp.add_argument("--components", action="store_true")
    sp.add_argument("--export", metavar="PATH",
                    help="write the order complex as JSON")
    sp.set_defaults(fn=cmd_hom)

    sp = add_parser("height", help="Stiefel-Whitney height of Hom(T, G)")
    sp.add_argument("T")
    sp.add_argument("inv")
    sp.add_argument("G")
    sp.add_argument("--method", choices=["full", "component"], default="full")
    sp.add_argument("--export", metavar="PATH",
                    help="write quotient complex and w1 cocycle as JSON")
    sp.set_defaults(fn=cmd_height)

    sp = add_parser("betti", help="mod-2 Betti numbers of Hom(G, H)")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.set_defaults(fn=cmd_betti)

    sp = add_parser("verify-cert", help="validate a path certificate file")
    sp.add_argument("cert")
    sp.set_defaults(fn=cmd_verify_cert)

    sp = add_parser("find-path", help="shortest recoloring path between colorings")
    sp.add_argument("G")
    sp.add_argument("H")
    sp.add_argument("start")
    sp.add_argument("end")
    sp.set_defaults(fn=cmd_find_path)

    sp = add_parser("eqmap", help="equivariant map search between Z2-graphs")
    sp.add_argument("T1")
    sp.add_argument("inv1")
    sp.add_argument("T2")
    sp.add_argument("inv2")
    sp.set_defaults(fn=cmd_eqmap)

    sp = add_parser("check-swt", help="chi(G) >= height + chi(T) on one instance")
    sp.add_argument("T")
    sp.add_argument("inv")
    sp.add_argument("G")
    sp.add_argument("--method", choices=["full", "component"], default="full")
    sp.set_defaults(fn=cmd_check_swt)

    sp = add_parser("check-ht", help="chi(G) >= conn + chi(T) on one instance")
    sp.add_argument("T")
    sp.add_argument("G")
    sp.add_argument("--heuristic", action="store_true",
                    help="let heuristic connectivity values decide the verdict")
    sp.set_defaults(fn=cmd_check_ht)

    sp = add_parser("sweep", help="bound sweep over small connected graphs")
    sp.add_argument("T")
    sp.add_argument("inv")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--summary", action="store_true")
    sp.set_defaults(fn=cmd_sweep)

    sp = add_parser("paper", help="bundled reproduction pipelines")
    psub = sp.add_subparsers(dest="which", required=True)
    t1 = psub.add_parser("theorem1", parents=[common])
    t1.add_argument("graph")
    t1.set_defaults(fn=cmd_paper, which="theorem1")
    t2 = psub.add_parser("theorem2", parents=[common])
    t2.set_defaults(fn=cmd_paper, which="theorem2")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
