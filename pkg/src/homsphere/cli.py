"""Command line front end: ``homsphere <subcommand> ...``.

Every subcommand reads text files, writes its main result to ``--out`` (or
standard output) and, where useful, a human-readable summary to
``--report``.  Output depends only on the inputs and the flags.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .colorcodec import decode, encode
from .complex import barycentric, betti, connected_sum, dual_graph, stellate_facet, validate
from .diskfill import DiskFillParams, fill_cycles, recover_graph
from .dualcodec import (
    graph_to_sphere,
    missing_function,
    reconstruct,
    sphere_to_graph,
)
from .errors import HomsphereError
from .graphkit import (
    QIRelation,
    ShortCertificate,
    check_short,
    cheeger_exact,
    edge_multiplicity,
    four_to_three,
    fundamental_cycle_basis,
    lambda2,
    pendant_color_decode,
    pendant_color_encode,
    qi_check,
    three_to_four_decode,
)
from .handleplan import build_plan, collapse_schedule, handle_incidence, star_sizes
from .telescope import build_hierarchy, collapse, expansion_report, telescope_complex


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        io.write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _report(args, text: str) -> None:
    if getattr(args, "report", None):
        io.write_text(args.report, text)
    elif getattr(args, "out", None):
        sys.stdout.write(text)


def _int_list(s: str) -> list[int]:
    return [int(t) for t in s.replace(",", " ").split()]


def _config(args) -> io.RunConfig:
    return io.RunConfig(p=args.field, seed=args.seed)


# -- command implementations -----------------------------------------------


def cmd_validate(args):
    rep = validate(io.read_sc(args.input))
    _emit(args, str(rep) + "\n")
    return 0 if rep.valid else 1


def cmd_betti(args):
    cfg = _config(args)
    b = betti(io.read_sc(args.input), cfg.p)
    _emit(args, " ".join(map(str, b.betti)) + "\n")
    return 0


def cmd_dual_graph(args):
    c = io.read_sc(args.input)
    g, ridges = dual_graph(c)
    _emit(args, io.emit_g(g))
    lines = [f"{i} : {' '.join(map(str, f))}" for i, f in enumerate(c.facets)]
    lines += [f"{a} {b} : {' '.join(map(str, r))}" for (a, b), r in sorted(ridges.items())]
    _report(args, "\n".join(lines) + "\n")
    return 0


def cmd_barycentric(args):
    b, prov = barycentric(io.read_sc(args.input))
    _emit(args, io.emit_sc(b))
    lines = [f"{v} <- {' '.join(map(str, f))}" for v, f in sorted(prov.vertex_origin.items())]
    _report(args, "\n".join(lines) + "\n")
    return 0


def cmd_stellate(args):
    c = io.read_sc(args.input)
    _emit(args, io.emit_sc(stellate_facet(c, _int_list(args.facet))))
    return 0


def cmd_connect_sum(args):
    x, y = io.read_sc(args.x), io.read_sc(args.y)
    fx, fy = sorted(_int_list(args.fx)), sorted(_int_list(args.fy))
    if args.bij:
        bij = dict(tuple(int(t) for t in pair.split(":")) for pair in args.bij.split(","))
    else:
        bij = dict(zip(fx, fy))
    _emit(args, io.emit_sc(connected_sum(x, fx, y, fy, bij)))
    return 0


def cmd_cheeger(args):
    h = cheeger_exact(io.read_g(args.input))
    _emit(args, f"{h}\n")
    return 0


def cmd_lambda2(args):
    _emit(args, f"{lambda2(io.read_g(args.input)):.12f}\n")
    return 0


def cmd_check_short(args):
    cfg = _config(args)
    g = io.read_g(args.graph)
    cycles = io.read_cycles(args.cycles)
    cert = ShortCertificate(args.degmax, args.k, args.L, cfg.p, cycles, args.uniform)
    v = check_short(g, cert)
    lines = [f"valid: {v.valid}", f"rank: {v.rank}/{v.needed_rank}",
             f"max_multiplicity: {v.max_multiplicity}",
             f"average_length: {v.average_length:.6f}", f"max_length: {v.max_length}"]
    lines += [f"violation: {x}" for x in v.violations]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if v.valid else 1


def cmd_qi_check(args):
    x, y = io.read_g(args.x), io.read_g(args.y)
    pairs = []
    for no, line in io._lines(io.read_text(args.relation)):
        vals = io._ints(line, no, args.relation)
        if len(vals) != 2:
            raise io.ParseError("relation lines need 'x y'", no, args.relation)
        pairs.append(tuple(vals))
    rep = qi_check(x, y, QIRelation(pairs, c=args.c, M=args.M))
    lines = [f"M: {rep.M}", f"condition2: {rep.cond2}", f"condition3: {rep.cond3}",
             f"pair_bound_ok: {rep.pair_bound_ok}", f"image_density: {rep.density}"]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if rep.ok else 1


def cmd_four_to_three(args):
    g = io.read_g(args.input)
    if args.decode:
        _emit(args, io.emit_g(three_to_four_decode(g)))
    else:
        h, _ = four_to_three(g)
        _emit(args, io.emit_g(h))
    return 0


def _read_colors(path) -> list[int]:
    out = []
    for no, line in io._lines(io.read_text(path)):
        vals = io._ints(line, no, path)
        out.extend(vals)
    return out


def cmd_pendant_encode(args):
    g = io.read_g(args.input)
    _emit(args, io.emit_g(pendant_color_encode(g, _read_colors(args.colors))))
    return 0


def cmd_pendant_decode(args):
    h, cols = pendant_color_decode(io.read_g(args.input))
    _emit(args, io.emit_g(h))
    _report(args, "".join(f"{c}\n" for c in cols))
    return 0


def cmd_fill_cycles(args):
    cfg = _config(args)
    g = io.read_g(args.graph)
    cycles = io.read_cycles(args.cycles)
    io.check_cycles_in(g, cycles, args.cycles)
    params = DiskFillParams(cfg.p, args.degmax, args.k, args.threshold)
    f = fill_cycles(g, cycles, params)
    _emit(args, io.emit_sc(f.complex))
    _report(args, f"threshold: {f.T}\nselected: {' '.join(map(str, f.selected))}\n"
                  f"facets: {len(f.complex)}\nbetti: {' '.join(map(str, betti(f.complex, cfg.p)))}\n")
    return 0


def cmd_recover_graph(args):
    _emit(args, io.emit_g(recover_graph(io.read_sc(args.input), args.threshold)))
    return 0


def cmd_encode_colors(args):
    x = io.read_csc(args.input)
    _emit(args, io.emit_sc(encode(x, args.r)))
    return 0


def cmd_decode_colors(args):
    y = io.read_sc(args.input)
    x = decode(y, args.d, args.r)
    _emit(args, io.emit_csc(x))
    return 0


def cmd_dual_encode(args):
    m = io.read_sc(args.input)
    order = _read_colors(args.order) if args.order else None
    dg, mf = missing_function(m, order)
    legend = dict(enumerate(m.facets))
    _emit(args, io.emit_mf(m.dim, mf, legend))
    return 0


def cmd_dual_decode(args):
    f = io.read_mf(args.input)
    _emit(args, io.emit_sc(reconstruct(f.dual_graph(), f.mf, f.d)))
    return 0


def cmd_handle_plan(args):
    x = io.read_sc(args.input)
    k = args.k if args.k is not None else max(star_sizes(x).values())
    plan = build_plan(x, k)
    _emit(args, io.emit_plan(plan))
    inc = handle_incidence(plan, x)
    if args.incidence:
        io.write_text(args.incidence, io.emit_g(inc.graph))
    sched = collapse_schedule(plan, x)
    lines = [f"{e.index} {' '.join(map(str, e.handle))}" for e in sched]
    _report(args, "\n".join(lines) + "\n")
    return 0


def cmd_telescope_build(args):
    base = io.read_g(args.base)
    h = build_hierarchy(base, args.levels, args.trials, args.seed)
    t = telescope_complex(h)
    _emit(args, io.emit_sc(t.complex))
    rep = collapse(t.complex, "scheduled", t)
    lines = [f"sizes: {' '.join(map(str, h.sizes()))}",
             f"facets: {len(t.complex)}",
             f"vertices: {len(t.complex.vertices)}",
             f"scheduled_collapse: {rep.success} ({len(rep.steps)} steps)"]
    for r in expansion_report(h, simplicial=not args.no_simplicial):
        h_txt = str(r.cellular.h_exact) if r.cellular.h_exact is not None else "-"
        lines.append(
            f"T_{r.N}: cellular n={r.cellular.n} maxdeg={r.cellular.max_degree} "
            f"lambda2={r.cellular.lambda2:.6f} h={h_txt} | simplicial n={r.simplicial.n} "
            f"maxdeg={r.simplicial.max_degree} lambda2={r.simplicial.lambda2:.6f}"
        )
    _report(args, "\n".join(lines) + "\n")
    return 0


def cmd_collapse(args):
    c = io.read_sc(args.input)
    try:
        rep = collapse(c, "greedy")
        _emit(args, f"collapsible: True\nsteps: {len(rep.steps)}\n")
        return 0
    except HomsphereError as exc:
        core = getattr(exc, "core", None)
        text = "collapsible: False\n"
        if core is not None:
            text += "core:\n" + io.emit_sc(core)
        _emit(args, text)
        return 1


def cmd_graph_to_sphere(args):
    cfg = _config(args)
    g = io.read_g(args.input)
    cycles = fundamental_cycle_basis(g)
    k = args.k or max(edge_multiplicity(g, cycles).values(), default=1)
    degmax = args.degmax or g.max_degree()
    f = fill_cycles(g, cycles, DiskFillParams(cfg.p, degmax, k, args.threshold))
    _emit(args, io.emit_sc(f.complex))
    b = betti(f.complex, cfg.p)
    _report(args, f"cycles: {len(cycles)}\nk: {k}\nthreshold: {f.T}\n"
                  f"facets: {len(f.complex)}\nbetti: {' '.join(map(str, b.betti))}\n")
    return 0


def cmd_sphere_to_graph(args):
    if args.decode:
        if args.d is None:
            raise SystemExit("--decode needs --d")
        _emit(args, io.emit_sc(graph_to_sphere(io.read_g(args.input), args.d)))
    else:
        g = sphere_to_graph(io.read_sc(args.input))
        _emit(args, io.emit_g(g))
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=2, help="field prime p (default 2)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--report", help="summary file")

    p = argparse.ArgumentParser(prog="homsphere", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "validate a .sc complex", "input")
    add("betti", cmd_betti, "Betti numbers over GF(p)", "input")
    add("dual-graph", cmd_dual_graph, "dual graph of a pure complex", "input")
    add("barycentric", cmd_barycentric, "barycentric subdivision", "input")
    sp = add("stellate", cmd_stellate, "stellate one facet", "input")
    sp.add_argument("--facet", required=True, help="facet vertices, e.g. '1 2 3'")
    sp = add("connect-sum", cmd_connect_sum, "connected sum along two facets", "x", "y")
    sp.add_argument("--fx", required=True)
    sp.add_argument("--fy", required=True)
    sp.add_argument("--bij", help="pairs a:b,... (default: sorted order)")
    add("cheeger", cmd_cheeger, "exact edge expansion (n <= 24)", "input")
    add("lambda2", cmd_lambda2, "normalized Laplacian spectral gap", "input")
    sp = add("check-short", cmd_check_short, "check a short-class certificate", "graph", "cycles")
    sp.add_argument("--degmax", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--L", type=float, required=True)
    sp.add_argument("--uniform", action="store_true")
    sp = add("qi-check", cmd_qi_check, "check a quasi-isometry relation", "x", "y", "relation")
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--M", type=int)
    sp = add("four-to-three", cmd_four_to_three, "4-regular to cubic gadget graph", "input")
    sp.add_argument("--decode", action="store_true", help="contract gadgets instead")
    sp = add("pendant-encode", cmd_pendant_encode, "colours as pendant vertices", "input")
    sp.add_argument("--colors", required=True, help="file with one colour per vertex")
    add("pendant-decode", cmd_pendant_decode, "strip pendant vertices", "input")
    sp = add("fill-cycles", cmd_fill_cycles, "fill cycles with disks", "graph", "cycles")
    sp.add_argument("--degmax", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--threshold", type=int)
    sp = add("recover-graph", cmd_recover_graph, "graph from a filled complex", "input")
    sp.add_argument("--threshold", type=int, required=True)
    sp = add("encode-colors", cmd_encode_colors, "encode a facet colouring", "input")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp = add("decode-colors", cmd_decode_colors, "decode a facet colouring", "input")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp = add("dual-encode", cmd_dual_encode, "missing vertex function (.mf)", "input")
    sp.add_argument("--order", help="file listing the vertex order")
    add("dual-decode", cmd_dual_decode, "rebuild a complex from .mf", "input")
    sp = add("handle-plan", cmd_handle_plan, "handle gluing plan", "input")
    sp.add_argument("--k", type=int, help="slot capacity (default: max star size)")
    sp.add_argument("--incidence", help="write the incidence graph (.g) here")
    tel = sub.add_parser("telescope", help="mapping telescopes")
    tsub = tel.add_subparsers(dest="tcommand", required=True)
    sp = tsub.add_parser("build", parents=[common], help="build a 2-lift telescope")
    sp.add_argument("--base", required=True)
    sp.add_argument("--levels", type=int, required=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--no-simplicial", action="store_true",
                    help="skip the spectral report of the simplicial 1-skeleton")
    sp.set_defaults(func=cmd_telescope_build)
    add("collapse", cmd_collapse, "greedy collapse", "input")
    sp = add("graph-to-sphere-codec", cmd_graph_to_sphere,
             "graph -> acyclic 2-complex via fundamental cycles", "input")
    sp.add_argument("--degmax", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--threshold", type=int)
    sp = add("sphere-to-graph-codec", cmd_sphere_to_graph,
             "closed pseudomanifold <-> decorated dual graph", "input")
    sp.add_argument("--decode", action="store_true")
    sp.add_argument("--d", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args) or 0)
    except HomsphereError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
