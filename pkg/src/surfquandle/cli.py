"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 usage error.
Output is assembled in full before anything is written, so a failing
command prints only its diagnostic on stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import algebra
from .coloring import (
    count_colorings,
    count_shadow_colorings,
    format_coloring,
    iter_colorings,
    iter_shadow_colorings,
)
from .diagram import DiagramError, canonicalize, genus, parse_diagram, serialize_diagram
from .diagram.moves import MoveError, Site, apply_move_with_inverse, move_sites, norm_move, stabilize
from .errors import ParseError, StructureError
from .invariant import (
    cocycle_surface_invariant,
    format_link,
    format_lk,
    link_invariant,
    linking_number,
    surface_pair_invariant,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path, parse):
    try:
        return parse(_read(path))
    except ParseError as exc:
        exc.path = path
        raise


def _family(args):
    return _load(args.family, algebra.parse_family)


def _xset(args, f):
    return _load(args.xset, lambda t: algebra.parse_xset(t, f))


def _diagram(args, path=None):
    return _load(path or args.diagram, lambda t: parse_diagram(t, args.ambient))


def _site_ref(text):
    try:
        arc, idx, side = text.split(":")
        return (int(arc), int(idx)), side.upper()
    except ValueError:
        raise UsageError(f"site must look like ARC:INDEX:SIDE (e.g. 0:0:L), got {text!r}") from None


def _format_site(move, site):
    out = f"--move {move} --site {site.segment[0]}:{site.segment[1]}:{site.side}"
    if site.other is not None:
        out += f" --other {site.other[0]}:{site.other[1]}:{site.other_side}"
    if site.over is not None:
        over = site.over if isinstance(site.over, int) and not isinstance(site.over, bool) else (1 if site.over else 2)
        out += f" --over {over}"
    return out


# ---------------------------------------------------------------- commands

def cmd_validate_family(args):
    f = _family(args)
    report = algebra.verify_gfamily(f)
    if report:
        raise StructureError("\n".join(f"violation {v}" for v in report))
    return f"ok gfamily {f.size} {f.group.order}\n"


def cmd_validate_diagram(args):
    d = _diagram(args)
    comps = d.components()
    genera = " ".join(str(c.genus) for c in comps)
    return (
        f"ok arcs {len(d.arcs)} crossings {len(d.crossings)} vertices {len(d.vertices)} "
        f"regions {len(d.regions)} components {len(comps)} genus {genera}\n"
    )


def cmd_colorings(args):
    f = _family(args)
    d = _diagram(args)
    out = []
    if args.dump_colorings:
        blocks = [format_coloring(c) for c in iter_colorings(d, f)]
        out.append("\n".join(blocks) + ("\n" if blocks else ""))
        n = len(blocks)
    else:
        n = count_colorings(d, f, args.workers)
    out.append(f"count {n}\n")
    return "".join(out)


def cmd_shadow_colorings(args):
    f = _family(args)
    s = _xset(args, f)
    d = _diagram(args)
    out = []
    if args.dump_colorings:
        blocks = [format_coloring(c) for c in iter_shadow_colorings(d, f, s)]
        out.append("\n".join(blocks) + ("\n" if blocks else ""))
        n = len(blocks)
    else:
        n = count_shadow_colorings(d, f, s, args.workers)
    out.append(f"count {n}\n")
    return "".join(out)


def cmd_surface_pair(args):
    f = _family(args)
    dv = _diagram(args, args.dv)
    dw = _diagram(args, args.dw)
    return f"{surface_pair_invariant(dv, dw, f, args.workers)}\n"


def cmd_link_invariant(args):
    f = _family(args)
    d = _diagram(args)
    return format_link(link_invariant(d, f, args.workers)) + "\n"


def cmd_cocycle_invariant(args):
    f = _family(args)
    s = _xset(args, f)
    t = _load(args.cochain, lambda text: algebra.parse_cochain(text, f, s))
    d = _diagram(args)
    return f"{cocycle_surface_invariant(d, f, s, t, args.workers)}\n"


def cmd_linking_number(args):
    return format_lk(linking_number(_diagram(args))) + "\n"


def cmd_genus(args):
    d = _diagram(args)
    return f"genus {genus(d, args.component)}\n"


def cmd_canonical(args):
    return serialize_diagram(canonicalize(_diagram(args)))


def cmd_stabilize(args):
    d = _diagram(args)
    try:
        out = stabilize(d, args.arc, args.side, args.segment)
    except (MoveError, DiagramError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.canonical:
        out = canonicalize(out)
    return serialize_diagram(out)


def cmd_move(args, err):
    d = _diagram(args)
    try:
        move = norm_move(args.move)
    except MoveError as exc:
        raise UsageError(str(exc)) from None
    if args.list:
        return "".join(_format_site(move, s) + "\n" for s in move_sites(d, move))
    if args.site is None:
        raise UsageError("--site is required unless --list is given")
    ref, side = _site_ref(args.site)
    other, other_side = _site_ref(args.other) if args.other else (None, None)
    over = args.over
    if move == "R1+":
        over = (over or 1) == 1
    elif move == "R2+":
        over = over or 1
    try:
        site = Site(ref, side, other, other_side, over)
        out, inverse = apply_move_with_inverse(d, move, site)
    except (MoveError, DiagramError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.canonical:
        out, remap = canonicalize(out, with_map=True)
        if inverse is not None:
            m, s = inverse
            inverse = (m, Site(remap[s.segment], s.side, remap.get(s.other), s.other_side, s.over))
    if inverse is None:
        err.append("inverse: not expressible as a single move here")
    else:
        err.append("inverse: " + _format_site(*inverse))
    return serialize_diagram(out)


# ---------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="surfquandle", description="Quandle-coloring invariants of handlebody-link diagrams.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, *, family=False, xset=False, diagram=True, workers=False, help=None):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        if family:
            sp.add_argument("--family", required=True, help="G-family file")
        if xset:
            sp.add_argument("--xset", required=True, help="X-set file")
        if diagram is True:
            sp.add_argument("--diagram", required=True, help="diagram file")
        if diagram:
            sp.add_argument("--ambient", choices=("sphere", "plane"), default=None,
                            help="region model (default: as declared in the file, else sphere)")
        if workers:
            sp.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        return sp

    sp = sub.add_parser("validate-family", help="check the family axioms")
    sp.add_argument("family")
    sp.set_defaults(fn=cmd_validate_family)

    sp = sub.add_parser("validate-diagram", help="check a diagram file")
    sp.add_argument("diagram")
    sp.add_argument("--ambient", choices=("sphere", "plane"), default=None)
    sp.set_defaults(fn=cmd_validate_diagram)

    sp = add("colorings", cmd_colorings, family=True, workers=True, help="count arc colorings")
    sp.add_argument("--dump-colorings", action="store_true", help="list every coloring before the count")
    sp = add("shadow-colorings", cmd_shadow_colorings, family=True, xset=True, workers=True,
             help="count arc and region colorings")
    sp.add_argument("--dump-colorings", action="store_true")
    sp = add("surface-pair", cmd_surface_pair, family=True, diagram="ambient-only", workers=True,
             help="normalized counts of two connected diagrams")
    sp.add_argument("--dv", required=True)
    sp.add_argument("--dw", required=True)
    add("link-invariant", cmd_link_invariant, family=True, workers=True, help="normalized count of a 2-component diagram")
    sp = add("cocycle-invariant", cmd_cocycle_invariant, family=True, xset=True, workers=True,
             help="normalized weight multiset of a 2-component diagram")
    sp.add_argument("--cochain", required=True)
    add("linking-number", cmd_linking_number, help="linking number of a 2-component diagram")
    sp = add("genus", cmd_genus, help="genus of a connected component")
    sp.add_argument("--component", type=int, default=None)
    add("canonical", cmd_canonical, help="canonical relabelling of a diagram")

    sp = add("stabilize", cmd_stabilize, help="attach an edge and a circle to an arc")
    sp.add_argument("--arc", type=int, required=True)
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--segment", type=int, default=0, help="which piece of the arc between over-crossings")
    sp.add_argument("--canonical", action="store_true")

    sp = add("move", cmd_move, help="apply a Reidemeister move")
    sp.add_argument("--move", required=True, help="R1+, R1-, R2+, R2- or R3")
    sp.add_argument("--site", help="ARC:INDEX:SIDE")
    sp.add_argument("--other", help="second segment for R2+, ARC:INDEX:SIDE")
    sp.add_argument("--over", type=int, choices=(1, 2), default=None,
                    help="which strand passes over (R1+: 1 = first pass, R2+: 1 = --site strand)")
    sp.add_argument("--list", action="store_true", help="list applicable sites")
    sp.add_argument("--canonical", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    err = []
    try:
        if args.fn is cmd_move:
            out = cmd_move(args, err)
        else:
            out = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        where = getattr(exc, "path", None)
        print(f"parse error: {where + ': ' if where else ''}{exc}", file=sys.stderr)
        return 2
    except StructureError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    for line in err:
        print(line, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
