"""Regenerate the shipped fixture files (all diagrams in canonical form)."""
import itertools
from pathlib import Path

from surfquandle.algebra import (
    AbelianCoefficients,
    Cochain2,
    GFamily,
    canonical_xset,
    format_cochain,
    format_family,
    format_xset,
    make_alexander_family,
    make_dihedral_family,
    make_trivial_family,
    symmetric_group,
    trivial_xset,
)
from surfquandle.coloring import count_colorings
from surfquandle.diagram import (
    add_edge,
    canonicalize,
    circle,
    disjoint_union,
    from_braid,
    handcuff,
    serialize_diagram,
    stabilize,
    theta,
)

OUT = Path(__file__).resolve().parents[2] / "fixtures"
FAMILIES = [make_dihedral_family(3), make_alexander_family(7, 2), make_trivial_family(2, symmetric_group(3))]


def trivial_count(f, genus):
    return f.size * f.group.order ** genus


def tunnel(knot):
    """First crossing-free edge that turns ``knot`` into a trivial genus-2 diagram (by counts)."""
    sides = [(s.index, side) for s in knot.segments for side in "LR"]
    for (a, sa), (b, sb) in itertools.combinations(sides, 2):
        if a == b or knot.face_of(a, sa) != knot.face_of(b, sb):
            continue
        d = add_edge(knot, knot.segment_ref(a), sa, knot.segment_ref(b), sb)
        if all(count_colorings(d, f) == trivial_count(f, 2) for f in FAMILIES):
            return d
    raise RuntimeError("no unknotting edge found")


def broken_family():
    f = make_dihedral_family(3)
    op = [[list(r) for r in t] for t in f.op]
    op[1][0][0] = 1
    return GFamily(f.group, f.size, op)


def main():
    OUT.mkdir(exist_ok=True)
    fam = make_dihedral_family(3)
    files = {
        "dihedral3.fam": format_family(fam),
        "broken.fam": format_family(broken_family()),
        "alexander7.fam": format_family(FAMILIES[1]),
        "s3trivial.fam": format_family(FAMILIES[2]),
        "dihedral3_self.xset": format_xset(canonical_xset(fam)),
        "dihedral3_point.xset": format_xset(trivial_xset(fam)),
        "dihedral3_zero.cochain": format_cochain(Cochain2.zero(fam, canonical_xset(fam), AbelianCoefficients(3))),
    }
    trefoil = from_braid([1, 1, 1])
    fig8 = from_braid([1, -2, 1, -2])
    diagrams = {
        "circle": circle(),
        "trefoil": trefoil,
        "figure8": fig8,
        "theta": theta(),
        "handcuff": handcuff(),
        "hopf": from_braid([1, 1]),
        "two_circles": disjoint_union(circle(), circle()),
        "trefoil_circle": disjoint_union(trefoil, circle()),
        "trefoil_theta": disjoint_union(trefoil, theta()),
        "torus_link4": from_braid([1, 1, 1, 1]),
        "stab_trefoil": stabilize(trefoil, 0),
        "braid_r3": from_braid([1, 2, 1], 3),
        "trefoil_tunnel_v": stabilize(tunnel(trefoil), 0),
        "trefoil_w": stabilize(stabilize(trefoil, 0), 1),
        "figure8_tunnel_v": stabilize(tunnel(fig8), 0),
        "figure8_w": stabilize(stabilize(fig8, 0), 1),
    }
    for name, d in diagrams.items():
        files[f"{name}.dgm"] = serialize_diagram(canonicalize(d))
    for name, text in files.items():
        (OUT / name).write_text(text)
        print("wrote", name)


if __name__ == "__main__":
    main()
