"""Constructors for common diagrams."""
from __future__ import annotations

from .edit import Editor
from .model import LEFT, Arc, Crossing, Diagram, DiagramError, End, Vertex, norm_side


def circle():
    return Diagram([Arc(0, closed=True)])


def theta():
    """Two vertices joined by three parallel edges."""
    return Diagram(
        [Arc(0), Arc(1), Arc(2)],
        vertices=[
            Vertex(0, (End(0, "t"), End(1, "t"), End(2, "t"))),
            Vertex(1, (End(2, "h"), End(1, "h"), End(0, "h"))),
        ],
    )


def handcuff():
    """Two loops joined by a bridging edge."""
    return Diagram(
        [Arc(0), Arc(1), Arc(2)],
        vertices=[
            Vertex(0, (End(0, "t"), End(0, "h"), End(1, "t"))),
            Vertex(1, (End(2, "t"), End(2, "h"), End(1, "h"))),
        ],
    )


def from_braid(word, strands=None):
    """Closure of a braid word; generator ``k`` crosses strands ``k`` and ``k+1``.

    Strands run upward; a positive letter puts the strand moving from
    lower-left to upper-right on top.  Closing arcs run around the right.
    """
    word = [int(w) for w in word]
    if any(w == 0 for w in word):
        raise DiagramError("braid letters must be nonzero")
    n = strands or (max((abs(w) for w in word), default=0) + 1)
    if any(abs(w) >= n for w in word):
        raise DiagramError(f"braid letter out of range for {n} strands")
    ne, nw, sw, se = 0, 1, 2, 3
    ed = Editor()
    cur = [("bottom", j) for j in range(n)]
    pending = []
    for k, w in enumerate(word):
        i = abs(w) - 1
        roles = [None] * 4
        if w > 0:
            roles[sw], roles[ne], roles[se], roles[nw] = "oi", "oo", "ui", "uo"
        else:
            roles[sw], roles[ne], roles[se], roles[nw] = "ui", "uo", "oi", "oo"
        c = ed.add_node("x", roles, nid=k)
        pending.append((cur[i], (c, sw)))
        pending.append((cur[i + 1], (c, se)))
        cur[i], cur[i + 1] = (c, nw), (c, ne)
    for j in range(n):
        pending.append((cur[j], ("bottom", j)))
    segs = [list(p) for p in pending]
    for j in range(n):
        b = ("bottom", j)
        k_in = next(k for k, s in enumerate(segs) if s is not None and s[1] == b)
        k_out = next(k for k, s in enumerate(segs) if s is not None and s[0] == b)
        if k_in == k_out:
            segs[k_in] = [None, None]
        else:
            segs[k_in][1] = segs[k_out][1]
            segs[k_out] = None
    for k, s in enumerate(segs):
        if s is not None:
            ed.add_segment(s[0], s[1], (k,))
    return ed.to_diagram(relabel=True)


def disjoint_union(*diagrams):
    """Split union, relabelling later diagrams past the ids of earlier ones."""
    arcs, xs, vs = [], [], []
    da = dx = dv = 0
    for d in diagrams:
        for a in d.arcs.values():
            arcs.append(Arc(a.id + da, a.closed, tuple(c + dx for c in a.via)))
        for c in d.crossings.values():
            rot = tuple(End(e.arc + da, e.kind) for e in c.rot)
            xs.append(Crossing(c.id + dx, c.over + da, c.under_in + da, c.under_out + da, rot))
        for v in d.vertices.values():
            vs.append(Vertex(v.id + dv, tuple(End(e.arc + da, e.kind) for e in v.ends)))
        da += max(d.arcs, default=-1) + 1
        dx += max(d.crossings, default=-1) + 1
        dv += max(d.vertices, default=-1) + 1
    ambient = diagrams[0].ambient if diagrams else "sphere"
    return Diagram(arcs, xs, vs, ambient)


def _attach(side):
    return (2, 0, 1) if norm_side(side) == LEFT else (1, 0, 2)


def add_edge(d, seg_a, side_a, seg_b, side_b):
    """Join two points of the diagram by a new crossing-free edge.

    ``seg_a``/``seg_b`` are ``(arc, index)`` segment references; the two sides
    must face the same region.  The edge is oriented from ``seg_a`` to ``seg_b``.
    """
    sa, sb = d.segment_index(*seg_a), d.segment_index(*seg_b)
    side_a, side_b = norm_side(side_a), norm_side(side_b)
    if d.region_of(sa, side_a) != d.region_of(sb, side_b):
        raise DiagramError("edge endpoints do not face a common region")
    if sa == sb and side_a != side_b:
        raise DiagramError("cannot join opposite sides of one segment")
    top = max(d.arcs) + 1
    ed = Editor.from_diagram(d)
    v1 = ed.add_node("v")
    v2 = ed.add_node("v")
    ia, oa, ea = _attach(side_a)
    ib, ob, eb = _attach(side_b)
    if sa == sb:
        ed.subdivide(sa, [(v1, ia, oa), (v2, ib, ob)])
    else:
        ed.subdivide(sa, [(v1, ia, oa)])
        ed.subdivide(sb, [(v2, ib, ob)])
    ed.add_segment((v1, ea), (v2, eb), (top, 0))
    return ed.to_diagram(d.ambient)
