"""Stabilization and Reidemeister rewrites away from vertices.

Sites name a segment by ``(arc id, index along the arc)`` plus a side
(``"L"`` or ``"R"`` relative to the arc's orientation).  Removal moves
(``R1-``, ``R2-``, ``R3``) are addressed by one side of the face they act on.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .edit import Editor, opposite
from .model import LEFT, RIGHT, DiagramError, flip, norm_side

E, N, W, S = 0, 1, 2, 3
MOVES = ("R1+", "R1-", "R2+", "R2-", "R3")


class MoveError(DiagramError):
    pass


@dataclass(frozen=True)
class Site:
    segment: tuple
    side: str
    other: tuple = None
    other_side: str = None
    over: object = None

    def __str__(self):
        s = f"{self.segment[0]}:{self.segment[1]}:{self.side}"
        if self.other is not None:
            s += f" {self.other[0]}:{self.other[1]}:{self.other_side}"
        if self.over is not None:
            s += f" over={self.over}"
        return s


def norm_move(move):
    m = move.replace("−", "-").upper()
    if m not in MOVES:
        raise MoveError(f"unknown move {move!r}; expected one of {', '.join(MOVES)}")
    return m


def _seg(d, ref):
    return d.segment_index(*ref)


# ------------------------------------------------------------- stabilization

def stabilize(d, arc, side="left", segment=0):
    """Attach a new edge on ``arc`` ending at a new circle, with no new crossings.

    The edge runs from a new vertex on the arc into the region on ``side``
    and is oriented away from the arc; the circle runs counterclockwise.
    """
    if arc not in d.arcs:
        raise MoveError(f"no arc {arc}")
    side = norm_side(side)
    sid = d.segment_index(arc, segment)
    top = max(d.arcs) + 1
    ed = Editor.from_diagram(d)
    v1 = ed.add_node("v")
    v2 = ed.add_node("v")
    if side == LEFT:
        out_p, e_p, in_p = 0, 1, 2
    else:
        out_p, in_p, e_p = 0, 1, 2
    ed.subdivide(sid, [(v1, in_p, out_p)])
    ed.add_segment((v1, e_p), (v2, 2), (top, 0))
    ed.add_segment((v2, 0), (v2, 1), (top + 1, 0))
    return ed.to_diagram(d.ambient)


# ------------------------------------------------------------- site finding

def _face_pattern(d, seg, side):
    return d.face_sides(d.face_of(seg, side))


def _r1_minus_ok(d, sd):
    sides = _face_pattern(d, *sd)
    if len(sides) != 1:
        return None
    s = d.segments[sides[0][0]]
    if s.start is None or s.start[0][0] != "x" or s.start[0] != s.end[0]:
        return None
    return s


def _over_role(d, slot):
    node, pos = slot
    return d.crossings[node[1]].rot[pos].kind in "io"


def _r2_minus_ok(d, sd):
    sides = _face_pattern(d, *sd)
    if len(sides) != 2:
        return None
    a, b = (d.segments[i] for i, _ in sides)
    if a.index == b.index or a.start is None or b.start is None:
        return None
    na = {a.start[0], a.end[0]}
    nb = {b.start[0], b.end[0]}
    if len(na) != 2 or na != nb or any(n[0] != "x" for n in na):
        return None
    ov_a = (_over_role(d, a.start), _over_role(d, a.end))
    ov_b = (_over_role(d, b.start), _over_role(d, b.end))
    if ov_a == (True, True) and ov_b == (False, False):
        return sides
    if ov_b == (True, True) and ov_a == (False, False):
        return sides
    return None


def _r3_ok(d, sd):
    sides = _face_pattern(d, *sd)
    if len(sides) != 3:
        return None
    segs = [d.segments[i] for i, _ in sides]
    if len({s.index for s in segs}) != 3 or any(s.start is None for s in segs):
        return None
    nodes = set()
    for s in segs:
        if s.start[0][0] != "x" or s.end[0][0] != "x" or s.start[0] == s.end[0]:
            return None
        nodes.update((s.start[0], s.end[0]))
    if len(nodes) != 3:
        return None
    counts = sorted(_over_role(d, s.start) + _over_role(d, s.end) for s in segs)
    if counts != [0, 1, 2]:
        return None
    return sides


def _face_sites(d, check):
    out = []
    for face, sides in enumerate(d.faces):
        if check(d, sides[0]) is not None:
            seg, side = min(sides)
            out.append(Site(d.segment_ref(seg), side))
    return out


def move_sites(d, move):
    """All sites where ``move`` applies, in a deterministic order."""
    move = norm_move(move)
    segs = range(len(d.segments))
    if move == "R1+":
        return [Site(d.segment_ref(s), side, over=o) for s in segs for side in (LEFT, RIGHT) for o in (True, False)]
    if move == "R2+":
        out = []
        for s1, s2 in combinations(segs, 2):
            for a in (LEFT, RIGHT):
                for b in (LEFT, RIGHT):
                    if d.region_of(s1, a) == d.region_of(s2, b):
                        for o in (1, 2):
                            out.append(Site(d.segment_ref(s1), a, d.segment_ref(s2), b, o))
        return out
    check = {"R1-": _r1_minus_ok, "R2-": _r2_minus_ok, "R3": _r3_ok}[move]
    return _face_sites(d, check)


# ------------------------------------------------------------- rewrites

def _r1_plus(d, site):
    sid = _seg(d, site.segment)
    side = norm_side(site.side)
    ed = Editor.from_diagram(d)
    if side == LEFT:
        in1, out1, in2, out2 = W, E, N, S
    else:
        in1, out1, in2, out2 = N, S, W, E
    first, second = ("oi", "oo"), ("ui", "uo")
    if not site.over:
        first, second = second, first
    roles = [None] * 4
    roles[in1], roles[out1] = first
    roles[in2], roles[out2] = second
    c = ed.add_node("x", roles)
    free = ed.segs[sid][0] is None
    pieces = ed.subdivide(sid, [(c, in1, out1), (c, in2, out2)])
    loop = pieces[0] if free else pieces[1]
    ed.tags[loop] = {"loop"}
    out, ref = ed.to_diagram(d.ambient, with_map=True)
    return out, ("R1-", Site(ref[loop], side))


def _r1_minus(d, site):
    sid = _seg(d, site.segment)
    s = _r1_minus_ok(d, (sid, norm_side(site.side)))
    if s is None:
        raise MoveError(f"R1- needs a one-sided face at {site}")
    side = norm_side(site.side)
    ed = Editor.from_diagram(d)
    c = s.start[0]
    out1, in2 = s.start[1], s.end[1]
    in1, out2 = (out1 + 2) % 4, (in2 + 2) % 4
    over_first = ed.roles[c][out1] == "oo"
    ed.tags[ed.end_of[(c, in1)]] = {"keep"}
    ed.bypass(c, in1, out1)
    ed.bypass(c, in2, out2)
    ed.remove_node(c)
    (keep,) = ed.tagged("keep")
    out, ref = ed.to_diagram(d.ambient, with_map=True)
    return out, ("R1+", Site(ref[keep], side, over=over_first))


def _r2_plus(d, site):
    s1 = _seg(d, site.segment)
    s2 = _seg(d, site.other)
    side1, side2 = norm_side(site.side), norm_side(site.other_side)
    if s1 == s2:
        raise MoveError("R2+ needs two different segments")
    if d.region_of(s1, side1) != d.region_of(s2, side2):
        raise MoveError(f"R2+ sides {site} do not share a region")
    if site.over not in (1, 2):
        raise MoveError("R2+ needs over=1 or over=2")
    ed = Editor.from_diagram(d)
    cw = ed.add_node("x")
    ce = ed.add_node("x")
    east1 = side1 == RIGHT
    east2 = side2 == LEFT
    p1 = [(cw, N, S), (ce, S, N)] if east1 else [(ce, N, S), (cw, S, N)]
    p2 = [(cw, W, E), (ce, W, E)] if east2 else [(ce, E, W), (cw, E, W)]
    top, bottom = (p1, p2) if site.over == 1 else (p2, p1)
    for node, i, o in top:
        ed.roles[node][i], ed.roles[node][o] = "oi", "oo"
    for node, i, o in bottom:
        ed.roles[node][i], ed.roles[node][o] = "ui", "uo"
    free1 = ed.segs[s1][0] is None
    pieces = ed.subdivide(s1, p1)
    mid = pieces[0] if free1 else pieces[1]
    ed.subdivide(s2, p2)
    out, ref = ed.to_diagram(d.ambient, with_map=True)
    return out, ("R2-", Site(ref[mid], flip(side1)))


def _r2_minus(d, site):
    sid = _seg(d, site.segment)
    sides = _r2_minus_ok(d, (sid, norm_side(site.side)))
    if sides is None:
        raise MoveError(f"R2- needs a bigon between an over and an under strand at {site}")
    (a, sa), (b, sb) = sides
    a_over = _over_role(d, d.segments[a].start)
    ed = Editor.from_diagram(d)
    ed.tags[a] = {"A"}
    ed.tags[b] = {"B"}
    nodes = sorted({d.segments[a].start[0], d.segments[a].end[0]})
    for c in nodes:
        for p in range(4):
            if ed.roles[c][p] in ("ui", "oi"):
                ed.bypass(c, p, (p + 2) % 4)
    for c in nodes:
        ed.remove_node(c)
    (ka,) = ed.tagged("A")
    (kb,) = ed.tagged("B")
    out, ref = ed.to_diagram(d.ambient, with_map=True)
    if ka == kb:
        return out, None
    sa_, sb_ = flip(sa), flip(sb)
    ra, rb = ref[ka], ref[kb]
    if out.region_of(out.segment_index(*ra), sa_) != out.region_of(out.segment_index(*rb), sb_):
        # the strands landed in separate projection pieces whose relative placement is not recorded
        return out, None
    over = 1 if a_over else 2
    if ra > rb:
        ra, rb, sa_, sb_ = rb, ra, sb_, sa_
        over = 3 - over
    return out, ("R2+", Site(ra, sa_, rb, sb_, over))


def _r3(d, site):
    sid = _seg(d, site.segment)
    sides = _r3_ok(d, (sid, norm_side(site.side)))
    if sides is None:
        raise MoveError(f"R3 needs a triangle of three strands with a consistent over-order at {site}")
    ed = Editor.from_diagram(d)
    tri = [t for t, _ in sides]
    changes = {}

    def put(seg, start=None, end=None):
        cur = changes.get(seg, tuple(ed.segs[seg][:2]))
        changes[seg] = (start if start is not None else cur[0], end if end is not None else cur[1])

    plan = []
    for t in tri:
        start, end = ed.segs[t][:2]
        plan.append((t, start, end, ed.end_of[opposite(start)], ed.start_of[opposite(end)]))
    for t, start, end, u, w in plan:
        put(u, end=end)
        put(w, start=start)
    for t, start, end, u, w in plan:
        changes[t] = (opposite(end), opposite(start))
    ed.rewire(changes)
    out, ref = ed.to_diagram(d.ambient, with_map=True)
    t0 = out.segment_index(*ref[tri[0]])
    new = {out.segment_index(*ref[t]) for t in tri}
    for sd in (flip(sides[0][1]), sides[0][1]):
        face = out.face_sides(out.face_of(t0, sd))
        if {s for s, _ in face} == new and len(face) == 3:
            seg, side = min(face)
            return out, ("R3", Site(out.segment_ref(seg), side))
    raise MoveError("R3 rewrite lost its triangle")


_APPLY = {"R1+": _r1_plus, "R1-": _r1_minus, "R2+": _r2_plus, "R2-": _r2_minus, "R3": _r3}


def apply_move_with_inverse(d, move, site):
    """Rewrite ``d``; also return ``(move, site)`` undoing it, or None when not expressible."""
    return _APPLY[norm_move(move)](d, site)


def apply_move(d, move, site):
    return apply_move_with_inverse(d, move, site)[0]
