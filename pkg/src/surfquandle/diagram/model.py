"""Oriented diagrams of spatial trivalent graphs as combinatorial maps.

A diagram is given by its arcs (maximal strands running over crossings and
ending at under-crossings or trivalent vertices) together with the
counterclockwise cyclic order of the four half-edges at each crossing and the
three half-edges at each vertex.  Half-edge tokens name an arc and how it
meets the node:

``a.h`` / ``a.t``
    head / tail end of arc ``a`` (under-in / under-out at a crossing, or an
    end at a vertex),
``a.i`` / ``a.o``
    arc ``a`` passing over the crossing: the incoming and outgoing halves.

An arc that passes over crossings lists them in travel order (``via``).
Everything else (segments of the projection, regions, signs, genus) is
derived and validated on construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

from ..errors import ParseError, StructureError

LEFT, RIGHT = "L", "R"
_KINDS = ("h", "t", "i", "o")


class DiagramError(StructureError):
    pass


def norm_side(side):
    s = str(side).upper()
    if s in ("L", "LEFT"):
        return LEFT
    if s in ("R", "RIGHT"):
        return RIGHT
    raise ValueError(f"side must be left or right, got {side!r}")


def flip(side):
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True, order=True)
class End:
    arc: int
    kind: str

    def __str__(self):
        return f"{self.arc}.{self.kind}"

    @classmethod
    def parse(cls, text):
        a, _, k = text.partition(".")
        if k not in _KINDS:
            raise ValueError(f"bad arc-end token {text!r}")
        return cls(int(a), k)


@dataclass(frozen=True)
class Arc:
    id: int
    closed: bool = False
    via: tuple = ()


@dataclass(frozen=True)
class Crossing:
    id: int
    over: int
    under_in: int
    under_out: int
    rot: tuple

    def position(self, kind):
        for p, e in enumerate(self.rot):
            if e.kind == kind:
                return p
        raise KeyError(kind)

    @property
    def sign(self):
        """+1 when the outgoing under half follows the outgoing over half counterclockwise."""
        return 1 if self.position("t") == (self.position("o") + 1) % 4 else -1


@dataclass(frozen=True)
class Vertex:
    id: int
    ends: tuple

    @property
    def eps(self):
        return tuple(1 if e.kind == "h" else -1 for e in self.ends)


@dataclass(frozen=True)
class Segment:
    """One edge of the projection graph: part of ``arc`` between two nodes.

    ``start``/``end`` are slots ``((kind, node_id), position)``; both are None for
    a crossing-free circle.
    """

    index: int
    arc: int
    position: int
    start: tuple
    end: tuple


@dataclass(frozen=True)
class Region:
    id: int
    boundary: tuple  # ((segment index, side), ...) in traversal order
    outer: bool = False


@dataclass(frozen=True)
class Component:
    arcs: tuple
    crossings: tuple
    vertices: tuple
    genus: int


@dataclass(frozen=True)
class ComponentStructure:
    components: tuple

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    @property
    def genera(self):
        return tuple(c.genus for c in self.components)


class _DSU:
    def __init__(self, items=()):
        self.p = {i: i for i in items}

    def find(self, a):
        p = self.p
        p.setdefault(a, a)
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra

    def groups(self):
        out = {}
        for a in list(self.p):
            out.setdefault(self.find(a), []).append(a)
        return out


@dataclass(frozen=True, eq=True)
class Diagram:
    arcs: dict
    crossings: dict = field(default_factory=dict)
    vertices: dict = field(default_factory=dict)
    ambient: str = "sphere"
    _m: SimpleNamespace = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        def index(items, kind):
            if isinstance(items, dict):
                items = list(items.values())
            out = {}
            for it in items:
                if it.id in out:
                    raise DiagramError(f"duplicate {kind} id {it.id}")
                out[it.id] = it
            return dict(sorted(out.items()))

        object.__setattr__(self, "arcs", index(self.arcs, "arc"))
        xs = index(self.crossings, "crossing")
        for cid, c in xs.items():
            kinds = [e.kind for e in c.rot]
            if "h" in kinds and kinds[0] != "h":
                p = kinds.index("h")
                xs[cid] = Crossing(c.id, c.over, c.under_in, c.under_out, tuple(c.rot[p:] + c.rot[:p]))
        object.__setattr__(self, "crossings", xs)
        object.__setattr__(self, "vertices", index(self.vertices, "vertex"))
        if self.ambient not in ("sphere", "plane"):
            raise DiagramError(f"ambient must be sphere or plane, got {self.ambient!r}")
        object.__setattr__(self, "_m", _build(self))

    # -- derived structure -------------------------------------------------

    @property
    def segments(self):
        return self._m.segments

    @property
    def regions(self):
        return self._m.regions

    @property
    def outer_region(self):
        """Id of the unbounded region in the plane model; None on the sphere."""
        return 0 if self.ambient == "plane" else None

    def region_of(self, seg, side):
        return self._m.side_region[(seg, norm_side(side))]

    def face_of(self, seg, side):
        """Face id (before merging the outer faces of separate projection components)."""
        return self._m.side_face[(seg, norm_side(side))]

    def face_sides(self, face):
        return self._m.faces[face]

    @property
    def faces(self):
        return self._m.faces

    def segment_ref(self, index):
        s = self._m.segments[index]
        return (s.arc, s.position)

    def segment_index(self, arc, position=0):
        try:
            return self._m.seg_by_ref[(arc, position)]
        except KeyError:
            raise DiagramError(f"arc {arc} has no segment {position}") from None

    def arc_segments(self, arc):
        return self._m.arc_segs[arc]

    def slot_segment(self, slot):
        """``(segment index, 'start' | 'end')`` attached at a slot."""
        m = self._m
        if slot in m.start_of:
            return m.start_of[slot], "start"
        return m.end_of[slot], "end"

    def corner_region(self, node, pos):
        """Region containing the corner between slot ``pos`` and the next slot counterclockwise."""
        seg, which = self.slot_segment((node, pos))
        return self._m.side_region[(seg, RIGHT if which == "end" else LEFT)]

    def corner_face(self, node, pos):
        seg, which = self.slot_segment((node, pos))
        return self._m.side_face[(seg, RIGHT if which == "end" else LEFT)]

    def node_degree(self, node):
        return 4 if node[0] == "x" else 3

    @property
    def projection_components(self):
        return self._m.proj_components

    def sign(self, cid):
        return self.crossings[cid].sign

    def components(self):
        return self._m.components

    @property
    def is_connected(self):
        return len(self._m.components) == 1

    def arc_component(self, arc):
        return self._m.arc_comp[arc]

    @property
    def euler(self):
        """``[(V, E, F), ...]`` per projection component; each satisfies V - E + F = 2."""
        return self._m.euler

    def with_ambient(self, ambient):
        return Diagram(self.arcs, self.crossings, self.vertices, ambient)

    def __str__(self):
        return serialize_diagram(self)


def _slot_key(slot):
    (kind, nid), pos = slot
    return (0 if kind == "x" else 1, nid, pos)


def _build(d):
    arcs, xs, vs = d.arcs, d.crossings, d.vertices
    endpoints = {}
    over_pos = {}
    for c in xs.values():
        key = ("x", c.id)
        if len(c.rot) != 4:
            raise DiagramError(f"crossing {c.id}: rotation needs 4 arc-ends, got {len(c.rot)}")
        for a in (c.over, c.under_in, c.under_out):
            if a not in arcs:
                raise DiagramError(f"crossing {c.id} refers to unknown arc {a}")
        expected = {End(c.under_in, "h"), End(c.under_out, "t"), End(c.over, "i"), End(c.over, "o")}
        if set(c.rot) != expected or len(set(c.rot)) != 4:
            raise DiagramError(
                f"crossing {c.id}: rotation {' '.join(map(str, c.rot))} does not match "
                f"over={c.over} under_in={c.under_in} under_out={c.under_out}"
            )
        p = {e.kind: i for i, e in enumerate(c.rot)}
        if (p["h"] - p["t"]) % 4 != 2 or (p["i"] - p["o"]) % 4 != 2:
            raise DiagramError(f"crossing {c.id}: strands must pass straight through (opposite slots)")
        over_pos[c.id] = (p["i"], p["o"])
        for e in c.rot:
            if e.kind in "ht":
                if e in endpoints:
                    raise DiagramError(f"arc-end {e} attached twice")
                endpoints[e] = (key, p[e.kind])
    for v in vs.values():
        key = ("v", v.id)
        if len(v.ends) != 3:
            raise DiagramError(f"vertex {v.id}: needs 3 arc-ends, got {len(v.ends)}")
        for pos, e in enumerate(v.ends):
            if e.kind not in "ht":
                raise DiagramError(f"vertex {v.id}: token {e} must be a head or tail end")
            if e.arc not in arcs:
                raise DiagramError(f"vertex {v.id} refers to unknown arc {e.arc}")
            if e in endpoints:
                raise DiagramError(f"arc-end {e} attached twice")
            endpoints[e] = (key, pos)

    via_seen = {}
    for a in arcs.values():
        ends = [End(a.id, k) in endpoints for k in "ht"]
        if a.closed and any(ends):
            raise DiagramError(f"closed arc {a.id} has an attached end")
        if not a.closed and not all(ends):
            missing = [k for k, ok in zip("ht", ends) if not ok]
            raise DiagramError(f"arc {a.id}: dangling end(s) {', '.join(f'{a.id}.{k}' for k in missing)}")
        for c in a.via:
            if c not in xs:
                raise DiagramError(f"arc {a.id} passes over unknown crossing {c}")
            if xs[c].over != a.id:
                raise DiagramError(f"arc {a.id} lists crossing {c} whose over-arc is {xs[c].over}")
            if c in via_seen:
                raise DiagramError(f"crossing {c} listed twice in over-passes")
            via_seen[c] = a.id
    for c in xs:
        if c not in via_seen:
            raise DiagramError(f"crossing {c} missing from the over-passes of arc {xs[c].over}")

    segs = []
    arc_segs = {}
    for a in arcs.values():
        idx = []
        if a.closed and not a.via:
            pts = [(None, None)]
        elif a.closed:
            k = len(a.via)
            pts = []
            for i in range(k):
                c0, c1 = a.via[i], a.via[(i + 1) % k]
                pts.append(((("x", c0), over_pos[c0][1]), (("x", c1), over_pos[c1][0])))
        else:
            chain = [endpoints[End(a.id, "t")]]
            for c in a.via:
                chain.append((("x", c), over_pos[c][0]))
                chain.append((("x", c), over_pos[c][1]))
            chain.append(endpoints[End(a.id, "h")])
            pts = [(chain[2 * i], chain[2 * i + 1]) for i in range(len(chain) // 2)]
        for i, (s, e) in enumerate(pts):
            idx.append(len(segs))
            segs.append(Segment(len(segs), a.id, i, s, e))
        arc_segs[a.id] = tuple(idx)

    start_of, end_of = {}, {}
    for s in segs:
        if s.start is not None:
            start_of[s.start] = s.index
            end_of[s.end] = s.index

    def sigma(slot):
        node, pos = slot
        return (node, (pos + 1) % (4 if node[0] == "x" else 3))

    def nxt(sd):
        s, side = sd
        seg = segs[s]
        if seg.start is None:
            return sd
        e = sigma(seg.end if side == RIGHT else seg.start)
        if e in start_of:
            return (start_of[e], RIGHT)
        return (end_of[e], LEFT)

    faces = []
    side_face = {}
    for s in segs:
        for side in (RIGHT, LEFT):
            if (s.index, side) in side_face:
                continue
            cyc = []
            cur = (s.index, side)
            while cur not in side_face:
                side_face[cur] = len(faces)
                cyc.append(cur)
                cur = nxt(cur)
            if cur != cyc[0]:
                raise DiagramError("rotation system is inconsistent (face walk does not close)")
            faces.append(tuple(cyc))

    dsu = _DSU()
    for s in segs:
        if s.start is None:
            dsu.find(("loop", s.index))
        else:
            dsu.union(s.start[0], s.end[0])
    seg_comp = {}
    for s in segs:
        seg_comp[s.index] = dsu.find(("loop", s.index) if s.start is None else s.start[0])
    comp_keys = sorted(set(seg_comp.values()), key=lambda k: min(i for i, c in seg_comp.items() if c == k))

    def side_order(sd):
        return 2 * sd[0] + (0 if sd[1] == RIGHT else 1)

    euler = []
    outer_faces = set()
    proj_components = []
    for k in comp_keys:
        csegs = [i for i, c in seg_comp.items() if c == k]
        nodes = {segs[i].start[0] for i in csegs if segs[i].start is not None}
        nodes |= {segs[i].end[0] for i in csegs if segs[i].end is not None}
        cfaces = sorted({side_face[(i, sd)] for i in csegs for sd in (LEFT, RIGHT)})
        if segs[csegs[0]].start is None:
            V, E, F = 1, 1, 2
        else:
            V, E, F = len(nodes), len(csegs), len(cfaces)
        if V - E + F != 2:
            raise DiagramError(
                f"non-planar rotation system: V - E + F = {V} - {E} + {F} = {V - E + F} (expected 2)"
            )
        euler.append((V, E, F))
        outer = max(cfaces, key=lambda f: (len(faces[f]), -min(side_order(sd) for sd in faces[f])))
        outer_faces.add(outer)
        proj_components.append(SimpleNamespace(segments=tuple(sorted(csegs)), nodes=tuple(sorted(nodes)),
                                               faces=tuple(cfaces), outer_face=outer))

    others = sorted((f for f in range(len(faces)) if f not in outer_faces),
                    key=lambda f: min(side_order(sd) for sd in faces[f]))
    face_region = {f: 0 for f in outer_faces}
    for i, f in enumerate(others, 1):
        face_region[f] = i
    outer_boundary = tuple(sd for f in sorted(outer_faces) for sd in faces[f])
    regions = [Region(0, outer_boundary, True)]
    regions += [Region(i, faces[f]) for i, f in enumerate(others, 1)]
    side_region = {sd: face_region[f] for sd, f in side_face.items()}

    # spatial components and genus
    arc_dsu = _DSU(arcs)
    edge_dsu = _DSU(arcs)
    for c in xs.values():
        arc_dsu.union(c.under_in, c.under_out)
        edge_dsu.union(c.under_in, c.under_out)
    for v in vs.values():
        a0 = v.ends[0].arc
        for e in v.ends[1:]:
            arc_dsu.union(a0, e.arc)
    groups = sorted(arc_dsu.groups().values(), key=min)
    components = []
    arc_comp = {}
    for ci, g in enumerate(groups):
        g = tuple(sorted(g))
        gs = set(g)
        for a in g:
            arc_comp[a] = ci
        cx = tuple(c.id for c in xs.values() if c.under_in in gs)
        cv = tuple(v.id for v in vs.values() if v.ends[0].arc in gs)
        if cv:
            n_edges = len({edge_dsu.find(a) for a in g})
            genus = n_edges - len(cv) + 1
        else:
            genus = 1
        components.append(Component(g, cx, cv, genus))

    return SimpleNamespace(
        segments=tuple(segs),
        arc_segs=arc_segs,
        seg_by_ref={(s.arc, s.position): s.index for s in segs},
        start_of=start_of,
        end_of=end_of,
        faces=tuple(faces),
        side_face=side_face,
        side_region=side_region,
        regions=tuple(regions),
        euler=tuple(euler),
        proj_components=tuple(proj_components),
        components=ComponentStructure(tuple(components)),
        arc_comp=arc_comp,
    )


# ---------------------------------------------------------------- operations

def compute_regions(d):
    return d.regions


def split_components(d):
    return d.components()


def genus(d, component=None):
    """Genus of a spatial component (first Betti number of its underlying graph)."""
    comps = d.components()
    if component is None:
        if len(comps) != 1:
            raise DiagramError(f"diagram has {len(comps)} components; select one")
        return comps[0].genus
    if not 0 <= component < len(comps):
        raise DiagramError(f"no component {component}")
    return comps[component].genus


def restrict(d, component):
    """Sub-diagram of a single spatial component.

    Crossings where another component passes over it disappear, and the
    under-arcs they separated are merged.
    """
    from .edit import Editor

    comp = d.components()[component]
    return Editor.from_diagram(d).keep_component(set(comp.arcs)).to_diagram(d.ambient)


# ---------------------------------------------------------------- text format

def serialize_diagram(d):
    out = [f"diagram {len(d.arcs)}" + (" ambient=plane" if d.ambient == "plane" else "")]
    for comp in d.components():
        for a in comp.arcs:
            arc = d.arcs[a]
            line = f"arc {a}"
            if arc.closed:
                line += " closed"
            if arc.via:
                line += " via=" + ",".join(map(str, arc.via))
            out.append(line)
        for cid in comp.crossings:
            c = d.crossings[cid]
            rot = c.rot
            sign = "+1" if c.sign > 0 else "-1"
            out.append(
                f"x {c.id} over={c.over} under_in={c.under_in} under_out={c.under_out} "
                f"rot={','.join(map(str, rot))} sign={sign}"
            )
        for vid in comp.vertices:
            v = d.vertices[vid]
            out.append(f"v {v.id} ends={','.join(map(str, v.ends))}")
    return "\n".join(out) + "\n"


def _kv(toks, lineno, allowed):
    out = {}
    flags = set()
    for col, t in toks:
        if "=" in t:
            k, _, v = t.partition("=")
            if k not in allowed:
                raise ParseError(f"unknown field {k!r}", lineno, col)
            if k in out:
                raise ParseError(f"duplicate field {k!r}", lineno, col)
            out[k] = (v, col)
        else:
            flags.add((t, col))
    return out, flags


def _int(v, lineno, col, what):
    try:
        return int(v)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {v!r}", lineno, col) from None


def _ends(v, lineno, col):
    try:
        return tuple(End.parse(t) for t in v.split(","))
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None


def parse_diagram(text, ambient=None):
    """Parse the diagram text format; structural problems raise :class:`DiagramError`."""
    from ..algebra import _lines

    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty diagram file", 1, 1)
    lineno, toks = rows[0]
    if toks[0][1] != "diagram" or len(toks) < 2:
        raise ParseError("expected header 'diagram <#arcs>'", lineno, toks[0][0])
    n_arcs = _int(toks[1][1], lineno, toks[1][0], "arc count")
    amb = "sphere"
    for col, t in toks[2:]:
        if t in ("ambient=plane", "ambient=sphere"):
            amb = t.split("=")[1]
        else:
            raise ParseError(f"unexpected header token {t!r}", lineno, col)
    arcs, xs, vs = [], [], []
    for lineno, toks in rows[1:]:
        word = toks[0][1]
        if word == "arc":
            if len(toks) < 2:
                raise ParseError("arc line needs an id", lineno, toks[0][0])
            aid = _int(toks[1][1], lineno, toks[1][0], "arc id")
            kv, flags = _kv(toks[2:], lineno, {"via"})
            closed = False
            for f, col in flags:
                if f != "closed":
                    raise ParseError(f"unexpected token {f!r}", lineno, col)
                closed = True
            via = ()
            if "via" in kv:
                v, col = kv["via"]
                via = tuple(_int(c, lineno, col, "crossing id") for c in v.split(",") if c)
            arcs.append(Arc(aid, closed, via))
        elif word == "x":
            if len(toks) < 2:
                raise ParseError("crossing line needs an id", lineno, toks[0][0])
            cid = _int(toks[1][1], lineno, toks[1][0], "crossing id")
            kv, flags = _kv(toks[2:], lineno, {"over", "under_in", "under_out", "rot", "sign"})
            if flags:
                f, col = sorted(flags)[0]
                raise ParseError(f"unexpected token {f!r}", lineno, col)
            for k in ("over", "under_in", "under_out", "rot"):
                if k not in kv:
                    raise ParseError(f"crossing {cid} is missing {k}=", lineno, toks[0][0])
            over = _int(kv["over"][0], lineno, kv["over"][1], "over")
            uin = _int(kv["under_in"][0], lineno, kv["under_in"][1], "under_in")
            uout = _int(kv["under_out"][0], lineno, kv["under_out"][1], "under_out")
            rot = _ends(kv["rot"][0], lineno, kv["rot"][1])
            c = Crossing(cid, over, uin, uout, rot)
            if "sign" in kv:
                sv, col = kv["sign"]
                if sv not in ("+1", "-1", "1"):
                    raise ParseError(f"sign must be +1 or -1, got {sv!r}", lineno, col)
                stored = -1 if sv == "-1" else 1
                try:
                    actual = c.sign
                except KeyError:
                    actual = None
                if actual is not None and stored != actual:
                    raise DiagramError(f"crossing {cid}: stored sign {sv} disagrees with rotation ({actual:+d})")
            xs.append(c)
        elif word == "v":
            if len(toks) < 2:
                raise ParseError("vertex line needs an id", lineno, toks[0][0])
            vid = _int(toks[1][1], lineno, toks[1][0], "vertex id")
            kv, flags = _kv(toks[2:], lineno, {"ends"})
            if flags or "ends" not in kv:
                raise ParseError(f"vertex {vid} needs ends=<3 arc-ends>", lineno, toks[0][0])
            vs.append(Vertex(vid, _ends(kv["ends"][0], lineno, kv["ends"][1])))
        else:
            raise ParseError(f"unknown line type {word!r}", lineno, toks[0][0])
    if len(arcs) != n_arcs:
        raise ParseError(f"header declares {n_arcs} arcs but {len(arcs)} are listed", rows[0][0], 1)
    return Diagram(arcs, xs, vs, ambient or amb)
