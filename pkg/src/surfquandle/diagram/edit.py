"""Mutable half-edge editor used to build and rewrite diagrams.

Nodes are ``("x", id)`` crossings with a role per slot (``ui``, ``uo``, ``oi``,
``oo``) or ``("v", id)`` vertices.  Segments carry a sort key; after editing,
:meth:`Editor.to_diagram` chains segments through over-passes into arcs and
labels each arc by the first component of its leading segment's key when
that label is still free.
"""
from __future__ import annotations

from .model import Arc, Crossing, Diagram, DiagramError, End, Vertex

_ROLE = {"h": "ui", "t": "uo", "i": "oi", "o": "oo"}


def degree(node):
    return 4 if node[0] == "x" else 3


def opposite(slot):
    node, pos = slot
    return (node, (pos + 2) % 4)


class Editor:
    def __init__(self):
        self.roles = {}  # node -> list of roles (None at vertices)
        self.segs = {}  # sid -> [start, end, key]
        self.start_of = {}
        self.end_of = {}
        self._next_sid = 0
        self.tags = {}  # sid -> set of markers, merged by bypass

    # -- construction ------------------------------------------------------

    @classmethod
    def from_diagram(cls, d):
        ed = cls()
        for c in d.crossings.values():
            ed.roles[("x", c.id)] = [_ROLE[e.kind] for e in c.rot]
        for v in d.vertices.values():
            ed.roles[("v", v.id)] = [None, None, None]
        for s in d.segments:
            ed.add_segment(s.start, s.end, (s.arc, s.position), sid=s.index)
        return ed

    def add_node(self, kind, roles=None, nid=None):
        if nid is None:
            nid = max((n[1] for n in self.roles if n[0] == kind), default=-1) + 1
        node = (kind, nid)
        if node in self.roles:
            raise DiagramError(f"node {node} exists")
        self.roles[node] = list(roles) if roles is not None else [None] * (4 if kind == "x" else 3)
        return node

    def add_segment(self, start, end, key, sid=None):
        if sid is None:
            sid = self._next_sid
        self._next_sid = max(self._next_sid, sid + 1)
        self.segs[sid] = [start, end, tuple(key)]
        if start is not None:
            self.start_of[start] = sid
            self.end_of[end] = sid
        return sid

    def remove_segment(self, sid):
        start, end, _ = self.segs.pop(sid)
        if start is not None:
            if self.start_of.get(start) == sid:
                del self.start_of[start]
            if self.end_of.get(end) == sid:
                del self.end_of[end]

    def set_ends(self, sid, start, end):
        old_s, old_e, key = self.segs[sid]
        if old_s is not None:
            if self.start_of.get(old_s) == sid:
                del self.start_of[old_s]
            if self.end_of.get(old_e) == sid:
                del self.end_of[old_e]
        self.segs[sid] = [start, end, key]
        if start is not None:
            self.start_of[start] = sid
            self.end_of[end] = sid

    # -- local rewrites ----------------------------------------------------

    def subdivide(self, sid, points):
        """Insert ``(node, in_pos, out_pos)`` points along a segment, in travel order.

        Returns the new segment ids in travel order.  On a crossing-free circle
        the pieces run from each point to the next, cyclically.
        """
        start, end, key = self.segs[sid]
        self.remove_segment(sid)
        out = []
        if start is None:
            k = len(points)
            for j in range(k):
                node, _, o = points[j]
                nxt, i, _ = points[(j + 1) % k]
                out.append(self.add_segment((node, o), (nxt, i), key + (j,)))
            return out
        prev = start
        for j, (node, i, o) in enumerate(points):
            out.append(self.add_segment(prev, (node, i), key + (j,)))
            prev = (node, o)
        out.append(self.add_segment(prev, end, key + (len(points),)))
        return out

    def bypass(self, node, in_pos, out_pos):
        """Join the segment entering ``in_pos`` to the one leaving ``out_pos``."""
        a = self.end_of[(node, in_pos)]
        b = self.start_of[(node, out_pos)]
        if a == b:
            self.set_ends(a, None, None)
            return a
        a_start = self.segs[a][0]
        b_end = self.segs[b][1]
        key = min(self.segs[a][2], self.segs[b][2])
        tags = self.tags.pop(a, set()) | self.tags.pop(b, set())
        self.remove_segment(a)
        self.remove_segment(b)
        sid = self.add_segment(a_start, b_end, key, sid=a)
        if tags:
            self.tags[sid] = tags
        return sid

    def rewire(self, changes):
        """Move several segment ends at once: ``{sid: (start, end)}``."""
        for sid in changes:
            start, end, _ = self.segs[sid]
            if self.start_of.get(start) == sid:
                del self.start_of[start]
            if self.end_of.get(end) == sid:
                del self.end_of[end]
        for sid, (start, end) in changes.items():
            self.segs[sid][0], self.segs[sid][1] = start, end
            self.start_of[start] = sid
            self.end_of[end] = sid

    def tagged(self, tag):
        return [sid for sid, t in self.tags.items() if tag in t]

    def remove_node(self, node):
        for p in range(degree(node)):
            if (node, p) in self.start_of or (node, p) in self.end_of:
                raise DiagramError(f"node {node} still has attached segments")
        del self.roles[node]

    def strand_through(self, node, pos):
        """``(in_pos, out_pos)`` of the strand using slot ``pos`` at a crossing."""
        role = self.roles[node][pos]
        if role in ("ui", "oi"):
            return pos, (pos + 2) % 4
        return (pos + 2) % 4, pos

    def keep_component(self, arcs_kept):
        """Drop every segment whose arc is not in ``arcs_kept`` (keys carry arc ids)."""
        drop = {sid for sid, (_, _, key) in self.segs.items() if key[0] not in arcs_kept}
        for node in [n for n in self.roles if n[0] == "x"]:
            slots = [(node, p) for p in range(4)]
            owners = [self.start_of.get(s, self.end_of.get(s)) for s in slots]
            dead = [o in drop for o in owners]
            if all(dead):
                continue
            if any(dead):
                for p in range(4):
                    if not dead[p] and self.roles[node][p] in ("ui", "oi"):
                        self.bypass(node, p, (p + 2) % 4)
                        break
        for sid in drop:
            if sid in self.segs:
                self.remove_segment(sid)
        for node in list(self.roles):
            if not any((node, p) in self.start_of or (node, p) in self.end_of for p in range(degree(node))):
                del self.roles[node]
        return self

    # -- output ------------------------------------------------------------

    def chains(self):
        """Arcs as ``(closed, [sid, ...])`` in travel order."""
        seen = set()
        out = []

        def follow(sid):
            chain = [sid]
            seen.add(sid)
            while True:
                end = self.segs[sid][1]
                if end is None or self.roles[end[0]][end[1]] != "oi":
                    return chain, False
                nxt = self.start_of[opposite(end)]
                if nxt in seen:
                    return chain, True
                chain.append(nxt)
                seen.add(nxt)
                sid = nxt

        for sid, (start, _, _) in self.segs.items():
            if start is None:
                seen.add(sid)
                out.append((True, [sid]))
            elif self.roles[start[0]][start[1]] != "oo":
                out.append((False, follow(sid)[0]))
        for sid in self.segs:
            if sid not in seen:
                chain, closed = follow(sid)
                if not closed:
                    raise DiagramError("over-pass chain does not close")
                k = min(range(len(chain)), key=lambda i: self.segs[chain[i]][2])
                out.append((True, chain[k:] + chain[:k]))
        return out

    def to_diagram(self, ambient="sphere", relabel=False, with_map=False):
        chains = sorted(self.chains(), key=lambda c: self.segs[c[1][0]][2])
        labels = [None] * len(chains)
        if relabel:
            labels = list(range(len(chains)))
        else:
            taken = set()
            for i, (_, ch) in enumerate(chains):
                lab = self.segs[ch[0]][2][0]
                if isinstance(lab, int) and lab not in taken and lab >= 0:
                    labels[i] = lab
                    taken.add(lab)
            fresh = max(taken, default=-1) + 1
            for i in range(len(labels)):
                if labels[i] is None:
                    labels[i] = fresh
                    fresh += 1
        seg_arc = {}
        seg_ref = {}
        arcs = []
        for lab, (closed, ch) in zip(labels, chains):
            via = []
            for pos, sid in enumerate(ch):
                seg_arc[sid] = lab
                seg_ref[sid] = (lab, pos)
                end = self.segs[sid][1]
                if end is not None and self.roles[end[0]][end[1]] == "oi":
                    via.append(end[0][1])
            if closed and via:
                # a closed arc's segment 0 leaves its first listed over-pass
                first = self.segs[ch[0]][0]
                via = [first[0][1]] + via[:-1]
            arcs.append(Arc(lab, closed, tuple(via)))
        xs, vs = [], []
        for node, roles in self.roles.items():
            if node[0] == "x":
                rot = []
                for p, role in enumerate(roles):
                    slot = (node, p)
                    if role == "ui":
                        rot.append(End(seg_arc[self.end_of[slot]], "h"))
                    elif role == "uo":
                        rot.append(End(seg_arc[self.start_of[slot]], "t"))
                    elif role == "oi":
                        rot.append(End(seg_arc[self.end_of[slot]], "i"))
                    else:
                        rot.append(End(seg_arc[self.start_of[slot]], "o"))
                over = seg_arc[self.end_of[(node, roles.index("oi"))]]
                uin = seg_arc[self.end_of[(node, roles.index("ui"))]]
                uout = seg_arc[self.start_of[(node, roles.index("uo"))]]
                xs.append(Crossing(node[1], over, uin, uout, tuple(rot)))
            else:
                ends = []
                for p in range(3):
                    slot = (node, p)
                    if slot in self.end_of:
                        ends.append(End(seg_arc[self.end_of[slot]], "h"))
                    else:
                        ends.append(End(seg_arc[self.start_of[slot]], "t"))
                vs.append(Vertex(node[1], tuple(ends)))
        d = Diagram(arcs, xs, vs, ambient)
        if with_map:
            return d, seg_ref
        return d
