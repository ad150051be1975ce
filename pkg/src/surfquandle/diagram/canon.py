"""Canonical labelling of diagrams as oriented combinatorial maps."""
from __future__ import annotations

from .edit import Editor, degree


def _role(d, slot):
    node, pos = slot
    if node[0] == "x":
        return d.crossings[node[1]].rot[pos].kind
    return "h" if d.slot_segment(slot)[1] == "end" else "t"


def _walk(d, node0, pos0):
    num = {node0: 0}
    off = {node0: pos0}
    order = [node0]
    code = []
    segs = []
    seen = set()
    i = 0
    while i < len(order):
        n = order[i]
        i += 1
        deg = degree(n)
        code.append(("N", deg))
        for k in range(deg):
            slot = (n, (off[n] + k) % deg)
            sid, which = d.slot_segment(slot)
            s = d.segments[sid]
            other = s.end if which == "start" else s.start
            m = other[0]
            if m not in num:
                num[m] = len(order)
                off[m] = other[1]
                order.append(m)
            code.append((_role(d, slot), num[m], (other[1] - off[m]) % degree(m)))
            if sid not in seen:
                seen.add(sid)
                segs.append(sid)
    return tuple(code), order, off, segs


def _components(d):
    """Per projection component: ``(code, node order, offsets, segment order)``."""
    out = []
    for comp in d.projection_components:
        if not comp.nodes:
            out.append(((("loop",),), [], {}, list(comp.segments)))
            continue
        best = None
        for n in comp.nodes:
            for p in range(degree(n)):
                w = _walk(d, n, p)
                if best is None or w[0] < best[0]:
                    best = w
        out.append(best)
    out.sort(key=lambda w: w[0])
    return out


def canonical_code(d):
    return (d.ambient, tuple(w[0] for w in _components(d)))


def isomorphic(d1, d2):
    """Equal as oriented maps with crossing data, up to relabelling."""
    return canonical_code(d1) == canonical_code(d2)


def canonicalize(d, with_map=False):
    """Relabel arcs, crossings and vertices in canonical traversal order.

    With ``with_map`` also return ``{old segment ref: new segment ref}``.
    """
    ed = Editor()
    ids = {"x": 0, "v": 0}
    rename = {}
    key = 0
    old = Editor.from_diagram(d)
    seg_key = {}
    for code, order, off, segs in _components(d):
        for n in order:
            rename[n] = ((n[0], ids[n[0]]), off[n])
            ids[n[0]] += 1
        for sid in segs:
            seg_key[sid] = key
            key += 1
    for n, (new, o) in rename.items():
        deg = degree(n)
        ed.roles[new] = [old.roles[n][(p + o) % deg] for p in range(deg)]

    def move(slot):
        if slot is None:
            return None
        n, p = slot
        new, o = rename[n]
        return (new, (p - o) % degree(n))

    for sid, (start, end, _) in old.segs.items():
        ed.add_segment(move(start), move(end), (seg_key[sid],), sid=sid)
    out, ref = ed.to_diagram(d.ambient, relabel=True, with_map=True)
    if with_map:
        return out, {d.segment_ref(sid): ref[sid] for sid in ref}
    return out
