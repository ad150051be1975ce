"""Reference computations that share no search code with the library.

Everything here works straight from the raw crossing/vertex records and the
family tables, by exhaustive enumeration.
"""
import itertools
from collections import Counter

import networkx as nx


def pair_star(f, a, b):
    (x, g), (y, h) = a, b
    G = f.group
    return (f.op[h][x][y], G.mul[G.mul[G.inv[h]][g]][h])


def left_under_kind(c):
    """``"t"`` or ``"h"``: which under half lies where the over-arc's normal (left) points."""
    pos = {e.kind: i for i, e in enumerate(c.rot)}
    return c.rot[(pos["o"] + 1) % 4].kind


def left_under_arc(c):
    return c.under_out if left_under_kind(c) == "t" else c.under_in


def right_under_arc(c):
    return c.under_in if left_under_kind(c) == "t" else c.under_out


def crossing_ok(f, c, col):
    return pair_star(f, col[right_under_arc(c)], col[c.over]) == col[left_under_arc(c)]


def vertex_ok(f, v, col):
    G = f.group
    if len({col[e.arc][0] for e in v.ends}) != 1:
        return False
    acc = G.identity
    for e in reversed(v.ends):
        g = col[e.arc][1]
        acc = G.mul[acc][g if e.kind == "h" else G.inv[g]]
    return acc == G.identity


def arc_coloring_ok(d, f, col):
    return all(crossing_ok(f, c, col) for c in d.crossings.values()) and all(
        vertex_ok(f, v, col) for v in d.vertices.values()
    )


def all_pairs(f):
    return [(x, g) for x in range(f.size) for g in range(f.group.order)]


def brute_colorings(d, f):
    """Every map arcs -> X x G satisfying the crossing and vertex rules."""
    arcs = list(d.arcs)
    out = []
    for vals in itertools.product(all_pairs(f), repeat=len(arcs)):
        col = dict(zip(arcs, vals))
        if arc_coloring_ok(d, f, col):
            out.append(col)
    return out


def brute_count(d, f):
    return len(brute_colorings(d, f))


def region_ok(d, xset, col, reg):
    for s in d.segments:
        x, g = col[s.arc]
        left, right = d.region_of(s.index, "L"), d.region_of(s.index, "R")
        if xset.bar[g][reg[right]][x] != reg[left]:
            return False
    return True


def brute_shadow_colorings(d, f, xset):
    nr = len(d.regions)
    out = []
    for col in brute_colorings(d, f):
        for reg in itertools.product(range(xset.size), repeat=nr):
            if region_ok(d, xset, col, reg):
                out.append((col, reg))
    return out


def weight_corner(c):
    """Slot p such that the corner (p, p+1) lies right of both strands."""
    pos = {e.kind: i for i, e in enumerate(c.rot)}
    # travelling in at slot i and out at i+2, the right-hand corners are i and i+1
    over = {pos["i"], (pos["i"] + 1) % 4}
    under = {pos["h"], (pos["h"] + 1) % 4}
    (p,) = over & under
    return p


def brute_phi(d, f, xset, cochain):
    n = f.group.order
    m = cochain.coeffs.modulus
    out = Counter()
    for col, reg in brute_shadow_colorings(d, f, xset):
        w = 0
        for c in d.crossings.values():
            sign = 1 if left_under_kind(c) == "t" else -1
            y = reg[d.corner_region(("x", c.id), weight_corner(c))]
            q1 = col[right_under_arc(c)]
            q3 = col[c.over]
            w += sign * cochain(y, q1[0] * n + q1[1], q3[0] * n + q3[1])
        out[w % m if m else w] += 1
    return dict(out)


# ---------------------------------------------------------------- structure

def planar_faces(d):
    """``(faces, components)`` of the projection by networkx's face traversal.

    Every segment is subdivided twice so the embedded graph is simple; free
    loops each contribute one component with two faces.
    """
    emb = nx.PlanarEmbedding()
    slots = {}
    loops = 0
    for s in d.segments:
        if s.start is None:
            loops += 1
            continue
        a, b = ("m", s.index, 0), ("m", s.index, 1)
        slots.setdefault(s.start[0], {})[s.start[1]] = a
        slots.setdefault(s.end[0], {})[s.end[1]] = b
        emb.add_half_edge(a, s.start[0])
        emb.add_half_edge(a, b, ccw=s.start[0])
        emb.add_half_edge(b, a)
        emb.add_half_edge(b, s.end[0], ccw=a)
    for node, by_pos in slots.items():
        prev = None
        for p in sorted(by_pos):
            emb.add_half_edge(node, by_pos[p], **({"ccw": prev} if prev is not None else {}))
            prev = by_pos[p]
    faces = 2 * loops
    if emb.number_of_nodes():
        emb.check_structure()
        seen = set()
        for u, v in emb.edges():
            if (u, v) not in seen:
                emb.traverse_face(u, v, mark_half_edges=seen)
                faces += 1
    comps = loops + (nx.number_connected_components(emb.to_undirected()) if emb.number_of_nodes() else 0)
    return faces, comps


def abstract_graph(d):
    """Multigraph on the vertices, with one edge per strand between them.

    A strand without vertices becomes a loop on a node of its own.
    """
    parent = {a: a for a in d.arcs}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for c in d.crossings.values():
        ra, rb = find(c.under_in), find(c.under_out)
        if ra != rb:
            parent[rb] = ra
    g = nx.MultiGraph()
    ends = {}
    for v in d.vertices.values():
        g.add_node(("v", v.id))
        for e in v.ends:
            ends.setdefault(find(e.arc), []).append(("v", v.id))
    for root in {find(a) for a in d.arcs}:
        if root in ends:
            u, w = ends[root]
            g.add_edge(u, w, key=root)
        else:
            g.add_edge(("loop", root), ("loop", root), key=root)
    return g


def genera(d):
    """Sorted cycle ranks of the connected pieces of the abstract graph."""
    g = abstract_graph(d)
    return sorted(
        g.subgraph(c).number_of_edges() - len(c) + 1 for c in nx.connected_components(g)
    )


# ---------------------------------------------------------------- algebra

def family_is_valid(f):
    """Direct restatement of the G-family axioms, no early exits shared with the library."""
    G = f.group
    n, m = G.order, f.size
    X, Gs = range(m), range(n)
    mul = G.mul

    def inv(g):
        return next(h for h in Gs if mul[g][h] == G.identity)

    group_ok = all(mul[G.identity][a] == a == mul[a][G.identity] for a in Gs) and all(
        mul[mul[a][b]][c] == mul[a][mul[b][c]] for a in Gs for b in Gs for c in Gs
    ) and all(any(mul[a][b] == G.identity for b in Gs) for a in Gs)
    if not group_ok:
        return False
    op = f.op
    return (
        all(op[g][x][x] == x for g in Gs for x in X)
        and all(op[G.identity][x][y] == x for x in X for y in X)
        and all(op[mul[g][h]][x][y] == op[h][op[g][x][y]][y] for g in Gs for h in Gs for x in X for y in X)
        and all(sorted(op[g][x][y] for x in X) == list(X) for g in Gs for y in X)
        and all(
            op[h][op[g][x][y]][z] == op[mul[mul[inv(h)][g]][h]][op[h][x][z]][op[h][y][z]]
            for g in Gs for h in Gs for x in X for y in X for z in X
        )
    )
