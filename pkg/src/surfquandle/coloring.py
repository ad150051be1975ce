"""Enumeration of arc colorings and region (shadow) colorings of diagrams.

Arcs are colored by the associated quandle Q = X x G, encoded as
``q = x * |G| + g``.  Conventions, all relative to the counterclockwise
rotation system:

* the normal of an oriented strand points to its left;
* at a crossing the under-arc on the right of the over-arc is the source,
  and ``color(other under-arc) = color(source) * color(over-arc)``;
* at a vertex all three arcs share their X-part, and the product of the
  G-parts (inverted on outgoing ends) taken clockwise is the identity;
* across every arc, ``region on the left = region on the right * color(arc)``.

The search compiles a static plan: it branches on one arc at a time and
propagates every value forced by crossings and vertices before the next
branch, checking constraints as soon as all of their arcs are known.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import AssociatedQuandle, StructureError
from .diagram.model import LEFT, RIGHT


@dataclass(frozen=True)
class Coloring:
    arc_colors: dict  # arc id -> (x, g)
    region_colors: dict = None  # region id -> y

    def quandle_colors(self, family):
        return {a: family.encode(x, g) for a, (x, g) in self.arc_colors.items()}


@dataclass(frozen=True)
class WeightSum:
    value: int
    per_crossing: tuple = field(default=())  # ((crossing id, sign, (y, q1, q3)), ...)


class ColoringError(StructureError):
    pass


# ---------------------------------------------------------------- diagram data

def crossing_roles(c):
    """``(source arc, over arc, target arc)``: target = source * over."""
    if c.sign > 0:
        return c.under_in, c.over, c.under_out
    return c.under_out, c.over, c.under_in


def vertex_cycle(v):
    """Ends of a vertex in clockwise order, as ``(arc, exponent)`` pairs."""
    return tuple((e.arc, 1 if e.kind == "h" else -1) for e in reversed(v.ends))


def weight_region(d, c):
    """Region whose color enters the weight of crossing ``c``."""
    node = ("x", c.id)
    kind = "h" if c.sign > 0 else "i"
    return d.corner_region(node, c.position(kind))


def _vertex_ok(group, cycle, colors, n):
    xs = {colors[a] // n for a, _ in cycle}
    if len(xs) != 1:
        return False
    acc = group.identity
    for a, e in cycle:
        acc = group.mul[acc][group.power(colors[a] % n, e)]
    return acc == group.identity


def check_coloring(d, family, coloring):
    """Raise :class:`ColoringError` unless ``coloring`` satisfies every crossing and vertex rule."""
    q = AssociatedQuandle(family)
    n = family.group.order
    col = coloring.quandle_colors(family)
    if set(col) != set(d.arcs):
        raise ColoringError("coloring must assign every arc")
    for c in d.crossings.values():
        s, o, t = crossing_roles(c)
        if q.op(col[s], col[o]) != col[t]:
            raise ColoringError(f"crossing {c.id}: color of arc {t} is not color({s}) * color({o})")
    for v in d.vertices.values():
        if not _vertex_ok(family.group, vertex_cycle(v), col, n):
            raise ColoringError(f"vertex {v.id}: vertex rule fails")


def check_shadow_coloring(d, xset, coloring):
    family = xset.family
    check_coloring(d, family, coloring)
    col = coloring.quandle_colors(family)
    rc = coloring.region_colors or {}
    if set(rc) != {r.id for r in d.regions}:
        raise ColoringError("coloring must assign every region")
    for s in d.segments:
        left, right = d.region_of(s.index, LEFT), d.region_of(s.index, RIGHT)
        if xset.act(rc[right], col[s.arc]) != rc[left]:
            raise ColoringError(f"arc {s.arc}: region {left} is not region {right} acted on by the arc color")


# ---------------------------------------------------------------- compiled plan

@dataclass(frozen=True)
class Plan:
    """Static search order over arc indices ``0..len(arcs)-1``."""

    arcs: tuple  # arc ids by index
    blocks: tuple  # ((branch index, (op, ...)), ...)
    n_group: int
    table: tuple
    div: tuple
    mul: tuple
    inv: tuple
    identity: int
    order: int


def compile_plan(d, family, quandle=None):
    q = quandle or AssociatedQuandle(family)
    G = family.group
    n = G.order
    arcs = tuple(d.arcs)
    idx = {a: i for i, a in enumerate(arcs)}
    cons = []
    for c in d.crossings.values():
        s, o, t = crossing_roles(c)
        cons.append(("x", idx[s], idx[o], idx[t]))
    for v in d.vertices.values():
        cons.append(("v", tuple((idx[a], e) for a, e in vertex_cycle(v))))
    done = [False] * len(cons)
    known = [False] * len(arcs)
    by_arc = [[] for _ in arcs]
    for ci, con in enumerate(cons):
        members = con[1:] if con[0] == "x" else [a for a, _ in con[1]]
        for a in set(members):
            by_arc[a].append(ci)

    def derive():
        ops = []
        changed = True
        while changed:
            changed = False
            for ci, con in enumerate(cons):
                if done[ci]:
                    continue
                if con[0] == "x":
                    _, s, o, t = con
                    ks, ko, kt = known[s], known[o], known[t]
                    if ks and ko and kt:
                        ops.append(("chk", s, o, t))
                    elif ks and ko:
                        ops.append(("fwd", s, o, t))
                        known[t] = True
                    elif kt and ko:
                        ops.append(("bwd", t, o, s))
                        known[s] = True
                    else:
                        continue
                else:
                    cyc = con[1]
                    unknown = [j for j, (a, _) in enumerate(cyc) if not known[a]]
                    if not unknown:
                        ops.append(("vchk", cyc))
                    elif len(unknown) == 1 and sum(a == cyc[unknown[0]][0] for a, _ in cyc) == 1:
                        j = unknown[0]
                        rest_l = tuple(cyc[:j])
                        rest_r = tuple(cyc[j + 1:])
                        ref = cyc[(j + 1) % 3][0]
                        ops.append(("vder", cyc[j][0], cyc[j][1], rest_l, rest_r, ref))
                        known[cyc[j][0]] = True
                    else:
                        continue
                done[ci] = True
                changed = True
        return tuple(ops)

    def score(a):
        return sum(1 for ci in by_arc[a] if not done[ci])

    blocks = []
    while not all(known):
        a = max((i for i in range(len(arcs)) if not known[i]), key=lambda i: (score(i), -i))
        known[a] = True
        blocks.append((a, derive()))
    assert all(done)
    return Plan(arcs, tuple(blocks), n, q.table, q.right_division(), G.mul, G.inv, G.identity, q.order)


def _run_ops(plan, ops, col):
    T, n, mul, inv, e = plan.table, plan.n_group, plan.mul, plan.inv, plan.identity
    for op in ops:
        kind = op[0]
        if kind == "fwd":
            col[op[3]] = T[col[op[1]]][col[op[2]]]
        elif kind == "bwd":
            col[op[3]] = plan.div[col[op[1]]][col[op[2]]]
        elif kind == "chk":
            if T[col[op[1]]][col[op[2]]] != col[op[3]]:
                return False
        elif kind == "vchk":
            cyc = op[1]
            x0 = col[cyc[0][0]] // n
            acc = e
            for a, ex in cyc:
                c = col[a]
                if c // n != x0:
                    return False
                g = c % n
                acc = mul[acc][g if ex > 0 else inv[g]]
            if acc != e:
                return False
        else:  # vder
            _, a, ex, left, right, ref = op
            lp = e
            for b, eb in left:
                g = col[b] % n
                lp = mul[lp][g if eb > 0 else inv[g]]
            rp = e
            for b, eb in right:
                g = col[b] % n
                rp = mul[rp][g if eb > 0 else inv[g]]
            # left * g^ex * right = e
            g = mul[inv[lp]][inv[rp]]
            if ex < 0:
                g = inv[g]
            x0 = col[ref] // n
            for b, _ in left + right:
                if col[b] // n != x0:
                    return False
            col[a] = x0 * n + g
    return True


def _search(plan, first_values=None):
    """Yield every valid assignment (a shared list; copy before keeping)."""
    col = [0] * len(plan.arcs)
    blocks = plan.blocks
    depth = len(blocks)
    if depth == 0:
        yield col
        return

    def rec(level):
        a, ops = blocks[level]
        values = first_values if (level == 0 and first_values is not None) else range(plan.order)
        last = level + 1 == depth
        for v in values:
            col[a] = v
            if not _run_ops(plan, ops, col):
                continue
            if last:
                yield col
            else:
                yield from rec(level + 1)

    yield from rec(0)


def _split(plan, workers):
    return [range(w, plan.order, workers) for w in range(workers)]


def _count_part(plan, values):
    return sum(1 for _ in _search(plan, values))


def _parallel(fn, plan, workers, *extra):
    workers = max(1, int(workers or 1))
    if workers == 1 or not plan.blocks:
        return [fn(plan, None, *extra)]
    parts = _split(plan, workers)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(fn, plan, list(p), *extra) for p in parts]
        return [f.result() for f in futs]


def count_colorings(d, family, workers=1):
    plan = compile_plan(d, family)
    return sum(_parallel(_count_part, plan, workers))


def iter_colorings(d, family):
    plan = compile_plan(d, family)
    n = family.group.order
    for col in _search(plan):
        yield Coloring({a: divmod(col[i], n) for i, a in enumerate(plan.arcs)})


# ---------------------------------------------------------------- regions

@dataclass(frozen=True)
class RegionPlan:
    n_regions: int
    tree: tuple  # (known region, new region, arc index, forward?)
    checks: tuple  # (left region, right region, arc index)
    act: tuple  # act[q][y]
    unact: tuple  # unact[q][y]: inverse of y -> act[q][y]
    size: int


def compile_regions(d, xset, arcs):
    idx = {a: i for i, a in enumerate(arcs)}
    nq = xset.family.quandle_order
    act = tuple(tuple(xset.act(y, q) for y in range(xset.size)) for q in range(nq))
    unact = []
    for q in range(nq):
        row = [None] * xset.size
        for y, z in enumerate(act[q]):
            if row[z] is not None:
                raise StructureError(f"X-set action of quandle element {q} is not a bijection")
            row[z] = y
        unact.append(tuple(row))
    edges = []
    for s in d.segments:
        edges.append((d.region_of(s.index, LEFT), d.region_of(s.index, RIGHT), idx[s.arc]))
    nr = len(d.regions)
    seen = {0}
    frontier = [0]
    tree, checks = [], []
    adj = [[] for _ in range(nr)]
    for k, (l, r, a) in enumerate(edges):
        adj[l].append(k)
        adj[r].append(k)
    used = set()
    while frontier:
        reg = frontier.pop(0)
        for k in adj[reg]:
            if k in used:
                continue
            l, r, a = edges[k]
            if r == reg and l not in seen:
                tree.append((r, l, a, True))
                seen.add(l)
                frontier.append(l)
                used.add(k)
            elif l == reg and r not in seen:
                tree.append((l, r, a, False))
                seen.add(r)
                frontier.append(r)
                used.add(k)
    if len(seen) != nr:
        raise StructureError("region adjacency is disconnected")
    checks = tuple(edges[k] for k in range(len(edges)) if k not in used)
    return RegionPlan(nr, tuple(tree), checks, act, tuple(unact), xset.size)


def _region_fill(rp, col, y0):
    reg = [0] * rp.n_regions
    reg[0] = y0
    act, unact = rp.act, rp.unact
    for known, new, a, fwd in rp.tree:
        reg[new] = act[col[a]][reg[known]] if fwd else unact[col[a]][reg[known]]
    for l, r, a in rp.checks:
        if act[col[a]][reg[r]] != reg[l]:
            return None
    return reg


def _shadow_search(plan, rp, first_values=None):
    for col in _search(plan, first_values):
        for y0 in range(rp.size):
            reg = _region_fill(rp, col, y0)
            if reg is not None:
                yield col, reg


def _shadow_count_part(plan, values, rp):
    return sum(1 for _ in _shadow_search(plan, rp, values))


def count_shadow_colorings(d, family, xset, workers=1):
    if xset.family is not family and xset.family != family:
        raise StructureError("X-set belongs to a different family")
    plan = compile_plan(d, family)
    rp = compile_regions(d, xset, plan.arcs)
    return sum(_parallel(_shadow_count_part, plan, workers, rp))


def iter_shadow_colorings(d, family, xset):
    plan = compile_plan(d, family)
    rp = compile_regions(d, xset, plan.arcs)
    n = family.group.order
    for col, reg in _shadow_search(plan, rp):
        yield Coloring(
            {a: divmod(col[i], n) for i, a in enumerate(plan.arcs)},
            {r: y for r, y in enumerate(reg)},
        )


# ---------------------------------------------------------------- weights

def _weight_terms(d, arcs):
    idx = {a: i for i, a in enumerate(arcs)}
    out = []
    for c in d.crossings.values():
        s, o, _ = crossing_roles(c)
        out.append((c.id, c.sign, weight_region(d, c), idx[s], idx[o]))
    return tuple(out)


def weight_sum(d, coloring, cochain):
    """Signed sum of cocycle values over the crossings of a shadow coloring."""
    check_shadow_coloring(d, cochain.xset, coloring)
    f = cochain.family
    col = coloring.quandle_colors(f)
    rc = coloring.region_colors
    A = cochain.coeffs
    total = 0
    per = []
    for c in d.crossings.values():
        s, o, _ = crossing_roles(c)
        triple = (rc[weight_region(d, c)], col[s], col[o])
        per.append((c.id, c.sign, triple))
        total = A.add(total, c.sign * cochain(*triple))
    return WeightSum(A.normalize(total), tuple(per))


def _phi_part(plan, values, rp, terms, theta, modulus):
    out = Counter()
    for col, reg in _shadow_search(plan, rp, values):
        w = 0
        for _, sign, r, s, o in terms:
            w += sign * theta[reg[r]][col[s]][col[o]]
        out[w % modulus if modulus else w] += 1
    return out


def phi_theta(d, family, xset, cochain, workers=1):
    """Multiset ``{weight sum: multiplicity}`` over all shadow colorings."""
    plan = compile_plan(d, family)
    rp = compile_regions(d, xset, plan.arcs)
    terms = _weight_terms(d, plan.arcs)
    parts = _parallel(_phi_part, plan, workers, rp, terms, cochain.theta, cochain.coeffs.modulus)
    total = Counter()
    for p in parts:
        total.update(p)
    return dict(sorted(total.items()))


# ---------------------------------------------------------------- dump format

def format_coloring(c):
    lines = [f"arc {a} = ({x},{g})" for a, (x, g) in sorted(c.arc_colors.items())]
    if c.region_colors is not None:
        lines += [f"region {r} = {y}" for r, y in sorted(c.region_colors.items())]
    return "\n".join(lines) + "\n"


def format_colorings(colorings):
    return "\n".join(format_coloring(c) for c in colorings)
