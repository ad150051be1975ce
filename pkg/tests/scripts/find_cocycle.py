"""Search for shadow 2-cocycles of the dihedral family acting on itself.

Solves the linear cocycle condition over Z/p, then keeps a solution whose
weight multiset is nonconstant on a test link.  Used once to produce the
frozen fixture ``fixtures/dihedral3_z3.cochain``.
"""
import itertools
import sys

from surfquandle.algebra import AbelianCoefficients, AssociatedQuandle, Cochain2, canonical_xset, format_cochain, make_dihedral_family
from surfquandle.coloring import phi_theta
from surfquandle.diagram import from_braid


def nullspace_mod_p(rows, nvars, p):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * nvars
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def cocycle_rows(f, y_size, act, p):
    q = AssociatedQuandle(f)
    nq = q.order
    var = lambda y, a, b: (y * nq + a) * nq + b
    nvars = y_size * nq * nq
    rows = []
    for y, x1, x2, x3 in itertools.product(range(y_size), range(nq), range(nq), range(nq)):
        row = [0] * nvars
        for coef, idx in (
            (-1, var(y, x2, x3)),
            (1, var(act(y, x1), x2, x3)),
            (1, var(y, x1, x3)),
            (-1, var(act(y, x2), q.op(x1, x2), x3)),
            (-1, var(y, x1, x2)),
            (1, var(act(y, x3), q.op(x1, x3), q.op(x2, x3))),
        ):
            row[idx] = (row[idx] + coef) % p
        if any(row):
            rows.append(row)
    for y, a in itertools.product(range(y_size), range(nq)):
        row = [0] * nvars
        row[var(y, a, a)] = 1
        rows.append(row)
    return rows, nvars


def main(p=3):
    f = make_dihedral_family(3)
    s = canonical_xset(f)
    rows, nvars = cocycle_rows(f, s.size, s.act, p)
    basis = nullspace_mod_p(rows, nvars, p)
    nq = f.quandle_order
    test = from_braid([1, 1, 1, 1])
    print(f"{len(basis)} basis cocycles", file=sys.stderr)
    for v in basis:
        theta = [[[v[(y * nq + a) * nq + b] for b in range(nq)] for a in range(nq)] for y in range(s.size)]
        t = Cochain2(f, s, AbelianCoefficients(p), theta)
        phi = phi_theta(test, f, s, t)
        if len(phi) > 1:
            print(f"# nonconstant on T(2,4): {phi}", file=sys.stderr)
            sys.stdout.write(format_cochain(t))
            return
    print("no cocycle with a nonconstant multiset", file=sys.stderr)


if __name__ == "__main__":
    main()
