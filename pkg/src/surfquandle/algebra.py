"""Finite groups, G-families of quandles, X-sets and 2-cochains.

Everything is a dense lookup table over integer indices ``0..n-1``.  The
verifiers return a list of :class:`Violation` (empty means valid) and raise
:class:`StructureError` when the tables do not even have the right shape.

Elements of the associated quandle ``Q = X x G`` are encoded as
``x * n + g`` where ``n`` is the group order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd

from .errors import ParseError, StructureError


@dataclass(frozen=True)
class Violation:
    law: str
    where: tuple = ()

    def __str__(self):
        loc = " ".join(f"{k}={v}" for k, v in self.where)
        return f"{self.law} at {loc}" if loc else self.law


def _check_table(table, rows, cols, bound, name):
    if len(table) != rows:
        raise StructureError(f"{name}: expected {rows} rows, got {len(table)}")
    for r, row in enumerate(table):
        if len(row) != cols:
            raise StructureError(f"{name}: row {r} has {len(row)} entries, expected {cols}")
        for c, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < bound:
                raise StructureError(f"{name}: entry ({r},{c}) = {v!r} out of range 0..{bound - 1}")


def _freeze(table):
    if isinstance(table, int):
        return table
    return tuple(_freeze(t) for t in table)


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mul: tuple
    identity: int = 0
    inv: tuple = None

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise StructureError(f"group order must be a positive integer, got {self.order!r}")
        object.__setattr__(self, "mul", _freeze(self.mul))
        _check_table(self.mul, self.order, self.order, self.order, "group table")
        if not 0 <= self.identity < self.order:
            raise StructureError(f"identity {self.identity} out of range")
        if self.inv is None:
            e = self.identity
            inv = []
            for a in range(self.order):
                cands = [b for b in range(self.order) if self.mul[a][b] == e]
                inv.append(cands[0] if cands else -1)
            object.__setattr__(self, "inv", tuple(inv))
        else:
            object.__setattr__(self, "inv", _freeze(self.inv))
            if len(self.inv) != self.order:
                raise StructureError("inverse table has wrong length")

    @classmethod
    def from_table(cls, mul):
        """Build a group from its multiplication table, locating the identity."""
        n = len(mul)
        for e in range(n):
            if all(mul[e][a] == a and mul[a][e] == a for a in range(n)):
                return cls(n, mul, e)
        return cls(n, mul, 0)

    def __len__(self):
        return self.order

    def is_abelian(self):
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(self.order))

    def power(self, a, k):
        """``a**k`` for ``k`` in {+1, -1}, the only exponents the vertex rule needs."""
        return a if k == 1 else self.inv[a]

    def conj(self, g, h):
        """``h^-1 g h``."""
        return self.mul[self.mul[self.inv[h]][g]][h]


def verify_group(g):
    n, m, e = g.order, g.mul, g.identity
    _check_table(m, n, n, n, "group table")
    out = []
    for a in range(n):
        if m[e][a] != a or m[a][e] != a:
            out.append(Violation("identity", (("a", a),)))
    for a in range(n):
        b = g.inv[a]
        if not 0 <= b < n or m[a][b] != e or m[b][a] != e:
            out.append(Violation("inverse", (("a", a),)))
    for a, b, c in product(range(n), repeat=3):
        if m[m[a][b]][c] != m[a][m[b][c]]:
            out.append(Violation("associativity", (("a", a), ("b", b), ("c", c))))
    return out


def cyclic_group(n):
    return FiniteGroup(n, [[(a + b) % n for b in range(n)] for a in range(n)], 0)


def symmetric_group(k):
    """S_k with elements ordered lexicographically; product ``(p*q)(i) = q(p(i))``.

    The left-to-right convention matches the right actions used for quandles.
    """
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(q[p[i]] for i in range(k))] for q in perms] for p in perms]
    return FiniteGroup(len(perms), mul, index[tuple(range(k))])


# ---------------------------------------------------------------- G-families

@dataclass(frozen=True)
class GFamily:
    """A set X = {0..m-1} with operations ``op[g][x][y] = x *_g y``."""

    group: FiniteGroup
    size: int
    op: tuple
    x_labels: tuple = None
    g_labels: tuple = None

    def __post_init__(self):
        n = self.group.order
        object.__setattr__(self, "op", _freeze(self.op))
        if not isinstance(self.size, int) or self.size < 1:
            raise StructureError(f"carrier size must be positive, got {self.size!r}")
        if len(self.op) != n:
            raise StructureError(f"expected {n} operation tables, got {len(self.op)}")
        for g, t in enumerate(self.op):
            _check_table(t, self.size, self.size, self.size, f"operation table {g}")

    def star(self, x, g, y):
        return self.op[g][x][y]

    @property
    def quandle_order(self):
        return self.size * self.group.order

    def encode(self, x, g):
        return x * self.group.order + g

    def decode(self, q):
        return divmod(q, self.group.order)


def verify_gfamily(f):
    """Check axioms (i)-(iii) and bijectivity of right translations exhaustively."""
    G = f.group
    out = [Violation("group " + v.law, v.where) for v in verify_group(G)]
    if out:
        return out
    n, m, e, op, mul = G.order, f.size, G.identity, f.op, G.mul
    for g, x in product(range(n), range(m)):
        if op[g][x][x] != x:
            out.append(Violation("(i)", (("x", x), ("g", g))))
    for x, y in product(range(m), repeat=2):
        if op[e][x][y] != x:
            out.append(Violation("(ii) identity", (("x", x), ("y", y))))
    for g, h in product(range(n), repeat=2):
        gh = mul[g][h]
        for x, y in product(range(m), repeat=2):
            if op[gh][x][y] != op[h][op[g][x][y]][y]:
                out.append(Violation("(ii)", (("x", x), ("y", y), ("g", g), ("h", h))))
    for g, y in product(range(n), range(m)):
        if len({op[g][x][y] for x in range(m)}) != m:
            out.append(Violation("bijectivity", (("y", y), ("g", g))))
    for g, h in product(range(n), repeat=2):
        hgh = G.conj(g, h)
        oh, og, oc = op[h], op[g], op[hgh]
        for x, y, z in product(range(m), repeat=3):
            if oh[og[x][y]][z] != oc[oh[x][z]][oh[y][z]]:
                out.append(Violation("(iii)", (("x", x), ("y", y), ("z", z), ("g", g), ("h", h))))
    return out


def verify_quandle(table):
    """Idempotence, right-invertibility and right self-distributivity of ``a*b = table[a][b]``."""
    k = len(table)
    _check_table(table, k, k, k, "quandle table")
    out = []
    for a in range(k):
        if table[a][a] != a:
            out.append(Violation("idempotence", (("a", a),)))
    for b in range(k):
        if len({table[a][b] for a in range(k)}) != k:
            out.append(Violation("right-invertibility", (("b", b),)))
    for a, b, c in product(range(k), repeat=3):
        if table[table[a][b]][c] != table[table[a][c]][table[b][c]]:
            out.append(Violation("self-distributivity", (("a", a), ("b", b), ("c", c))))
    return out


def make_dihedral_family(m):
    """X = Z/m, G = Z/2 with ``x *_0 y = x`` and ``x *_1 y = 2y - x``."""
    if not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise ValueError(f"dihedral family needs an odd m >= 3, got {m!r}")
    trivial = [[x for y in range(m)] for x in range(m)]
    reflect = [[(2 * y - x) % m for y in range(m)] for x in range(m)]
    return GFamily(cyclic_group(2), m, [trivial, reflect])


def make_alexander_family(m, t):
    """X = Z/m, G = Z/k with ``x *_g y = t^g x + (1 - t^g) y`` where k is the order of t."""
    if gcd(t, m) != 1:
        raise ValueError(f"t={t} is not a unit mod {m}")
    k, p = 1, t % m
    while p != 1 % m:
        p = p * t % m
        k += 1
    tables = []
    for g in range(k):
        tg = pow(t, g, m)
        tables.append([[(tg * x + (1 - tg) * y) % m for y in range(m)] for x in range(m)])
    return GFamily(cyclic_group(k), m, tables)


def make_trivial_family(m, group):
    """``x *_g y = x`` for every g; valid for any group."""
    t = [[x for y in range(m)] for x in range(m)]
    return GFamily(group, m, [t] * group.order)


# ---------------------------------------------------------------- associated quandle

@dataclass(frozen=True)
class AssociatedQuandle:
    family: GFamily
    table: tuple = field(init=False)

    def __post_init__(self):
        f = self.family
        G = f.group
        n = G.order
        k = f.quandle_order
        rows = []
        for a in range(k):
            x, g = divmod(a, n)
            row = []
            for b in range(k):
                y, h = divmod(b, n)
                row.append(f.op[h][x][y] * n + G.conj(g, h))
            rows.append(tuple(row))
        object.__setattr__(self, "table", tuple(rows))

    @property
    def order(self):
        return len(self.table)

    def op(self, a, b):
        return self.table[a][b]

    def pair_op(self, xg, yh):
        """The rule on pairs: ``(x,g)*(y,h) = (x *_h y, h^-1 g h)``."""
        n = self.family.group.order
        q = self.table[xg[0] * n + xg[1]][yh[0] * n + yh[1]]
        return divmod(q, n)

    def right_division(self):
        """``div[c][b]`` is the unique a with ``a*b = c``."""
        k = self.order
        div = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                div[self.table[a][b]][b] = a
        return tuple(tuple(r) for r in div)


def make_associated_quandle(f):
    return AssociatedQuandle(f)


# ---------------------------------------------------------------- X-sets

@dataclass(frozen=True)
class XSet:
    """Y = {0..size-1} with ``bar[g][y][x] = y bar*_g x``."""

    family: GFamily
    size: int
    bar: tuple

    def __post_init__(self):
        object.__setattr__(self, "bar", _freeze(self.bar))
        n, m = self.family.group.order, self.family.size
        if not isinstance(self.size, int) or self.size < 1:
            raise StructureError(f"X-set size must be positive, got {self.size!r}")
        if len(self.bar) != n:
            raise StructureError(f"expected {n} action tables, got {len(self.bar)}")
        for g, t in enumerate(self.bar):
            _check_table(t, self.size, m, self.size, f"action table {g}")

    def act(self, y, q):
        """Right action of a quandle element: ``y * (x, g) = y bar*_g x``."""
        x, g = divmod(q, self.family.group.order)
        return self.bar[g][y][x]


def verify_xset(s):
    f = s.family
    G = f.group
    n, m, k, e, bar = G.order, f.size, s.size, G.identity, s.bar
    out = []
    for y, x in product(range(k), range(m)):
        if bar[e][y][x] != y:
            out.append(Violation("(i) identity", (("y", y), ("x", x))))
    for g, h in product(range(n), repeat=2):
        gh = G.mul[g][h]
        for y, x in product(range(k), range(m)):
            if bar[gh][y][x] != bar[h][bar[g][y][x]][x]:
                out.append(Violation("(i)", (("y", y), ("x", x), ("g", g), ("h", h))))
    for g, h in product(range(n), repeat=2):
        hgh = G.conj(g, h)
        for y, x, x2 in product(range(k), range(m), range(m)):
            lhs = bar[h][bar[g][y][x]][x2]
            rhs = bar[hgh][bar[h][y][x2]][f.op[h][x][x2]]
            if lhs != rhs:
                out.append(Violation("(ii)", (("y", y), ("x", x), ("x'", x2), ("g", g), ("h", h))))
    return out


def canonical_xset(f):
    """X acting on itself through the family operations."""
    return XSet(f, f.size, f.op)


def group_xset(f):
    """G acting on itself by right multiplication, ignoring X."""
    G, m = f.group, f.size
    return XSet(f, G.order, [[[G.mul[y][g]] * m for y in range(G.order)] for g in range(G.order)])


def trivial_xset(f, size=1):
    n, m = f.group.order, f.size
    return XSet(f, size, [[[y] * m for y in range(size)] for _ in range(n)])


# ---------------------------------------------------------------- coefficients and cochains

@dataclass(frozen=True)
class AbelianCoefficients:
    """Z/kZ when ``modulus`` is an integer k >= 1, the integers when it is None."""

    modulus: int = None

    def __post_init__(self):
        if self.modulus is not None and (not isinstance(self.modulus, int) or self.modulus < 1):
            raise StructureError(f"coefficient modulus must be a positive integer, got {self.modulus!r}")

    zero = 0

    def normalize(self, a):
        return a if self.modulus is None else a % self.modulus

    def add(self, a, b):
        return self.normalize(a + b)

    def neg(self, a):
        return self.normalize(-a)

    def elements(self):
        if self.modulus is None:
            raise ValueError("Z has no finite element list")
        return range(self.modulus)

    def __str__(self):
        return "Z" if self.modulus is None else str(self.modulus)


@dataclass(frozen=True)
class Cochain2:
    """``theta[y][q1][q2]`` with values in ``coeffs``; total on Y x Q x Q."""

    family: GFamily
    xset: XSet
    coeffs: AbelianCoefficients
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta", _freeze(self.theta))
        k, nq = self.xset.size, self.family.quandle_order
        if len(self.theta) != k or any(len(r) != nq or any(len(c) != nq for c in r) for r in self.theta):
            raise StructureError(f"cochain table must be {k} x {nq} x {nq}")
        for plane in self.theta:
            for row in plane:
                for v in row:
                    if not isinstance(v, int):
                        raise StructureError(f"cochain value {v!r} is not an integer")
                    if self.coeffs.modulus is not None and not 0 <= v < self.coeffs.modulus:
                        raise StructureError(f"cochain value {v} outside 0..{self.coeffs.modulus - 1}")

    @classmethod
    def from_entries(cls, family, xset, coeffs, entries):
        """Dense cochain from a sparse ``{(y, q1, q2): value}`` mapping; missing entries are zero."""
        k, nq = xset.size, family.quandle_order
        table = [[[0] * nq for _ in range(nq)] for _ in range(k)]
        for (y, q1, q2), v in entries.items():
            if not (0 <= y < k and 0 <= q1 < nq and 0 <= q2 < nq):
                raise StructureError(f"cochain entry {(y, q1, q2)} out of range")
            table[y][q1][q2] = coeffs.normalize(v)
        return cls(family, xset, coeffs, table)

    @classmethod
    def zero(cls, family, xset, coeffs=None):
        return cls.from_entries(family, xset, coeffs or AbelianCoefficients(None), {})

    def __call__(self, y, q1, q2):
        return self.theta[y][q1][q2]

    def entries(self):
        for y, plane in enumerate(self.theta):
            for q1, row in enumerate(plane):
                for q2, v in enumerate(row):
                    if v:
                        yield (y, q1, q2), v


# ---------------------------------------------------------------- text formats

def _lines(text):
    """Yield ``(lineno, [(column, token), ...])`` for non-empty lines, stripping ``#`` comments."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


class _Reader:
    def __init__(self, text):
        self.rows = list(_lines(text))
        self.i = 0

    def row(self, what):
        if self.i >= len(self.rows):
            last = self.rows[-1][0] if self.rows else 1
            raise ParseError(f"unexpected end of input, expected {what}", last + 1, 1)
        r = self.rows[self.i]
        self.i += 1
        return r

    def peek_word(self):
        if self.i < len(self.rows):
            return self.rows[self.i][1][0][1]
        return None

    def ints(self, what, count=None):
        lineno, toks = self.row(what)
        vals = []
        for col, t in toks:
            try:
                vals.append(int(t))
            except ValueError:
                raise ParseError(f"expected an integer in {what}, got {t!r}", lineno, col) from None
        if count is not None and len(vals) != count:
            raise ParseError(f"{what}: expected {count} integers, got {len(vals)}", lineno, toks[0][0])
        return vals

    def done(self):
        if self.i < len(self.rows):
            lineno, toks = self.rows[self.i]
            raise ParseError("trailing content", lineno, toks[0][0])


def _header(reader, word, nargs):
    lineno, toks = reader.row(f"'{word}' header")
    if toks[0][1] != word:
        raise ParseError(f"expected header '{word}', got {toks[0][1]!r}", lineno, toks[0][0])
    if len(toks) - 1 != nargs:
        raise ParseError(f"'{word}' header takes {nargs} arguments", lineno, toks[0][0])
    return lineno, toks[1:]


def _positive(col_tok, lineno):
    col, t = col_tok
    try:
        v = int(t)
    except ValueError:
        raise ParseError(f"expected a positive integer, got {t!r}", lineno, col) from None
    if v < 1:
        raise ParseError(f"expected a positive integer, got {v}", lineno, col)
    return v


def parse_family(text):
    r = _Reader(text)
    lineno, args = _header(r, "gfamily", 2)
    m, n = _positive(args[0], lineno), _positive(args[1], lineno)
    labels = {}
    while r.peek_word() in ("xlabels", "glabels"):
        ln, toks = r.row("labels")
        labels[toks[0][1]] = tuple(t for _, t in toks[1:])
    mul = [r.ints(f"group table row {a}", n) for a in range(n)]
    (e,) = r.ints("identity", 1)
    op = [[r.ints(f"table {g} row {x}", m) for x in range(m)] for g in range(n)]
    r.done()
    return GFamily(FiniteGroup(n, mul, e), m, op, labels.get("xlabels"), labels.get("glabels"))


def format_family(f):
    G = f.group
    out = [f"gfamily {f.size} {G.order}"]
    if f.x_labels:
        out.append("xlabels " + " ".join(f.x_labels))
    if f.g_labels:
        out.append("glabels " + " ".join(f.g_labels))
    out += [" ".join(map(str, row)) for row in G.mul]
    out.append(str(G.identity))
    for g, t in enumerate(f.op):
        out.append(f"# x *_{g} y")
        out += [" ".join(map(str, row)) for row in t]
    return "\n".join(out) + "\n"


def parse_xset(text, family):
    r = _Reader(text)
    lineno, args = _header(r, "xset", 1)
    k = _positive(args[0], lineno)
    n, m = family.group.order, family.size
    bar = [[r.ints(f"action {g} row {y}", m) for y in range(k)] for g in range(n)]
    r.done()
    return XSet(family, k, bar)


def format_xset(s):
    out = [f"xset {s.size}"]
    for g, t in enumerate(s.bar):
        out.append(f"# y bar*_{g} x")
        out += [" ".join(map(str, row)) for row in t]
    return "\n".join(out) + "\n"


def parse_cochain(text, family, xset):
    r = _Reader(text)
    lineno, args = _header(r, "cochain2", 2)
    if args[0][1] != "coeff":
        raise ParseError("expected 'coeff'", lineno, args[0][0])
    col, c = args[1]
    if c == "Z":
        coeffs = AbelianCoefficients(None)
    else:
        coeffs = AbelianCoefficients(_positive(args[1], lineno))
    entries = {}
    k, nq = xset.size, family.quandle_order
    while r.i < len(r.rows):
        ln, toks = r.rows[r.i]
        vals = r.ints("cochain entry", 4)
        y, q1, q2, v = vals
        bounds = (k, nq, nq)
        for (cc, _), val, b in zip(toks, (y, q1, q2), bounds):
            if not 0 <= val < b:
                raise ParseError(f"index {val} out of range 0..{b - 1}", ln, cc)
        if (y, q1, q2) in entries:
            raise ParseError(f"duplicate entry for {(y, q1, q2)}", ln, toks[0][0])
        entries[(y, q1, q2)] = v
    return Cochain2.from_entries(family, xset, coeffs, entries)


def format_cochain(t):
    out = [f"cochain2 coeff {t.coeffs}"]
    out += [f"{y} {q1} {q2} {v}" for (y, q1, q2), v in t.entries()]
    return "\n".join(out) + "\n"
