import itertools
import math

import pytest
from hypothesis import given, strategies as st

from corpus import read
from oracles import family_is_valid, pair_star
from surfquandle.algebra import (
    AbelianCoefficients,
    Cochain2,
    FiniteGroup,
    GFamily,
    XSet,
    canonical_xset,
    cyclic_group,
    format_cochain,
    format_family,
    format_xset,
    group_xset,
    make_alexander_family,
    make_associated_quandle,
    make_dihedral_family,
    make_trivial_family,
    parse_cochain,
    parse_family,
    parse_xset,
    symmetric_group,
    trivial_xset,
    verify_group,
    verify_gfamily,
    verify_quandle,
    verify_xset,
)
from surfquandle.errors import ParseError, StructureError


def laws(report):
    return {v.law for v in report}


def thaw(table):
    return [thaw(t) for t in table] if isinstance(table, (tuple, list)) else table


def mutated(table, index, value):
    t = thaw(table)
    *head, last = index
    row = t
    for i in head:
        row = row[i]
    row[last] = value
    return t


# ---------------------------------------------------------------- groups

def test_cyclic_two_is_a_group():
    assert verify_group(cyclic_group(2)) == []


def test_broken_identity_is_reported():
    g = FiniteGroup(2, [[1, 1], [1, 0]], 0)
    assert "identity" in laws(verify_group(g))


def test_symmetric_three_from_permutation_composition():
    g = symmetric_group(3)
    assert verify_group(g) == []
    perms = list(itertools.permutations(range(3)))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            assert perms[g.mul[i][j]] == tuple(q[p[k]] for k in range(3))
    assert not g.is_abelian()


def test_group_shape_errors_are_structural():
    with pytest.raises(StructureError):
        FiniteGroup(2, [[0, 1]], 0)
    with pytest.raises(StructureError):
        FiniteGroup(2, [[0, 1], [1, 2]], 0)


def test_from_table_finds_identity():
    g = FiniteGroup.from_table([[1, 0], [0, 1]])
    assert g.identity == 1


# ---------------------------------------------------------------- families

def test_dihedral_three_matches_fixture_and_is_valid():
    f = make_dihedral_family(3)
    assert verify_gfamily(f) == []
    assert parse_family(read("dihedral3.fam")) == f
    assert f.op[0] == tuple(tuple(x for _ in range(3)) for x in range(3))


def test_dihedral_values():
    assert make_dihedral_family(3).star(1, 1, 0) == 2
    assert make_dihedral_family(5).star(1, 1, 2) == 3


@pytest.mark.parametrize("m", [1, 2, 4, 0, -3])
def test_dihedral_rejects_even_or_small(m):
    with pytest.raises(ValueError):
        make_dihedral_family(m)


def test_trivial_family_is_valid():
    assert verify_gfamily(make_trivial_family(3, symmetric_group(3))) == []


def test_broken_family_first_violation():
    report = verify_gfamily(parse_family(read("broken.fam")))
    assert str(report[0]) == "(i) at x=0 g=1"


def test_out_of_range_entry_is_structural():
    f = make_dihedral_family(3)
    with pytest.raises(StructureError):
        GFamily(f.group, 3, mutated(f.op, (1, 0, 0), 3))


def test_alexander_family():
    f = make_alexander_family(7, 2)
    assert f.group.order == 3
    assert verify_gfamily(f) == []
    with pytest.raises(ValueError):
        make_alexander_family(6, 2)


def all_single_mutations(f):
    n, m = f.group.order, f.size
    for a, b in itertools.product(range(n), repeat=2):
        for v in range(n):
            if v != f.group.mul[a][b]:
                yield GFamily(FiniteGroup(n, mutated(f.group.mul, (a, b), v), f.group.identity), m, f.op)
    for g, x, y in itertools.product(range(n), range(m), range(m)):
        for v in range(m):
            if v != f.op[g][x][y]:
                yield GFamily(f.group, m, mutated(f.op, (g, x, y), v))


@pytest.mark.parametrize("f", [make_dihedral_family(5), make_alexander_family(5, 2)], ids=["dihedral5", "alexander5"])
def test_every_single_mutation_is_caught(f):
    for bad in all_single_mutations(f):
        assert verify_gfamily(bad), bad


def small_families():
    return st.one_of(
        st.sampled_from([3, 5, 7]).map(make_dihedral_family),
        st.tuples(st.sampled_from([5, 7, 9, 11]), st.integers(2, 8)).filter(
            lambda mt: mt[1] % mt[0] != 1 and math.gcd(*mt) == 1
        ).map(lambda mt: make_alexander_family(*mt)),
        st.tuples(st.integers(1, 3), st.sampled_from([cyclic_group(2), cyclic_group(3), symmetric_group(3)])).map(
            lambda a: make_trivial_family(*a)
        ),
    )


@given(small_families(), st.data())
def test_verifier_agrees_with_direct_axioms_on_perturbed_tables(f, data):
    n, m = f.group.order, f.size
    op = thaw(f.op)
    for _ in range(data.draw(st.integers(0, 2))):
        g, x, y = data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, m - 1), st.integers(0, m - 1)))
        op[g][x][y] = data.draw(st.integers(0, m - 1))
    g2 = GFamily(f.group, m, op)
    assert (verify_gfamily(g2) == []) == family_is_valid(g2)


@given(small_families())
def test_each_operation_is_a_quandle(f):
    for g in range(f.group.order):
        assert verify_quandle(f.op[g]) == []


@given(small_families())
def test_associated_quandle_is_a_quandle(f):
    q = make_associated_quandle(f)
    assert verify_quandle(q.table) == []
    pairs = [(x, g) for x in range(f.size) for g in range(f.group.order)]
    for a in pairs:
        for b in pairs:
            assert q.pair_op(a, b) == pair_star(f, a, b)


# ---------------------------------------------------------------- associated quandle

def test_associated_quandle_values():
    q = make_associated_quandle(make_dihedral_family(3))
    assert q.pair_op((1, 1), (0, 1)) == (2, 1)
    assert q.pair_op((1, 0), (2, 1)) == (0, 0)


@given(small_families(), st.data())
def test_identity_label_acts_trivially(f, data):
    q = make_associated_quandle(f)
    x = data.draw(st.integers(0, f.size - 1))
    y = data.draw(st.integers(0, f.size - 1))
    g = data.draw(st.integers(0, f.group.order - 1))
    assert q.pair_op((x, g), (y, f.group.identity)) == (x, g)


def test_right_division_inverts():
    q = make_associated_quandle(make_alexander_family(7, 2))
    div = q.right_division()
    for a in range(q.order):
        for b in range(q.order):
            assert div[q.op(a, b)][b] == a


# ---------------------------------------------------------------- X-sets

def test_canonical_and_trivial_xsets_are_valid():
    f = make_dihedral_family(3)
    assert verify_xset(canonical_xset(f)) == []
    assert verify_xset(trivial_xset(f)) == []
    assert verify_xset(group_xset(make_trivial_family(2, symmetric_group(3)))) == []
    assert parse_xset(read("dihedral3_self.xset"), f) == canonical_xset(f)
    assert parse_xset(read("dihedral3_point.xset"), f) == trivial_xset(f)


def test_perturbed_xset_is_reported():
    f = make_dihedral_family(3)
    assert verify_xset(XSet(f, 3, mutated(f.op, (0, 0, 1), 2)))


def test_every_single_xset_mutation_is_caught():
    f = make_dihedral_family(3)
    for g, y, x in itertools.product(range(2), range(3), range(3)):
        for v in range(3):
            if v != f.op[g][y][x]:
                assert verify_xset(XSet(f, 3, mutated(f.op, (g, y, x), v)))


def test_xset_shape_errors():
    f = make_dihedral_family(3)
    with pytest.raises(StructureError):
        XSet(f, 3, f.op[:1])
    with pytest.raises(StructureError):
        XSet(f, 2, f.op)


# ---------------------------------------------------------------- cochains and files

def test_cochain_lookup_and_defaults():
    f = make_dihedral_family(3)
    s = canonical_xset(f)
    t = Cochain2.from_entries(f, s, AbelianCoefficients(3), {(0, 1, 2): 5})
    assert t(0, 1, 2) == 2
    assert t(1, 1, 2) == 0
    assert list(t.entries()) == [((0, 1, 2), 2)]
    z = Cochain2.zero(f, s)
    assert z.coeffs.modulus is None and not list(z.entries())


def test_cochain_range_errors():
    f = make_dihedral_family(3)
    s = canonical_xset(f)
    with pytest.raises(StructureError):
        Cochain2.from_entries(f, s, AbelianCoefficients(3), {(3, 0, 0): 1})
    with pytest.raises(StructureError):
        AbelianCoefficients(0)


@given(small_families())
def test_family_round_trip(f):
    assert parse_family(format_family(f)) == f


def test_xset_and_cochain_round_trip():
    f = parse_family(read("dihedral3.fam"))
    s = parse_xset(read("dihedral3_self.xset"), f)
    for name in ("dihedral3_z3.cochain", "dihedral3_zero.cochain"):
        t = parse_cochain(read(name), f, s)
        assert format_cochain(t) == read(name)
        assert parse_cochain(format_cochain(t), f, s) == t
    assert format_xset(s) == read("dihedral3_self.xset")


def test_integer_coefficients_parse():
    f = make_dihedral_family(3)
    s = trivial_xset(f)
    t = parse_cochain("cochain2 coeff Z\n0 1 2 -4\n", f, s)
    assert t(0, 1, 2) == -4 and t.coeffs.modulus is None


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("gfamily 3 2\n0 1\n1 x\n", 3, 3),
        ("gfamily 3\n", 1, 1),
        ("family 3 2\n", 1, 1),
        ("gfamily 3 2\n0 1\n1 0\n", 4, 1),
        ("gfamily 1 1\n0\n0\n0\n7\n", 5, 1),
        ("gfamily 0 1\n", 1, 9),
    ],
)
def test_family_parse_errors_carry_location(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_family(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_family_out_of_range_file_is_structural():
    with pytest.raises(StructureError) as info:
        parse_family("gfamily 1 1\n0\n0\n4\n")
    assert not isinstance(info.value, ParseError)


def test_cochain_parse_errors():
    f = make_dihedral_family(3)
    s = canonical_xset(f)
    with pytest.raises(ParseError) as info:
        parse_cochain("cochain2 coeff 3\n0 0 0 1\n0 6 0 1\n", f, s)
    assert (info.value.line, info.value.column) == (3, 3)
    with pytest.raises(ParseError):
        parse_cochain("cochain2 coeff 3\n0 0 0 1\n0 0 0 2\n", f, s)
    with pytest.raises(ParseError):
        parse_cochain("cochain2 mod 3\n", f, s)


def test_labels_survive_round_trip():
    text = "gfamily 1 2\nxlabels a\nglabels e s\n0 1\n1 0\n0\n0\n0\n"
    f = parse_family(text)
    assert f.x_labels == ("a",) and f.g_labels == ("e", "s")
    assert parse_family(format_family(f)) == f
