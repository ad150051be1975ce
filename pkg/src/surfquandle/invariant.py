"""Stabilization-normalized invariants assembled from coloring counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coloring import count_colorings, phi_theta
from .errors import StructureError


class InvariantError(StructureError):
    pass


def _frac(q):
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalPair:
    """Unordered pair of rationals; stored sorted so equality ignores order."""

    values: tuple

    def __init__(self, a, b):
        object.__setattr__(self, "values", tuple(sorted((Fraction(a), Fraction(b)))))

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return "pair " + " ".join(_frac(v) for v in self.values)


@dataclass(frozen=True)
class NormalizedMultiset:
    entries: tuple  # ((a, multiplicity), ...) sorted by a, multiplicities positive

    @classmethod
    def from_counts(cls, counts, denominator):
        items = sorted((a, Fraction(m, denominator)) for a, m in counts.items() if m)
        return cls(tuple(items))

    def as_dict(self):
        return dict(self.entries)

    def __str__(self):
        return "multiset {" + ", ".join(f"({a}, {_frac(m)})" for a, m in self.entries) + "}"


def _connected_genus(d, what):
    comps = d.components()
    if len(comps) != 1:
        raise InvariantError(f"{what} must be connected, found {len(comps)} components")
    return comps[0].genus


def _two_genera(d):
    comps = d.components()
    if len(comps) != 2:
        raise InvariantError(f"expected a 2-component diagram, found {len(comps)} components")
    return comps[0].genus + comps[1].genus


def normalized_count(d, family, workers=1):
    """Coloring count divided by ``|G|`` to the total genus of the diagram."""
    g = sum(c.genus for c in d.components())
    return Fraction(count_colorings(d, family, workers), family.group.order ** g)


def surface_pair_invariant(dv, dw, family, workers=1):
    n = family.group.order
    gv = _connected_genus(dv, "first diagram")
    gw = _connected_genus(dw, "second diagram")
    return RationalPair(
        Fraction(count_colorings(dv, family, workers), n ** gv),
        Fraction(count_colorings(dw, family, workers), n ** gw),
    )


def link_invariant(d, family, workers=1):
    g = _two_genera(d)
    return Fraction(count_colorings(d, family, workers), family.group.order ** g)


def cocycle_surface_invariant(d, family, xset, cochain, workers=1):
    g = _two_genera(d)
    counts = phi_theta(d, family, xset, cochain, workers)
    return NormalizedMultiset.from_counts(counts, family.group.order ** g)


def linking_number(d):
    """Half the signed count of crossings between the two components."""
    _two_genera(d)
    total = 0
    for c in d.crossings.values():
        if d.arc_component(c.over) != d.arc_component(c.under_in):
            total += c.sign
    if total % 2:
        raise InvariantError(f"signed count of crossings between components is odd ({total})")
    return total // 2


def format_link(q):
    return "link " + _frac(Fraction(q))


def format_lk(n):
    return f"lk {n}"
