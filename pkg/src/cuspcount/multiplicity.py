"""Per-subdivision multiplicities, in exact rational arithmetic.

Every subdivision contributes the product of the lattice areas of its
triangles (parallelograms contribute 1), adjusted by a factor that depends on
where the cusp sits: a marked genus-1 edge of weight m contributes theta(m)/m,
a marked quadrangle the lattice area of its originating path triangle, and a
marked trapeze one of the two flat-vertex factors depending on which base the
replaced path vertex touches.
"""

from __future__ import annotations

from fractions import Fraction

from .factors import theta
from .lattice import LatticePoint, segment_length, triangle_area
from .subdivision import (
    MarkedEdge,
    MarkedSubdivision,
    Subdivision,
    Tile,
    TileKind,
)


class MultiplicityError(RuntimeError):
    """Internal inconsistency while computing a multiplicity."""


def _triangle_product(s: Subdivision) -> Fraction:
    base = Fraction(1)
    for t in s.tiles:
        if t.kind is TileKind.TRIANGLE:
            base *= t.area()
    return base


def severi_multiplicity(s: Subdivision) -> Fraction:
    """Product of the lattice areas of all triangles (nodal baseline count)."""
    if s.special is not None:
        raise MultiplicityError(
            "nodal multiplicities are only defined for subdivisions into "
            "triangles and parallelograms"
        )
    return _triangle_product(s)


def _trapeze_bases(t: Tile) -> tuple[tuple[LatticePoint, LatticePoint], tuple[LatticePoint, LatticePoint]]:
    """The parallel side pair of a trapeze, long base first."""
    v = t.vertices
    sides = [(v[i], v[(i + 1) % 4]) for i in range(4)]
    for i in (0, 1):
        (a1, b1), (a2, b2) = sides[i], sides[i + 2]
        d1, d2 = b1 - a1, b2 - a2
        if d1.x * d2.y - d1.y * d2.x == 0:
            if segment_length(a1, b1) >= segment_length(a2, b2):
                return (a1, b1), (a2, b2)
            return (a2, b2), (a1, b1)
    raise MultiplicityError(f"trapeze tile {t} has no parallel side pair")


def cuspidal_multiplicity(pi0, ms: MarkedSubdivision) -> Fraction:
    """Weight of one marked admissible subdivision grown from pi0."""
    s = ms.base
    base = _triangle_product(s)
    marking = ms.marking

    if isinstance(marking, MarkedEdge):
        m = marking.length
        return base * Fraction(theta(m), m)

    if not isinstance(marking, Tile):
        raise MultiplicityError(f"unrecognized marking {marking!r}")
    prov = marking.provenance
    if prov is None:
        raise MultiplicityError("marked tile lacks recursion provenance")

    if marking.kind is TileKind.QUAD_NO_PARALLEL:
        return base * triangle_area(prov.v_prev, prov.v_k, prov.v_next)

    if marking.kind is TileKind.TRAPEZE:
        (la, lb), (sa, sb) = _trapeze_bases(marking)
        m = segment_length(la, lb)
        m1 = segment_length(sa, sb)
        m2 = m - m1
        if prov.v_k in (la, lb):
            return base * Fraction(m + m2, m2)
        return base * Fraction((m + m2) * m1, m * m2)

    raise MultiplicityError(f"tile of kind {marking.kind} cannot carry a marking")
