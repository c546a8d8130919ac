"""Exact integer geometry of lattice points, segments, and convex lattice polygons.

Everything here is computed over arbitrary-precision integers (plain Python
ints) and exact rationals; no floating point is used anywhere.  Areas follow
the lattice normalization: the "lattice area" of a polygon is twice its
Euclidean area, so the smallest lattice triangle has area 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GeometryError(ValueError):
    """Raised for invalid geometric input (empty hulls, non-unimodular maps, ...)."""


@dataclass(frozen=True, slots=True)
class LatticePoint:
    x: int
    y: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True, slots=True)
class LatticeSegment:
    a: LatticePoint
    b: LatticePoint

    @property
    def is_degenerate(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True, slots=True)
class LatticePolygon:
    """Convex lattice polygon in canonical form.

    ``vertices`` are the extreme points in counterclockwise order, starting at
    the lexicographically least vertex.  ``dimension`` is 2 for a genuine
    polygon, 1 for a segment, 0 for a single point and -1 for the empty
    polygon (which has no vertices).
    """

    vertices: tuple[LatticePoint, ...]
    dimension: int

    def edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        """Directed edges in counterclockwise order (empty for dimension < 2)."""
        if self.dimension < 2:
            return []
        verts = self.vertices
        return [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]

    def contains(self, p: LatticePoint) -> bool:
        """Closed membership test."""
        if self.dimension == -1:
            return False
        if self.dimension == 0:
            return p == self.vertices[0]
        if self.dimension == 1:
            a, b = self.vertices
            if cross(b - a, p - a) != 0:
                return False
            return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)
        return all(cross(b - a, p - a) >= 0 for a, b in self.edges())

    def strictly_contains(self, p: LatticePoint) -> bool:
        if self.dimension < 2:
            return False
        return all(cross(b - a, p - a) > 0 for a, b in self.edges())


EMPTY_POLYGON = LatticePolygon(vertices=(), dimension=-1)


def pt(x: int, y: int) -> LatticePoint:
    """Shorthand constructor."""
    return LatticePoint(x, y)


def cross(u: LatticePoint, v: LatticePoint) -> int:
    """Determinant of the 2x2 matrix with rows u, v."""
    return u.x * v.y - u.y * v.x


def orient(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> int:
    """Sign-carrying cross product of (a - o) and (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def convex_hull(points: Iterable[LatticePoint]) -> LatticePolygon:
    """Convex hull of a nonempty point set, in canonical form.

    Uses the monotone-chain scan; collinear points interior to edges are
    discarded so that every stored vertex is a true extreme point.
    """
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if not pts:
        raise GeometryError("convex hull of an empty point set")
    if len(pts) == 1:
        return LatticePolygon(vertices=(pts[0],), dimension=0)

    lower: list[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]

    if len(hull) == 2:
        return LatticePolygon(vertices=(pts[0], pts[-1]), dimension=1)
    return LatticePolygon(vertices=_canonical_start(hull), dimension=2)


def _canonical_start(verts: Sequence[LatticePoint]) -> tuple[LatticePoint, ...]:
    i = min(range(len(verts)), key=lambda k: (verts[k].x, verts[k].y))
    return tuple(verts[i:]) + tuple(verts[:i])


def lattice_area(poly: LatticePolygon) -> int:
    """Twice the Euclidean area (shoelace); 0 for dimension < 2."""
    if poly.dimension < 2:
        return 0
    verts = poly.vertices
    s = 0
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        s += a.x * b.y - b.x * a.y
    return abs(s)


def triangle_area(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> int:
    """Lattice area of a triangle given by its corners."""
    return abs(orient(a, b, c))


def lattice_length(seg: LatticeSegment) -> int:
    """gcd of the coordinate differences; 0 iff degenerate."""
    return math.gcd(abs(seg.b.x - seg.a.x), abs(seg.b.y - seg.a.y))


def segment_length(a: LatticePoint, b: LatticePoint) -> int:
    return math.gcd(abs(b.x - a.x), abs(b.y - a.y))


def primitive_direction(a: LatticePoint, b: LatticePoint) -> tuple[int, int]:
    """Primitive integer vector pointing from a to b."""
    dx, dy = b.x - a.x, b.y - a.y
    g = math.gcd(abs(dx), abs(dy))
    if g == 0:
        raise GeometryError("primitive direction of a degenerate segment")
    return (dx // g, dy // g)


def minkowski_sum(p: LatticePolygon, q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum, computed as the hull of pairwise vertex sums."""
    if p.dimension == -1 or q.dimension == -1:
        return EMPTY_POLYGON
    return convex_hull(a + b for a in p.vertices for b in q.vertices)


def mixed_area(p: LatticePolygon, q: LatticePolygon) -> Fraction:
    """Mixed area normalized so that mixed_area(P, P) == lattice_area(P).

    With this normalization the value equals the Bernstein root count of a
    generic polynomial system whose Newton polygons are P and Q.
    """
    return Fraction(lattice_area(minkowski_sum(p, q)) - lattice_area(p) - lattice_area(q), 2)


def lattice_points(poly: LatticePolygon) -> list[LatticePoint]:
    """All lattice points of the (closed) polygon, sorted lexicographically."""
    if poly.dimension == -1:
        return []
    if poly.dimension == 0:
        return [poly.vertices[0]]
    if poly.dimension == 1:
        a, b = poly.vertices
        g = segment_length(a, b)
        step = primitive_direction(a, b)
        return sorted(
            (LatticePoint(a.x + k * step[0], a.y + k * step[1]) for k in range(g + 1)),
            key=lambda p: (p.x, p.y),
        )
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    found = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = LatticePoint(x, y)
            if poly.contains(p):
                found.append(p)
    return found


def boundary_lattice_points(poly: LatticePolygon) -> list[LatticePoint]:
    """Lattice points on the boundary.

    For a 2-dimensional polygon the list walks the boundary counterclockwise
    starting at the lexicographically least vertex, each point listed once.
    """
    if poly.dimension == -1:
        return []
    if poly.dimension < 2:
        return lattice_points(poly)
    out = []
    for a, b in poly.edges():
        g = segment_length(a, b)
        sx, sy = primitive_direction(a, b)
        for k in range(g):
            out.append(LatticePoint(a.x + k * sx, a.y + k * sy))
    return out


def interior_lattice_points(poly: LatticePolygon) -> list[LatticePoint]:
    """Lattice points strictly inside (empty for dimension < 2)."""
    if poly.dimension < 2:
        return []
    return [p for p in lattice_points(poly) if poly.strictly_contains(p)]


def is_h_transversal(poly: LatticePolygon) -> bool:
    """Whether every vertical line meets the polygon in a point or a segment.

    For a convex polygon this is equivalent to every non-vertical edge having
    a primitive direction (a, b) with |a| = 1: any wider horizontal step would
    make some vertical line cross the edge strictly between lattice points,
    leaving a section that is neither a lattice point nor a lattice segment.
    """
    if poly.dimension != 2:
        raise GeometryError("h-transversality is defined for 2-dimensional polygons")
    for a, b in poly.edges():
        dx, _ = primitive_direction(a, b)
        if abs(dx) > 1:
            return False
    return True


def unimodular_apply(
    matrix: Sequence[Sequence[int]],
    translation: tuple[int, int],
    poly: LatticePolygon,
) -> LatticePolygon:
    """Apply an affine lattice automorphism x -> Mx + t and re-canonicalize."""
    (m00, m01), (m10, m11) = matrix
    if abs(m00 * m11 - m01 * m10) != 1:
        raise GeometryError("matrix is not unimodular")
    tx, ty = translation
    if poly.dimension == -1:
        return EMPTY_POLYGON
    return convex_hull(
        LatticePoint(m00 * v.x + m01 * v.y + tx, m10 * v.x + m11 * v.y + ty)
        for v in poly.vertices
    )


def polygon(points: Iterable[tuple[int, int]]) -> LatticePolygon:
    """Hull of raw coordinate pairs; convenience for tests and the CLI."""
    return convex_hull(LatticePoint(x, y) for x, y in points)
