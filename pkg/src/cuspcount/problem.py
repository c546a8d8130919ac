"""Problem parsing and validation.

Turns a polygon specification plus a genus and a counting mode into a
validated instance, checking every hypothesis the enumeration relies on
before any paths are generated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from .lattice import (
    LatticePoint,
    LatticePolygon,
    boundary_lattice_points,
    convex_hull,
    interior_lattice_points,
    is_h_transversal,
    primitive_direction,
    segment_length,
)


class Mode(Enum):
    CUSPIDAL = "cuspidal"
    SEVERI = "severi_irreducible"


class ValidationError(ValueError):
    """Base class for instance validation failures (CLI exit code 2)."""


class SpecParseError(ValidationError):
    pass


class DegeneratePolygonError(ValidationError):
    pass


class NotHTransversalError(ValidationError):
    pass


class DegreeTooSmallError(ValidationError):
    pass


class NoQuadrangleWitnessError(ValidationError):
    pass


class GenusRangeError(ValidationError):
    pass


@dataclass(frozen=True)
class DegreeSummary:
    """Per-edge primitive directions and lattice lengths of the Newton polygon."""

    perimeter: int
    edge_data: tuple[tuple[tuple[int, int], int], ...]


@dataclass(frozen=True)
class ProblemInstance:
    polygon: LatticePolygon
    genus: int
    mode: Mode
    p_a: int
    n: int
    degree: DegreeSummary

    @property
    def delta_size(self) -> int:
        return self.degree.perimeter


_POLY_POINT = re.compile(r"\((-?\d+),(-?\d+)\)")


def parse_polygon_spec(spec: str) -> LatticePolygon:
    """Parse ``triangle:<d>`` | ``rect:<a>,<b>`` | ``poly:(x,y),(x,y),...``."""
    spec = spec.strip()
    m = re.fullmatch(r"triangle:(\d+)", spec)
    if m:
        d = int(m.group(1))
        if d < 1:
            raise SpecParseError(f"triangle side must be positive, got {d}")
        return convex_hull(
            [LatticePoint(0, 0), LatticePoint(d, 0), LatticePoint(0, d)]
        )
    m = re.fullmatch(r"rect:(\d+),(\d+)", spec)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a < 1 or b < 1:
            raise SpecParseError(f"rectangle sides must be positive, got {a},{b}")
        return convex_hull(
            [LatticePoint(0, 0), LatticePoint(a, 0), LatticePoint(a, b), LatticePoint(0, b)]
        )
    if spec.startswith("poly:"):
        body = spec[len("poly:"):]
        pts = _POLY_POINT.findall(body)
        if not pts or _POLY_POINT.sub("", body).strip(", ") != "":
            raise SpecParseError(f"malformed poly spec: {spec!r}")
        hull = convex_hull(LatticePoint(int(x), int(y)) for x, y in pts)
        if hull.dimension != 2:
            raise DegeneratePolygonError(
                f"poly spec hull is {hull.dimension}-dimensional, need a genuine polygon"
            )
        return hull
    raise SpecParseError(
        f"unrecognized polygon spec {spec!r}; expected triangle:<d>, rect:<a>,<b> or poly:(x,y),..."
    )


def degree_of(poly: LatticePolygon) -> DegreeSummary:
    """Edge directions/lengths; the perimeter is the boundary lattice length."""
    if poly.dimension != 2:
        raise DegeneratePolygonError("degree data requires a 2-dimensional polygon")
    edge_data = tuple(
        (primitive_direction(a, b), segment_length(a, b)) for a, b in poly.edges()
    )
    return DegreeSummary(perimeter=sum(l for _, l in edge_data), edge_data=edge_data)


def _is_quadrangle_witness(quad: tuple[LatticePoint, ...]) -> bool:
    hull = convex_hull(quad)
    if hull.dimension != 2 or len(hull.vertices) != 4:
        return False
    dirs = [primitive_direction(a, b) for a, b in hull.edges()]
    for u, v in combinations(dirs, 2):
        if u[0] * v[1] - u[1] * v[0] == 0:
            return False
    return True


def has_quadrangle_witness(poly: LatticePolygon) -> Optional[tuple[LatticePoint, ...]]:
    """Some 4-subset of boundary lattice points forming a nondegenerate
    quadrangle with no two sides parallel, or None.

    Exhaustive search with early exit; boundary counts at the scales handled
    here keep this cheap.
    """
    boundary = boundary_lattice_points(poly)
    for quad in combinations(boundary, 4):
        if _is_quadrangle_witness(quad):
            return quad
    return None


def validate_instance(poly: LatticePolygon, genus: int, mode: Mode) -> ProblemInstance:
    """Check every hypothesis for the requested mode and derive n and p_a.

    Cuspidal mode needs an h-transversal polygon of boundary lattice length at
    least 5 carrying a quadrangle witness, and 0 <= genus <= p_a - 1 with
    n = |Delta| + genus - 2.  The nodal baseline mode accepts any
    2-dimensional polygon with 0 <= genus <= p_a and n = |Delta| + genus - 1.
    """
    if poly.dimension != 2:
        raise DegeneratePolygonError(
            "the polygon must be 2-dimensional (a nondegenerate Newton polygon)"
        )
    degree = degree_of(poly)
    p_a = len(interior_lattice_points(poly))
    if mode is Mode.CUSPIDAL:
        if not is_h_transversal(poly):
            raise NotHTransversalError(
                "cuspidal counting requires an h-transversal polygon (every "
                "vertical line must meet it in a point or a lattice segment)"
            )
        if degree.perimeter < 5:
            raise DegreeTooSmallError(
                f"cuspidal counting requires |Delta| >= 5, got {degree.perimeter}"
            )
        if has_quadrangle_witness(poly) is None:
            raise NoQuadrangleWitnessError(
                "no 4-subset of boundary lattice points forms a nondegenerate "
                "quadrangle without parallel edges"
            )
        if not 0 <= genus <= p_a - 1:
            raise GenusRangeError(
                f"cuspidal genus must satisfy 0 <= g <= p_a - 1 = {p_a - 1}, got {genus}"
            )
        n = degree.perimeter + genus - 2
    elif mode is Mode.SEVERI:
        if not 0 <= genus <= p_a:
            raise GenusRangeError(
                f"genus must satisfy 0 <= g <= p_a = {p_a}, got {genus}"
            )
        n = degree.perimeter + genus - 1
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    return ProblemInstance(polygon=poly, genus=genus, mode=mode, p_a=p_a, n=n, degree=degree)
