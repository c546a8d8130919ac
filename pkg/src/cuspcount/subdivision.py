"""Growing marked admissible subdivisions from a lambda-path.

Starting from a path, two independent phases sweep the regions above and
below it.  Each step locates the first path vertex whose shortcut stays on
the sweeping side, then branches over the legal local moves: cut off a
triangle, reflect into a parallelogram, or (at most once per subdivision)
insert a quadrangle without parallel sides or a trapeze.  A completed pair of
phases is kept only when the produced tiles exactly cover the polygon.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from enum import Enum
from typing import Iterator, Optional, Union

from .lattice import (
    LatticePoint,
    LatticePolygon,
    cross,
    lattice_area,
    orient,
    segment_length,
)
from .paths import LambdaPath, Side, lambda_key
from . import paths


class TileKind(Enum):
    TRIANGLE = "Triangle"
    PARALLELOGRAM = "Parallelogram"
    QUAD_NO_PARALLEL = "QuadNoParallel"
    TRAPEZE = "Trapeze"


SPECIAL_KINDS = (TileKind.QUAD_NO_PARALLEL, TileKind.TRAPEZE)


@dataclass(frozen=True)
class Provenance:
    """Which recursion step created a tile.

    ``v_prev``, ``v_k``, ``v_next`` are the pivot triple on the path before
    the step; ``v_new`` is the inserted vertex (None for a triangle step).
    The multiplicity rules for the special tiles read this data instead of
    re-deriving it from the geometry.
    """

    side: Side
    step_index: int
    v_prev: LatticePoint
    v_k: LatticePoint
    v_next: LatticePoint
    v_new: Optional[LatticePoint]


@dataclass(frozen=True)
class Tile:
    kind: TileKind
    vertices: tuple[LatticePoint, ...]
    provenance: Provenance

    def area(self) -> int:
        verts = self.vertices
        s = 0
        for i in range(len(verts)):
            a, b = verts[i], verts[(i + 1) % len(verts)]
            s += a.x * b.y - b.x * a.y
        return abs(s)


@dataclass(frozen=True)
class Subdivision:
    tiles: tuple[Tile, ...]
    special: Optional[Tile]

    def area(self) -> int:
        return sum(t.area() for t in self.tiles)


@dataclass(frozen=True)
class MarkedEdge:
    a: LatticePoint
    b: LatticePoint

    @property
    def length(self) -> int:
        return segment_length(self.a, self.b)

    @property
    def is_vertical(self) -> bool:
        return self.a.x == self.b.x


@dataclass(frozen=True)
class MarkedSubdivision:
    base: Subdivision
    marking: Union[Tile, MarkedEdge]


@dataclass(frozen=True)
class InteriorEdge:
    """A maximal positive-length intersection segment between two tiles."""

    a: LatticePoint
    b: LatticePoint
    tile_i: int
    side_i: int
    tile_j: int
    side_j: int

    @property
    def length(self) -> int:
        return segment_length(self.a, self.b)


class _PolygonContext:
    """Precomputed lattice data shared by all recursion states."""

    def __init__(self, poly: LatticePolygon):
        self.poly = poly
        self.area = lattice_area(poly)
        self.sorted_points = paths.lambda_sorted_points(poly)
        self.point_set = frozenset(self.sorted_points)
        self.keys = [lambda_key(p) for p in self.sorted_points]

    def window(self, lo: LatticePoint, hi: LatticePoint) -> list[LatticePoint]:
        """Lattice points strictly lambda-between lo and hi."""
        i = bisect_left(self.keys, lambda_key(lo))
        j = bisect_left(self.keys, lambda_key(hi))
        return self.sorted_points[i + 1 : j]


def _ccw(verts: tuple[LatticePoint, ...]) -> tuple[LatticePoint, ...]:
    s = 0
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        s += a.x * b.y - b.x * a.y
    return verts if s > 0 else tuple(reversed(verts))


def _strictly_convex_quad(
    a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint
) -> bool:
    quad = (a, b, c, d)
    signs = []
    for i in range(4):
        o = orient(quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4])
        if o == 0:
            return False
        signs.append(o > 0)
    return len(set(signs)) == 1


def _classify_quad(
    a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint
) -> Optional[TileKind]:
    """Classify the convex quadrilateral with cyclic order (a, b, c, d)."""
    if not _strictly_convex_quad(a, b, c, d):
        return None
    par1 = cross(b - a, d - c) == 0
    par2 = cross(c - b, a - d) == 0
    if par1 and par2:
        return TileKind.PARALLELOGRAM
    if par1 or par2:
        return TileKind.TRAPEZE
    return TileKind.QUAD_NO_PARALLEL


def find_pivot(points: tuple[LatticePoint, ...], side: Side) -> Optional[int]:
    """First interior index whose shortcut stays on the sweeping side.

    Skips collinear triples; returns None when the path is terminal for this
    side.
    """
    want = side.opposite
    for k in range(1, len(points) - 1):
        o = orient(points[k - 1], points[k + 1], points[k])
        if o == 0:
            continue
        got = Side.PLUS if o > 0 else Side.MINUS
        if got is want:
            return k
    return None


def step_candidates(
    points: tuple[LatticePoint, ...],
    k: int,
    side: Side,
    ctx: _PolygonContext,
    special_allowed: bool,
    step_index: int = 0,
) -> list[tuple[Tile, tuple[LatticePoint, ...], bool]]:
    """All legal continuations at pivot k: (tile, new path, uses special budget).

    Candidate order is canonical: triangle, then parallelogram, then the
    special insertions sorted by the lambda order of the inserted vertex.
    """
    v_prev, v_k, v_next = points[k - 1], points[k], points[k + 1]
    out: list[tuple[Tile, tuple[LatticePoint, ...], bool]] = []

    def prov(v_new: Optional[LatticePoint]) -> Provenance:
        return Provenance(side, step_index, v_prev, v_k, v_next, v_new)

    tri = Tile(TileKind.TRIANGLE, _ccw((v_prev, v_k, v_next)), prov(None))
    out.append((tri, points[:k] + points[k + 1 :], False))

    v_par = v_prev + v_next - v_k
    if v_par in ctx.point_set:
        par = Tile(TileKind.PARALLELOGRAM, _ccw((v_prev, v_k, v_next, v_par)), prov(v_par))
        out.append((par, points[:k] + (v_par,) + points[k + 1 :], False))

    if special_allowed:
        for q in ctx.window(v_prev, v_next):
            o = orient(v_prev, v_next, q)
            if o == 0 or (Side.PLUS if o > 0 else Side.MINUS) is not side:
                continue
            kind = _classify_quad(v_prev, v_k, v_next, q)
            if kind not in SPECIAL_KINDS:
                continue
            tile = Tile(kind, _ccw((v_prev, v_k, v_next, q)), prov(q))
            out.append((tile, points[:k] + (q,) + points[k + 1 :], True))
    return out


@dataclass(frozen=True)
class _PhaseOutcome:
    tiles: tuple[Tile, ...]
    special: Optional[Tile]
    area: int
    terminal: tuple[LatticePoint, ...]


def _grow(
    points: tuple[LatticePoint, ...],
    side: Side,
    special_allowed: bool,
    ctx: _PolygonContext,
    step_index: int = 0,
) -> Iterator[_PhaseOutcome]:
    k = find_pivot(points, side)
    if k is None:
        yield _PhaseOutcome(tiles=(), special=None, area=0, terminal=points)
        return
    for tile, new_points, is_special in step_candidates(
        points, k, side, ctx, special_allowed, step_index
    ):
        for rest in _grow(new_points, side, special_allowed and not is_special, ctx, step_index + 1):
            yield _PhaseOutcome(
                tiles=(tile, *rest.tiles),
                special=tile if is_special else rest.special,
                area=tile.area() + rest.area,
                terminal=rest.terminal,
            )


def _canonical_key(tiles: tuple[Tile, ...], special: Optional[Tile]):
    tile_part = tuple(
        sorted(
            (t.kind.value, tuple(sorted(v.as_tuple() for v in t.vertices)))
            for t in tiles
        )
    )
    if special is None:
        return (tile_part, None)
    p = special.provenance
    return (
        tile_part,
        (
            special.kind.value,
            p.v_prev.as_tuple(),
            p.v_k.as_tuple(),
            p.v_next.as_tuple(),
            p.v_new.as_tuple() if p.v_new else None,
        ),
    )


def run_recursion(
    pi0: LambdaPath,
    poly: LatticePolygon,
    special_allowed: bool = True,
    stats: Optional[dict] = None,
) -> Iterator[Subdivision]:
    """All full-coverage subdivisions grown from pi0.

    The plus and minus sweeps share a single special-tile budget.  Outcomes
    whose tiles do not cover the polygon (a sweep went terminal early) are
    dropped here; the remaining admissibility conditions are reported by
    check_admissible.  The forced-pivot recursion is believed injective, but
    outcomes are deduplicated on a canonical serialization as a safety net.
    """
    ctx = _PolygonContext(poly)
    plus = list(_grow(pi0.points, Side.PLUS, special_allowed, ctx))
    minus_by_area: dict[int, list[_PhaseOutcome]] = {}
    for m_out in _grow(pi0.points, Side.MINUS, special_allowed, ctx):
        minus_by_area.setdefault(m_out.area, []).append(m_out)
    seen: set = set()
    for p_out in plus:
        for m_out in minus_by_area.get(ctx.area - p_out.area, ()):
            if p_out.special is not None and m_out.special is not None:
                continue
            tiles = p_out.tiles + m_out.tiles
            special = p_out.special or m_out.special
            key = _canonical_key(tiles, special)
            if key in seen:
                if stats is not None:
                    stats["duplicate_subdivisions"] = stats.get("duplicate_subdivisions", 0) + 1
                continue
            seen.add(key)
            yield Subdivision(tiles=tiles, special=special)


def interior_edges(s: Subdivision) -> list[InteriorEdge]:
    """Maximal positive-length pairwise tile intersections.

    Tile sides may overlap only partially, so sides are decomposed into
    primitive lattice steps first; two tiles meet in the merged run of the
    steps they share.  Two tiles with disjoint interiors meet in at most one
    segment, lying on a single side of each.
    """
    steps: dict[tuple, list[tuple[int, int]]] = {}
    for i, tile in enumerate(s.tiles):
        verts = tile.vertices
        for si in range(len(verts)):
            a, b = verts[si], verts[(si + 1) % len(verts)]
            g = segment_length(a, b)
            dx, dy = (b.x - a.x) // g, (b.y - a.y) // g
            for k in range(g):
                p = (a.x + k * dx, a.y + k * dy)
                q = (a.x + (k + 1) * dx, a.y + (k + 1) * dy)
                key = (p, q) if p < q else (q, p)
                steps.setdefault(key, []).append((i, si))

    shared: dict[tuple[int, int, int, int], list[tuple]] = {}
    for key, owners in steps.items():
        if len(owners) < 2:
            continue
        for (i, si), (j, sj) in combinations(sorted(set(owners)), 2):
            if i != j:
                shared.setdefault((i, si, j, sj), []).append(key)

    out = []
    for (i, si, j, sj), keys in sorted(shared.items()):
        ends = sorted({e for key in keys for e in key})
        out.append(
            InteriorEdge(
                a=LatticePoint(*ends[0]),
                b=LatticePoint(*ends[-1]),
                tile_i=i,
                side_i=si,
                tile_j=j,
                side_j=sj,
            )
        )
    out.sort(key=lambda e: (e.a.as_tuple(), e.b.as_tuple()))
    return out


@dataclass(frozen=True)
class AdmissibilityReport:
    coverage_ok: bool
    boundary_ok: bool
    special_count_ok: bool
    marking_available: bool

    def reasons(self) -> list[str]:
        out = []
        if not self.coverage_ok:
            out.append("coverage")
        if not self.boundary_ok:
            out.append("boundary_vertices")
        if not self.special_count_ok:
            out.append("special_count")
        if not self.marking_available:
            out.append("no_marking")
        return out

    def admissible(self, require_marking: bool) -> bool:
        ok = self.coverage_ok and self.boundary_ok and self.special_count_ok
        return ok and (self.marking_available or not require_marking)


def check_admissible(
    s: Subdivision,
    poly: LatticePolygon,
    edges: Optional[list[InteriorEdge]] = None,
) -> AdmissibilityReport:
    """Report the four admissibility conditions independently.

    Marking availability (a special tile or an interior edge of lattice
    length >= 3) only matters for cuspidal counting; the caller decides
    whether to require it.  ``edges`` may pass precomputed interior edges.
    """
    from .lattice import boundary_lattice_points

    coverage_ok = s.area() == lattice_area(poly)
    tile_vertices = {v for t in s.tiles for v in t.vertices}
    boundary_ok = all(p in tile_vertices for p in boundary_lattice_points(poly))
    special_count = sum(1 for t in s.tiles if t.kind in SPECIAL_KINDS)
    special_count_ok = special_count <= 1
    if edges is None:
        edges = interior_edges(s)
    marking_available = s.special is not None or any(e.length >= 3 for e in edges)
    return AdmissibilityReport(coverage_ok, boundary_ok, special_count_ok, marking_available)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, k):
        self.parent.setdefault(k, k)

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def irreducible(s: Subdivision, edges: Optional[list[InteriorEdge]] = None) -> bool:
    """Whether the dual plane tropical curve is connected.

    Every non-parallelogram tile is one node of the dual curve.  A
    parallelogram is a crossing of two straight strands, so it splits into
    two pass-through wires, one per pair of opposite sides; resolving the
    crossing means the wires are not connected to each other.  The curve is
    connected iff the resulting graph is, with the strand of every wire
    included (an unattached wire is a separate line component).
    """
    uf = _UnionFind()
    nodes = []
    for i, t in enumerate(s.tiles):
        if t.kind is TileKind.PARALLELOGRAM:
            nodes.extend((("w", i, 0), ("w", i, 1)))
        else:
            nodes.append(("t", i))
    for node in nodes:
        uf.add(node)
    if not nodes:
        return False

    def attach(idx: int, side_idx: int):
        t = s.tiles[idx]
        if t.kind is TileKind.PARALLELOGRAM:
            return ("w", idx, side_idx % 2)
        return ("t", idx)

    if edges is None:
        edges = interior_edges(s)
    for e in edges:
        uf.union(attach(e.tile_i, e.side_i), attach(e.tile_j, e.side_j))
    roots = {uf.find(node) for node in nodes}
    return len(roots) == 1


def enumerate_markings(
    s: Subdivision, edges: Optional[list[InteriorEdge]] = None
) -> list[MarkedSubdivision]:
    """One marking for the special tile, else one per distinct interior edge
    of lattice length >= 3 (and none when no such edge exists)."""
    if s.special is not None:
        return [MarkedSubdivision(base=s, marking=s.special)]
    if edges is None:
        edges = interior_edges(s)
    out = []
    seen = set()
    for e in edges:
        key = (e.a.as_tuple(), e.b.as_tuple())
        if e.length >= 3 and key not in seen:
            seen.add(key)
            out.append(MarkedSubdivision(base=s, marking=MarkedEdge(a=e.a, b=e.b)))
    return out
