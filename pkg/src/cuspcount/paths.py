"""The lambda order on lattice points and streaming enumeration of lambda-paths.

The order sorts points by x ascending, then y descending.  It is the exact
combinatorial limit of the linear functional x - eps*y for infinitesimal
eps > 0; no epsilon is ever materialized as a number, so there are no ties
and no rounding anywhere.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, islice
from typing import Iterator, Optional, Sequence

from .lattice import LatticePoint, LatticePolygon, lattice_points, orient

log = logging.getLogger(__name__)


class Side(Enum):
    PLUS = "plus"
    MINUS = "minus"
    ON = "on"

    @property
    def opposite(self) -> "Side":
        if self is Side.PLUS:
            return Side.MINUS
        if self is Side.MINUS:
            return Side.PLUS
        return Side.ON


def lambda_key(p: LatticePoint) -> tuple[int, int]:
    return (p.x, -p.y)


def lambda_less(p: LatticePoint, q: LatticePoint) -> bool:
    """p precedes q: x ascending, ties broken by y descending."""
    return p.x < q.x or (p.x == q.x and p.y > q.y)


def side_of(u: LatticePoint, w: LatticePoint, p: LatticePoint) -> Side:
    """Which side of the directed segment u -> w the point p lies on.

    Positive cross product means above (PLUS), negative below (MINUS).  For a
    lambda-monotone path, replacing an interior vertex v by the shortcut from
    its neighbors keeps the shortcut inside the closed region on side s of the
    path exactly when side_of(neighbors..., v) is the opposite of s: within
    the shortcut's lambda-range the path has a single breakpoint, so this
    local sign test is equivalent to the ray-containment definition of the
    half regions.
    """
    if not lambda_less(u, w):
        raise ValueError(f"side_of requires u to lambda-precede w, got {u} !< {w}")
    s = orient(u, w, p)
    if s > 0:
        return Side.PLUS
    if s < 0:
        return Side.MINUS
    return Side.ON


@dataclass(frozen=True)
class LambdaPath:
    """A lambda-monotone broken line from the lambda-least to the
    lambda-greatest lattice point of the ambient polygon."""

    points: tuple[LatticePoint, ...]

    def __len__(self) -> int:
        return len(self.points) - 1


def lambda_sorted_points(poly: LatticePolygon) -> list[LatticePoint]:
    return sorted(lattice_points(poly), key=lambda_key)


def make_lambda_path(poly: LatticePolygon, points: Sequence[LatticePoint]) -> LambdaPath:
    """Validated constructor: checks monotonicity, membership and endpoints."""
    pts = lambda_sorted_points(poly)
    point_set = set(pts)
    seq = tuple(points)
    if len(seq) < 2:
        raise ValueError("a lambda-path needs at least two points")
    for a, b in zip(seq, seq[1:]):
        if not lambda_less(a, b):
            raise ValueError(f"path is not strictly lambda-increasing at {a} -> {b}")
    for p in seq:
        if p not in point_set:
            raise ValueError(f"path point {p} is not a lattice point of the polygon")
    if seq[0] != pts[0] or seq[-1] != pts[-1]:
        raise ValueError(
            f"path must run from {pts[0]} to {pts[-1]}, got {seq[0]} .. {seq[-1]}"
        )
    return LambdaPath(points=seq)


def path_count(poly: LatticePolygon, n: int) -> int:
    """Number of lambda-paths of length n: both endpoints are forced, so a
    path is a choice of n - 1 of the remaining points."""
    total = len(lattice_points(poly))
    if n < 1 or n > total - 1:
        return 0
    return math.comb(total - 2, n - 1)


def enumerate_lambda_paths(
    poly: LatticePolygon,
    n: int,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[LambdaPath]:
    """Stream all lambda-paths of length exactly n, each exactly once.

    Canonical order: lexicographic over the point sequences with respect to
    the lambda order, which makes sharding by [start, stop) index ranges
    deterministic.  Out-of-range n yields an empty stream with a logged
    diagnostic.
    """
    pts = lambda_sorted_points(poly)
    if n < 1 or n > len(pts) - 1:
        log.warning(
            "no lambda-paths of length %d in a polygon with %d lattice points",
            n,
            len(pts),
        )
        return
    first, last = pts[0], pts[-1]
    middle = pts[1:-1]
    stream = combinations(middle, n - 1)
    for chosen in islice(stream, start, stop):
        yield LambdaPath(points=(first, *chosen, last))
