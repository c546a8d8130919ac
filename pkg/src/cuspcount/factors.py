"""Closed-form multiplicity factors for the cuspidal tropical fragments.

The five local fragment types that can carry a cusp are a four-valent vertex
(A), a flat trivalent vertex (B), a genus-1 edge (C), a flat cycle (D) and a
genus-1 vertex (E).  The engine only ever needs A, B and C; the flat-cycle
factor is provided as a standalone calculator, and the genus-1 vertex factor
is intentionally unsupported because it is not computable by combinatorial
means alone.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .lattice import (
    EMPTY_POLYGON,
    LatticePoint,
    LatticePolygon,
    convex_hull,
    mixed_area,
)


class FragmentKind(Enum):
    A_QUADRANGLE = "A_quadrangle"
    B_FLAT_VERTEX = "B_flat_vertex"
    C_ELLIPTIC_EDGE = "C_elliptic_edge"
    D_FLAT_CYCLE = "D_flat_cycle"
    E_ELLIPTIC_VERTEX = "E_elliptic_vertex"


class DegenerateFragmentError(ValueError):
    """Raised when fragment data degenerates (parallel or zero edge vectors)."""


class UnsupportedFragmentError(NotImplementedError):
    """Raised for the genus-1 vertex factor, which has no combinatorial formula."""


def sigma_polygon(p: int, q: int, n: int) -> LatticePolygon:
    """Staircase polygon: hull of {(i, j) : i, j >= 0, p*i + q*j <= n}.

    Degenerate budgets are allowed: n < 0 gives the empty polygon and n = 0
    the origin point, so that the weight formulas below stay total.
    """
    if not 1 <= p <= q:
        raise ValueError(f"require 1 <= p <= q, got p={p}, q={q}")
    if n < 0:
        return EMPTY_POLYGON
    points = [
        LatticePoint(i, j)
        for i in range(n // p + 1)
        for j in range((n - p * i) // q + 1)
    ]
    return convex_hull(points)


@lru_cache(maxsize=None)
def theta(m: int) -> int:
    """Integer weight of a genus-1 edge of weight m.

    theta(1) = theta(2) = 0 and theta(3) = 2; larger weights are mixed areas
    of staircase polygons, scaled so the result is an integer.  Non-integral
    results would mean the mixed-area normalization is wrong, so that case
    raises instead of rounding.
    """
    if m < 1:
        raise ValueError(f"weight must be positive, got {m}")
    if m <= 2:
        return 0
    if m == 3:
        return 2
    k = m // 2
    if m % 2 == 1:
        value = 2 * m * (
            mixed_area(sigma_polygon(2, 3, k), sigma_polygon(2, 3, k + 1))
            + mixed_area(sigma_polygon(1, 2, k - 1), sigma_polygon(1, 2, k))
        )
    else:
        value = 2 * m * (
            mixed_area(sigma_polygon(2, 3, k - 2), sigma_polygon(2, 3, k - 1))
            + mixed_area(sigma_polygon(1, 2, k - 1), sigma_polygon(1, 2, k))
        )
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"theta({m}) evaluated to non-integral value {value}")
    return int(value)


def theta_table(max_m: int) -> dict[int, int]:
    """theta(m) for m = 1..max_m."""
    return {m: theta(m) for m in range(1, max_m + 1)}


def quad_factor(a: tuple[int, int], b: tuple[int, int]) -> int:
    """|det(a, b)| for the two incoming edge vectors of a four-valent vertex."""
    det = a[0] * b[1] - a[1] * b[0]
    if det == 0:
        raise DegenerateFragmentError(
            f"edge vectors {a} and {b} are parallel (or zero); "
            "a four-valent cusp vertex needs four distinct edge lines"
        )
    return abs(det)


def flat_vertex_factor(m1: int, m2: int, case: str) -> Fraction:
    """Flat trivalent vertex factor for edge weights m1, m2 (and m = m1 + m2).

    ``case`` selects the orientation of the fragment relative to the marked
    points: "upper", "middle", or "lower".
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("edge weights must be positive")
    m = m1 + m2
    if case == "upper":
        return Fraction((m + m2) * m1, m * m2)
    if case == "middle":
        return Fraction(m + m2, m)
    if case == "lower":
        return Fraction(m + m2, m2)
    raise ValueError(f"case must be 'upper', 'middle' or 'lower', got {case!r}")


def elliptic_edge_factor(m: int) -> Fraction:
    """theta(m) / m, the weight of a marked genus-1 edge of weight m."""
    return Fraction(theta(m), m)


def flat_cycle_factor(
    mu_v1red: int,
    m: int,
    m1: int,
    m2: int,
    special_even_case: bool = False,
) -> Fraction:
    """Flat-cycle factor; a standalone calculator, never used by the engine.

    For unequal cycle weights the value is
    mu * (mu - m) * (m + m2) * m1 / m^2 with m1 the smaller weight.  For equal
    weights the 3/8-branch applies, with the (mu - m - 2) variant reserved for
    the doubly-even parity case flagged by ``special_even_case``.
    """
    if m != m1 + m2:
        raise ValueError(f"m must equal m1 + m2, got m={m}, m1={m1}, m2={m2}")
    if mu_v1red < m:
        raise ValueError("vertex multiplicity must be at least the cycle weight m")
    if m1 != m2:
        lo, hi = min(m1, m2), max(m1, m2)
        return Fraction(mu_v1red * (mu_v1red - m) * (m + hi) * lo, m * m)
    if special_even_case and m % 4 == 2:
        return Fraction(3 * mu_v1red * (mu_v1red - m - 2), 8)
    return Fraction(3 * mu_v1red * (mu_v1red - m), 8)


def elliptic_vertex_factor(*_args, **_kwargs) -> Fraction:
    """Genus-1 vertex factor: unsupported by design.

    The value is defined through multiplicities of equiclassical strata of
    plane curve singularities, which are not computable from the lattice data
    alone.  For h-transversal inputs the enumeration never needs it.
    """
    raise UnsupportedFragmentError(
        "the genus-1 vertex factor requires stratum multiplicities that have "
        "no combinatorial formula; h-transversal enumeration never needs it"
    )
