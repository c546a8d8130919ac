import random
from fractions import Fraction

import pytest

from cuspcount.factors import (
    DegenerateFragmentError,
    UnsupportedFragmentError,
    elliptic_edge_factor,
    elliptic_vertex_factor,
    flat_cycle_factor,
    flat_vertex_factor,
    quad_factor,
    sigma_polygon,
    theta,
    theta_table,
)
from cuspcount.lattice import convex_hull, lattice_area, lattice_points, pt


def test_sigma_polygon_examples():
    assert set(sigma_polygon(2, 3, 3).vertices) == {pt(0, 0), pt(1, 0), pt(0, 1)}
    assert set(sigma_polygon(1, 2, 2).vertices) == {pt(0, 0), pt(2, 0), pt(0, 1)}
    assert sigma_polygon(2, 3, 0).vertices == (pt(0, 0),)
    assert sigma_polygon(2, 3, -1).dimension == -1


def test_sigma_polygon_rejects_bad_weights():
    with pytest.raises(ValueError):
        sigma_polygon(3, 2, 5)
    with pytest.raises(ValueError):
        sigma_polygon(0, 1, 5)


def test_theta_base_cases():
    assert theta(1) == 0
    assert theta(2) == 0
    assert theta(3) == 2


def _mixed_oracle(a_pts, b_pts):
    """Mixed area via all-lattice-point Minkowski sums (independent route)."""
    if not a_pts or not b_pts:
        return Fraction(0)
    def area(points):
        return lattice_area(convex_hull(points))
    sums = [p + q for p in a_pts for q in b_pts]
    return Fraction(area(sums) - area(a_pts) - area(b_pts), 2)


def _sigma_points(p, q, n):
    if n < 0:
        return []
    return [pt(i, j) for i in range(n // p + 1) for j in range((n - p * i) // q + 1)]


def test_theta_4_and_5_against_independent_oracle():
    # frozen values, recomputed here through the brute-force Minkowski route
    def oracle(m):
        k = m // 2
        if m % 2 == 1:
            pairs = [((2, 3, k), (2, 3, k + 1)), ((1, 2, k - 1), (1, 2, k))]
        else:
            pairs = [((2, 3, k - 2), (2, 3, k - 1)), ((1, 2, k - 1), (1, 2, k))]
        total = sum(
            (_mixed_oracle(_sigma_points(*a), _sigma_points(*b)) for a, b in pairs),
            Fraction(0),
        )
        return 2 * m * total

    assert theta(4) == oracle(4) == 8
    assert theta(5) == oracle(5) == 20


def test_theta_integral_up_to_30():
    table = theta_table(30)
    for m, value in table.items():
        assert isinstance(value, int)
        assert value >= 0
    assert table[3] == 2


def test_theta_rejects_nonpositive():
    with pytest.raises(ValueError):
        theta(0)


@pytest.mark.parametrize(
    "a,b,value",
    [((1, 0), (0, 1), 1), ((1, 2), (2, 3), 1), ((1, 2), (2, 1), 3)],
)
def test_quad_factor(a, b, value):
    assert quad_factor(a, b) == value


def test_quad_factor_rejects_parallel():
    with pytest.raises(DegenerateFragmentError):
        quad_factor((2, 4), (1, 2))
    with pytest.raises(DegenerateFragmentError):
        quad_factor((0, 0), (1, 1))


def test_quad_factor_symmetric_and_unimodular_invariant():
    rng = random.Random(11)
    for _ in range(100):
        a = (rng.randint(-5, 5), rng.randint(-5, 5))
        b = (rng.randint(-5, 5), rng.randint(-5, 5))
        if a[0] * b[1] - a[1] * b[0] == 0:
            continue
        assert quad_factor(a, b) == quad_factor(b, a)
        # shear is unimodular
        k = rng.randint(-3, 3)
        sa = (a[0], a[1] + k * a[0])
        sb = (b[0], b[1] + k * b[0])
        assert quad_factor(sa, sb) == quad_factor(a, b)


def test_flat_vertex_factor_values():
    assert flat_vertex_factor(1, 1, "lower") == 3
    assert flat_vertex_factor(1, 1, "upper") == Fraction(3, 2)
    assert flat_vertex_factor(1, 1, "middle") == Fraction(3, 2)


def test_flat_vertex_factor_identity():
    for m1 in range(1, 6):
        for m2 in range(1, 6):
            m = m1 + m2
            upper = flat_vertex_factor(m1, m2, "upper")
            lower = flat_vertex_factor(m1, m2, "lower")
            assert upper == lower * Fraction(m1, m)


def test_flat_vertex_factor_bad_case():
    with pytest.raises(ValueError):
        flat_vertex_factor(1, 1, "sideways")


def test_elliptic_edge_factor():
    assert elliptic_edge_factor(3) == Fraction(2, 3)
    assert elliptic_edge_factor(1) == 0
    assert elliptic_edge_factor(2) == 0
    assert elliptic_edge_factor(5) == Fraction(theta(5), 5)


def test_flat_cycle_factor_values():
    assert flat_cycle_factor(3, 2, 1, 1, False) == Fraction(9, 8)
    assert flat_cycle_factor(6, 3, 1, 2, False) == 10
    assert flat_cycle_factor(4, 2, 1, 1, True) == 0


def test_flat_cycle_factor_rejects_inconsistent_weights():
    with pytest.raises(ValueError):
        flat_cycle_factor(6, 4, 1, 2, False)
    with pytest.raises(ValueError):
        flat_cycle_factor(2, 3, 1, 2, False)


def test_elliptic_vertex_factor_unsupported():
    with pytest.raises(UnsupportedFragmentError):
        elliptic_vertex_factor(5)


def test_sigma_points_match_polygon():
    for p, q, n in [(2, 3, 7), (1, 2, 5), (2, 3, 1)]:
        hull = sigma_polygon(p, q, n)
        assert set(lattice_points(hull)) == set(_sigma_points(p, q, n))
