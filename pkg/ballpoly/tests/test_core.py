import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ballpoly.core import (
    UNDEFINED,
    Ball,
    SubSphereKind,
    Tolerance,
    TriangleClass,
    arc_distance,
    circumball,
    circumball_support,
    circumsphere,
    classify_arc_triangle,
    in_ball_intersection,
    in_convex_hull,
    intersect_spheres,
    invert,
    quadrilateral_excess,
    regular_simplex,
    spindle_contains,
    unique_points,
)
from ballpoly.exceptions import BadParameters, DegenerateConfiguration, DimensionMismatch, EmptyInput

coords = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def test_tolerance_ordering_enforced():
    with pytest.raises(BadParameters):
        Tolerance(eps_geom=1e-12, eps_opt=1e-9)
    with pytest.raises(BadParameters):
        Tolerance(eps_geom=1e-2)
    assert Tolerance.from_config(eps_geom=1e-7).eps_geom == 1e-7


@pytest.mark.parametrize('a, b, expected', [
    ([0, 0], [0, 0], 0.0),
    ([-1, 0], [1, 0], math.pi),
    ([0, 0], [1, 0], math.pi / 3),
    ([0, 0, 0], [0, 0, 1], math.pi / 3),
])
def test_arc_distance_values(a, b, expected):
    assert arc_distance(a, b) == pytest.approx(expected, abs=1e-15)


def test_arc_distance_undefined_and_clamped():
    assert arc_distance([0, 0], [2.5, 0]) is UNDEFINED
    assert arc_distance([0, 0], [2.0 + 1e-10, 0]) == pytest.approx(math.pi)
    with pytest.raises(DimensionMismatch):
        arc_distance([0, 0], [0, 0, 0])


@given(arrays(float, (3, 2), elements=coords))
@settings(max_examples=200, deadline=None)
def test_arc_distance_monotone_in_chord(P):
    a, b, c = P
    ab, ac = np.linalg.norm(a - b), np.linalg.norm(a - c)
    assert arc_distance(a, b) == pytest.approx(arc_distance(b, a), abs=1e-15)
    if ab + 1e-9 < ac <= 2.0:
        assert arc_distance(a, b) < arc_distance(a, c)


def test_classify_arc_triangle_examples():
    a, c = np.array([0.0, 0.0]), np.array([1.0, 0.0])
    assert classify_arc_triangle(a, a, c) == TriangleClass.EQUAL
    assert classify_arc_triangle(a, [0.5, 0.0], c) == TriangleClass.LESS
    assert classify_arc_triangle(a, [0.5, 0.9], c) == TriangleClass.GREATER
    with pytest.raises(BadParameters):
        classify_arc_triangle(a, [3.0, 0.0], c)


def test_trichotomy_agrees_with_spindle_membership(rng):
    compared = 0
    while compared < 10000:
        a, b, c = rng.uniform(-1.0, 1.0, size=(3, 2))
        if max(np.linalg.norm(a - b), np.linalg.norm(b - c), np.linalg.norm(a - c)) > 2.0:
            continue
        excess = arc_distance(a, b) + arc_distance(b, c) - arc_distance(a, c)
        if abs(excess) < 1e-6:
            continue
        compared += 1
        verdict = classify_arc_triangle(a, b, c)
        if verdict == TriangleClass.LESS:
            assert spindle_contains(a, c, b, closed=False)
        else:
            assert verdict == TriangleClass.GREATER
            assert not spindle_contains(a, c, b)


@pytest.mark.parametrize('x, expected', [
    ([0.0, 1.0], True),
    ([0.0, -1.0], True),
    ([0.0, 1.01], False),
])
def test_spindle_of_diametral_pair_is_a_ball(x, expected):
    assert spindle_contains([-1, 0], [1, 0], x) is expected


def test_spindle_boundary_height():
    a, b = [0.0, 0.0], [1.0, 0.0]
    # arcs through a and b reach height 1 - sqrt(3)/2 = 0.13397... at the midpoint
    assert spindle_contains(a, b, [0.5, 0.1339])
    assert not spindle_contains(a, b, [0.5, 0.1341])
    assert not spindle_contains(a, b, [0.5, 0.9])
    assert spindle_contains(a, b, a)
    assert not spindle_contains(a, b, a, closed=False)
    assert spindle_contains(a, [3.0, 0.0], [100.0, 100.0])


def test_spindle_matches_ball_intersection_oracle(rng):
    a, b = np.array([0.0, 0.0]), np.array([1.2, 0.3])
    # centers of unit disks containing a and b form a lens; distance is maximized on its boundary
    t = np.linspace(0.0, 2.0 * math.pi, 20000, endpoint=False)
    circle = np.column_stack([np.cos(t), np.sin(t)])
    rim = np.vstack([a + circle, b + circle])
    rim = rim[(np.linalg.norm(rim - a, axis=1) <= 1.0 + 1e-12) & (np.linalg.norm(rim - b, axis=1) <= 1.0 + 1e-12)]
    corners = intersect_spheres([Ball(a, 1.0), Ball(b, 1.0)]).points()
    centers = np.vstack([rim, corners])
    for x in rng.uniform(-0.5, 1.7, size=(200, 2)):
        reach = np.max(np.linalg.norm(centers - x, axis=1))
        if abs(reach - 1.0) < 1e-3:
            continue
        assert spindle_contains(a, b, x) == (reach <= 1.0)


def test_quadrilateral_diagonals_are_longer():
    square = 0.4 * np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
    assert quadrilateral_excess(*square) > 0


@pytest.mark.parametrize('X, center, radius', [
    ([[-1, 0], [1, 0]], [0, 0], 1.0),
    ([[0, 0], [2, 0], [1, 0.1]], [1, 0], 1.0),
    ([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]], [0.5, math.sqrt(3) / 6], 1 / math.sqrt(3)),
])
def test_circumball_examples(X, center, radius):
    ball = circumball(X)
    np.testing.assert_allclose(ball.center, center, atol=1e-12)
    assert ball.radius == pytest.approx(radius, abs=1e-12)


def test_circumball_singleton_and_empty():
    ball = circumball([[0.3, 0.4]])
    assert ball.degenerate and ball.radius == 0.0
    with pytest.raises(EmptyInput):
        circumball([])


def test_circumball_of_unit_tetrahedron(unit_tetrahedron):
    ball = circumball(unit_tetrahedron)
    assert ball.radius == pytest.approx(math.sqrt(3.0 / 8.0), abs=1e-12)
    assert len(circumball_support(unit_tetrahedron, ball)) == 4


def test_circumball_move_to_front_agrees_with_enumeration(rng):
    P = rng.normal(size=(40, 3))
    ball = circumball(P)
    small = circumball(P[circumball_support(P, ball)])
    assert ball.radius == pytest.approx(small.radius, abs=1e-9)
    assert np.all(np.linalg.norm(P - ball.center, axis=1) <= ball.radius + 1e-9)


def test_circumsphere_requires_independent_points():
    sphere = circumsphere([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    np.testing.assert_allclose(sphere.center, [1 / 3, 1 / 3, 1 / 3], atol=1e-12)
    with pytest.raises(DegenerateConfiguration):
        circumsphere([[0, 0], [1, 0], [2, 0]])


@pytest.mark.parametrize('x, expected', [
    ([0.0, 0.0], True),
    ([0.0, 0.9], False),
])
def test_in_ball_intersection(x, expected):
    assert in_ball_intersection([[-1, 0], [1, 0]], 1.0, x) is expected


def test_in_ball_intersection_edge_cases():
    assert in_ball_intersection([[0, 0]], 1.0, [0, 0])
    assert in_ball_intersection(np.zeros((0, 2)), 1.0, [5, 5])
    assert not in_ball_intersection([[0, 0]], 1.0, [1, 0], closed=False)


def test_two_unit_spheres_at_distance_one():
    s = intersect_spheres([Ball([0, 0, 0], 1.0), Ball([1, 0, 0], 1.0)])
    assert s.kind == SubSphereKind.SPHERE
    assert s.intrinsic_dim == 1
    assert s.radius == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    np.testing.assert_allclose(s.center, [0.5, 0, 0], atol=1e-12)


def test_tangent_spheres_meet_in_a_point():
    s = intersect_spheres([Ball([0, 0, 0], 1.0), Ball([2, 0, 0], 1.0)])
    assert s.kind == SubSphereKind.POINT
    assert s.intrinsic_dim == 0
    assert s.to_dict()['intrinsic_dim'] == 0
    np.testing.assert_allclose(s.points(), [[1, 0, 0]], atol=1e-9)
    np.testing.assert_allclose(s.center, [1, 0, 0], atol=1e-9)


def test_far_spheres_do_not_meet():
    assert intersect_spheres([Ball([0, 0], 1.0), Ball([3, 0], 1.0)]).is_empty


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_simplex_family_meets_at_circumcenter(n):
    family = [Ball(v, 1.0) for v in regular_simplex(n)]
    s = intersect_spheres(family)
    assert s.kind == SubSphereKind.POINT
    np.testing.assert_allclose(s.center, np.zeros(n), atol=1e-9)


def test_intersect_spheres_is_order_invariant(rng):
    centers = rng.uniform(-0.4, 0.4, size=(3, 3))
    family = [Ball(c, 1.0) for c in centers]
    first = intersect_spheres(family)
    second = intersect_spheres(family[::-1])
    assert first.kind == second.kind == SubSphereKind.SPHERE
    assert first.intrinsic_dim == second.intrinsic_dim == 0
    np.testing.assert_allclose(first.center, second.center, atol=1e-9)
    assert first.radius == pytest.approx(second.radius, abs=1e-9)
    for p in first.points():
        assert np.allclose(np.linalg.norm(centers - p, axis=1), 1.0, atol=1e-9)


def test_in_convex_hull():
    square = [[0, 0], [1, 0], [1, 1], [0, 1]]
    assert in_convex_hull(square, [0.5, 0.5])
    assert in_convex_hull(square, [1, 1])
    assert not in_convex_hull(square, [1.1, 0.5])


def test_regular_simplex_has_equal_edges():
    V = regular_simplex(4, circumradius=2.0)
    D = np.linalg.norm(V[:, None] - V[None, :], axis=2)
    edges = D[np.triu_indices(5, 1)]
    assert np.allclose(edges, edges[0])
    assert np.allclose(np.linalg.norm(V, axis=1), 2.0)


def test_invert():
    np.testing.assert_allclose(invert([2, 0], [0, 0], 1.0), [0.5, 0])
    np.testing.assert_allclose(invert(invert([0.3, 0.7], [1, 1], 2.0), [1, 1], 2.0), [0.3, 0.7])
    with pytest.raises(BadParameters):
        invert([1, 1], [1, 1], 1.0)


def test_unique_points_keeps_first():
    P = unique_points([[0, 0], [1e-12, 0], [1, 0]])
    assert P.shape == (2, 2)
