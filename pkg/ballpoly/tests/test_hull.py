import math

import numpy as np
import pytest

from ballpoly.exceptions import NoHemisphere, NotInHull, OutOfScope, SizeCapExceeded, Unsupported
from ballpoly.hull import (
    ArcBoundary2,
    SingleBall,
    SphericalRegion,
    WholePlane,
    caratheodory_steinitz_reduce,
    colorful_transversal,
    contact_region,
    es_search,
    farthest_from_dual,
    spherical_hull_contains,
    spindle_hull_2d,
    spindle_hull_contains,
    spindle_position,
    strengthened_caratheodory,
)


def hexagon(radius=0.4):
    t = np.arange(6) * math.pi / 3
    return radius * np.column_stack([np.cos(t), np.sin(t)])


def test_reuleaux_hull(reuleaux_centers):
    H = spindle_hull_2d(reuleaux_centers)
    assert isinstance(H, ArcBoundary2)
    assert H.size == 3
    assert H.perimeter() == pytest.approx(math.pi, abs=1e-12)
    # each arc is centered at the opposite vertex
    for k in range(3):
        a, b = H.chord(k)
        opposite = [v for v in reuleaux_centers if not (np.allclose(v, a) or np.allclose(v, b))][0]
        np.testing.assert_allclose(H.arc_centers[k], opposite, atol=1e-12)


def test_two_point_hull_is_the_spindle():
    H = spindle_hull_2d([[0.0, 0.0], [1.0, 0.0]])
    assert H.size == 2
    assert H.perimeter() == pytest.approx(2 * math.pi / 3, abs=1e-12)
    assert H.contains([0.5, 0.1339])
    assert not H.contains([0.5, 0.1341])


@pytest.mark.parametrize('X, kind', [
    ([[0.0, 0.0], [3.0, 0.0]], WholePlane),
    ([[-1.0, 0.0], [1.0, 0.0]], SingleBall),
    ([[0.2, 0.2]], ArcBoundary2),
])
def test_hull_special_cases(X, kind):
    assert isinstance(spindle_hull_2d(X), kind)


def test_interior_points_are_not_vertices(reuleaux_centers):
    X = np.vstack([reuleaux_centers, reuleaux_centers.mean(axis=0), [0.5, 0.05]])
    H = spindle_hull_2d(X)
    assert H.size == 3


def test_spindle_hull_contains_near_boundary():
    X = [[0.0, 0.0], [1.0, 0.0]]
    assert spindle_hull_contains(X, [0.5, 0.1339])
    assert not spindle_hull_contains(X, [0.5, 0.1341])
    assert spindle_hull_contains(X, [0.0, 0.0])


def test_farthest_from_dual():
    assert farthest_from_dual([[0.0, 0.0], [3.0, 0.0]], [0.0, 0.0]) is None
    assert farthest_from_dual([[0.0, 0.0]], [0.5, 0.0]) == pytest.approx(1.5)
    with pytest.raises(Unsupported):
        farthest_from_dual(np.zeros((2, 4)) + np.eye(4)[:2] * 0.1, np.zeros(4))


def test_arc_hull_agrees_with_dual_oracle(rng):
    compared = 0
    for _ in range(40):
        radii = 0.45 * np.sqrt(rng.uniform(size=5))
        angles = rng.uniform(0, 2 * math.pi, size=5)
        X = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        H = spindle_hull_2d(X)
        for p in rng.uniform(-0.6, 0.6, size=(25, 2)):
            margin = abs(np.max(np.linalg.norm(H.arc_centers - p, axis=1)) - 1.0)
            reach = farthest_from_dual(X, p)
            if margin < 1e-6 or abs(reach - 1.0) < 1e-6:
                continue
            compared += 1
            assert H.contains(p) == spindle_hull_contains(X, p)
    assert compared > 500


def test_boundary_samples_lie_in_the_hull(reuleaux_centers):
    H = spindle_hull_2d(reuleaux_centers)
    for p in H.arc_points(8):
        assert spindle_hull_contains(reuleaux_centers, p)
    incoming, outgoing = H.normal_cone(0)
    assert np.linalg.norm(incoming) == pytest.approx(1.0)
    assert np.linalg.norm(outgoing) == pytest.approx(1.0)


def test_caratheodory_bounds(reuleaux_centers):
    X = np.vstack([reuleaux_centers, [0.5, 0.3], [0.4, 0.2]])
    inner = caratheodory_steinitz_reduce(X, [0.5, 0.29])
    assert 1 <= len(inner) <= 3
    assert spindle_hull_contains(X[list(inner)], [0.5, 0.29])
    H = spindle_hull_2d(X)
    on_arc = H.arc_points(4)[1]
    assert len(caratheodory_steinitz_reduce(X, on_arc)) <= 2
    with pytest.raises(NotInHull):
        caratheodory_steinitz_reduce(X, [2.0, 2.0])


def test_strengthened_caratheodory(reuleaux_centers):
    assert strengthened_caratheodory(reuleaux_centers, reuleaux_centers.mean(axis=0)) == ('conv', None)
    # just below the bottom edge, inside the Reuleaux bulge
    kind, Q = strengthened_caratheodory(reuleaux_centers, [0.5, -0.1])
    assert kind == 'spindle'
    assert len(Q) <= 2
    with pytest.raises(NotInHull):
        strengthened_caratheodory(reuleaux_centers, [0.5, -0.2])


def test_colorful_transversal():
    base = hexagon(0.3)
    classes = [base[[0, 2, 4]], base[[1, 3, 5]], np.vstack([base[[0, 3]], [0.0, 0.3]])]
    choice = colorful_transversal(classes, [0.0, 0.0])
    T = np.vstack([classes[k][i] for k, i in enumerate(choice)])
    assert spindle_hull_contains(T, [0.0, 0.0])


def test_spindle_position(reuleaux_centers):
    assert spindle_position(reuleaux_centers)
    assert not spindle_position(np.vstack([reuleaux_centers, reuleaux_centers.mean(axis=0)]))
    with pytest.raises(OutOfScope):
        spindle_position([[0.0, 0.0], [5.0, 0.0]])


def test_es_search():
    A = np.vstack([hexagon(), [0.0, 0.0]])
    assert es_search(A, 4) == (0, 1, 2, 3)
    assert es_search(A, 7) is None
    with pytest.raises(SizeCapExceeded):
        es_search(np.zeros((21, 2)) + np.linspace(0, 0.1, 21)[:, None], 3)


def test_spherical_region():
    R = SphericalRegion(np.zeros(3), 1.0, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert spherical_hull_contains(R, [1, 1, 1])
    assert not spherical_hull_contains(R, [1, 1, -0.5])
    assert not spherical_hull_contains(R, [-1, -1, -1])
    with pytest.raises(NoHemisphere):
        SphericalRegion(np.zeros(2), 1.0, [[1, 0], [-1, 0]]).pole


def test_contact_region():
    X = [[1.0, 0.0], [0.0, 1.0], [0.3, 0.3]]
    R = contact_region(X, [0.0, 0.0])
    assert R.generators.shape == (2, 2)
    assert spherical_hull_contains(R, [1.0, 1.0])
