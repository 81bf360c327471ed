import math

import numpy as np
import pytest

from ballpoly.bp3 import boundary_structure
from ballpoly.exceptions import BadParameters, PreconditionError
from ballpoly.illumination import (
    Frame,
    _widest_gap_midpoint,
    blocking_configuration,
    find_frame,
    gauss_image,
    haar_frame,
    illuminated_by_ray,
    illuminates_frame,
    random_frame_experiment,
)


def test_frame_must_be_orthonormal():
    Frame.standard()
    with pytest.raises(BadParameters):
        Frame([1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0])
    with pytest.raises(BadParameters):
        Frame([1.0, 0.0], [0.0, 1.0], [0.0, 0.0])


@pytest.mark.parametrize('angle', [0.0, 0.3, 1.2])
def test_frame_about_an_axis(angle):
    frame = Frame.about([1.0, 2.0, 2.0], angle)
    np.testing.assert_allclose(frame.u, np.array([1.0, 2.0, 2.0]) / 3.0)
    np.testing.assert_allclose(frame.matrix @ frame.matrix.T, np.eye(3), atol=1e-12)


def test_gauss_image_at_the_blocking_vertex():
    X, _ = blocking_configuration()
    np.testing.assert_allclose(np.linalg.norm(X[:, None] - X[None, :], axis=2)[np.triu_indices(3, 1)], 1.0)
    image = gauss_image(X, np.zeros(3))
    assert image.stratum == 'vertex'
    assert image.diameter == pytest.approx(math.pi / 3, abs=1e-12)
    for e in Frame.standard().matrix:
        assert image.meets(e)


def test_gauss_image_needs_a_boundary_point(unit_tetrahedron):
    with pytest.raises(PreconditionError):
        gauss_image(unit_tetrahedron, unit_tetrahedron.mean(axis=0))
    with pytest.raises(PreconditionError):
        gauss_image(unit_tetrahedron, [5.0, 5.0, 5.0])


def test_gauss_images_of_the_reuleaux_tetrahedron(unit_tetrahedron):
    P = boundary_structure(unit_tetrahedron)
    for v in P.vertices:
        assert gauss_image(unit_tetrahedron, v.point).diameter <= math.pi / 3 + 1e-9
    for e in P.edges:
        image = gauss_image(unit_tetrahedron, e.point(0.5))
        assert image.stratum == 'edge'
        # every point of an edge sees its two centers at unit distance from each other
        assert image.diameter == pytest.approx(math.pi / 3, abs=1e-9)


def test_standard_frame_is_blocked():
    X, frame = blocking_configuration()
    result = illuminates_frame(X, frame)
    assert not result
    assert any(w['stratum'] == 'vertex' and np.allclose(w['point'], 0.0, atol=1e-9) for w in result.witnesses)


@pytest.mark.parametrize('u', [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]])
def test_find_frame_beats_the_blocking_configuration(u):
    X, _ = blocking_configuration()
    frame = find_frame(X, u)
    np.testing.assert_allclose(frame.u, np.asarray(u) / np.linalg.norm(u), atol=1e-12)
    assert illuminates_frame(X, frame).illuminated


@pytest.mark.parametrize('blocked, expected', [
    ([0.0, 0.3], 0.65),
    ([0.9, 0.2], 0.55),
    ([-0.1, 0.1], 0.5),
    ([0.25], 0.75),
])
def test_next_angle_splits_the_widest_gap(blocked, expected):
    assert _widest_gap_midpoint(blocked, 1.0) == pytest.approx(expected, abs=1e-12)


def test_find_frame_moves_away_from_blocked_angles():
    X, _ = blocking_configuration()
    u = [1.0, 0.0, 0.0]
    base = Frame.about(u, 0.0)
    assert not illuminates_frame(X, base)
    frame = find_frame(X, u)
    angle = math.atan2(frame.v @ base.w, frame.v @ base.v) % (math.pi / 2)
    # the vertex generators at o fall on the circles at 0 and pi/4
    for blocked in (0.0, math.pi / 4, math.pi / 2):
        assert abs(angle - blocked) > 1e-3
    assert illuminates_frame(X, frame)


def test_find_frame_on_the_reuleaux_tetrahedron(unit_tetrahedron):
    frame = find_frame(unit_tetrahedron, [0.0, 0.0, 1.0])
    assert illuminates_frame(unit_tetrahedron, frame)


def test_random_frames_illuminate(unit_tetrahedron):
    report = random_frame_experiment(unit_tetrahedron, 25, seed=7)
    assert report['trials'] == 25
    assert report['ratio'] == 1.0
    assert report['failures'] == []


def test_illumination_is_rotation_invariant(unit_tetrahedron, rng):
    for _ in range(5):
        Q = haar_frame(rng).matrix
        frame = haar_frame(rng)
        direct = illuminates_frame(unit_tetrahedron, frame).illuminated
        rotated = illuminates_frame(unit_tetrahedron @ Q.T, frame.rotated(Q)).illuminated
        assert direct == rotated


def test_single_point_and_wide_sets():
    assert illuminates_frame([[0.1, 0.2, 0.3]], Frame.standard())
    with pytest.raises(PreconditionError):
        illuminates_frame([[0.0, 0.0, 0.0], [1.5, 0.0, 0.0]], Frame.standard())


def test_illuminated_by_ray(unit_tetrahedron):
    z = unit_tetrahedron[0]
    inward = unit_tetrahedron.mean(axis=0) - z
    assert illuminated_by_ray(unit_tetrahedron, z, inward)
    assert not illuminated_by_ray(unit_tetrahedron, z, -inward)
