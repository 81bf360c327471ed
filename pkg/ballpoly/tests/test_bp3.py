import math

import numpy as np
import pytest

from ballpoly.bp3 import (
    FaceLattice,
    approximate_polyhedron,
    boundary_structure,
    euler_and_graph_checks,
    face_lattice_isomorphic,
    farthest_point_3d,
    polytope_fixture,
    reduce_family_3d,
    spindle_hull_of_edges_check,
    standardness_and_lattice,
    support_value_3d,
)
from ballpoly.exceptions import BadParameters, EmptyIntersection, NotCoCircular

TRIANGLE = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, math.sqrt(3) / 2, 0.0]])


def test_reuleaux_tetrahedron_structure(unit_tetrahedron):
    P = boundary_structure(unit_tetrahedron)
    assert P.counts == {'V': 4, 'E': 6, 'F': 4}
    assert not P.seams
    # the vertices are the centers themselves
    found = np.array(sorted(tuple(v.point) for v in P.vertices))
    np.testing.assert_allclose(found, np.array(sorted(map(tuple, unit_tetrahedron))), atol=1e-9)
    for e in P.edges:
        assert e.radius < 1.0
        assert 0 < e.sweep < math.pi
        for x in e.samples(5):
            assert np.all(np.linalg.norm(unit_tetrahedron - x, axis=1) <= 1.0 + 1e-9)


def test_reuleaux_tetrahedron_is_standard(unit_tetrahedron):
    P = boundary_structure(unit_tetrahedron)
    report = standardness_and_lattice(P)
    assert report.standard
    assert report.lattice.is_lattice()
    assert report.lattice.is_atomic()
    checks = euler_and_graph_checks(P, report.standard)
    assert checks['chi'] == 2
    assert checks['simple'] and checks['planar'] and checks['three_connected']
    assert checks['embedded_faces'] == 4


def test_three_balls_are_not_standard():
    P = boundary_structure(TRIANGLE)
    assert P.counts == {'V': 2, 'E': 3, 'F': 3}
    report = standardness_and_lattice(P)
    assert not report.standard
    assert report.witness['reason'] == 'sphere_intersection_not_a_point'
    checks = euler_and_graph_checks(P, report.standard)
    assert checks['chi'] == 2
    assert not checks['simple']
    assert not checks['three_connected']


def test_two_balls_meet_along_a_seam():
    P = boundary_structure([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    assert P.counts == {'V': 0, 'E': 0, 'F': 2}
    assert len(P.seams) == 1
    assert P.edges[0].radius == pytest.approx(math.sqrt(3) / 2)
    assert standardness_and_lattice(P).witness == {'reason': 'seam', 'spheres': [0, 1]}


def test_boundary_structure_needs_two_balls():
    with pytest.raises(BadParameters):
        boundary_structure([[0.0, 0.0, 0.0]])
    with pytest.raises(EmptyIntersection):
        boundary_structure([[0.0, 0.0, 0.0], [3.0, 0.0, 0.0]])


def test_redundant_ball_is_removed(unit_tetrahedron):
    C = reduce_family_3d(np.vstack([unit_tetrahedron, unit_tetrahedron.mean(axis=0)]))
    assert C.shape == (4, 3)


def test_extreme_points_of_the_reuleaux_tetrahedron(unit_tetrahedron):
    far, dist = farthest_point_3d(unit_tetrahedron, unit_tetrahedron[0])
    assert dist == pytest.approx(1.0, abs=1e-9)
    value, point = support_value_3d(unit_tetrahedron, [0.0, 0.0, 1.0])
    assert value == pytest.approx(point[2])
    assert np.all(np.linalg.norm(unit_tetrahedron - point, axis=1) <= 1.0 + 1e-9)
    # one unit ball
    assert support_value_3d([[0.0, 0.0, 0.0]], [0.0, 0.0, 2.0])[0] == pytest.approx(1.0)


def test_face_lattice_of_a_tetrahedron():
    V, faces = polytope_fixture('tetrahedron')
    L = FaceLattice.from_polytope(V, faces)
    assert len(L) == 1 + 4 + 6 + 4 + 1
    assert len(L.atoms()) == 4
    assert L.is_lattice() and L.is_atomic()
    assert L.meet(frozenset(faces[0]), frozenset(faces[1])) == frozenset(faces[0]) & frozenset(faces[1])
    cube = FaceLattice.from_polytope(*polytope_fixture('cube'))
    assert not face_lattice_isomorphic(L, cube)


def test_reuleaux_lattice_matches_the_tetrahedron(unit_tetrahedron):
    report = standardness_and_lattice(boundary_structure(unit_tetrahedron))
    assert face_lattice_isomorphic(report.lattice, FaceLattice.from_polytope(*polytope_fixture('tetrahedron')))


@pytest.mark.parametrize('name, counts', [
    ('cube', {'V': 8, 'E': 12, 'F': 6}),
    ('octahedron', {'V': 6, 'E': 12, 'F': 8}),
])
def test_polytope_approximation_has_the_same_face_lattice(name, counts):
    V, faces = polytope_fixture(name)
    result = approximate_polyhedron(V, faces, 20)
    assert {key: result[key] for key in 'VEF'} == counts
    assert result['standard']
    assert result['lattice_isomorphic']
    assert result['contains_polytope']
    assert euler_and_graph_checks(result['body'], True)['chi'] == 2


def test_hausdorff_distance_halves_as_the_radius_doubles():
    V, faces = polytope_fixture('cube')
    distances = [approximate_polyhedron(V, faces, k)['hausdorff'] for k in (10, 20, 40)]
    assert distances[0] > distances[1] > distances[2] > 0
    for coarse, fine in zip(distances, distances[1:]):
        assert 1.8 < coarse / fine < 2.2


def test_approximation_radius_must_exceed_face_circumradius():
    V, faces = polytope_fixture('cube')
    with pytest.raises(BadParameters):
        approximate_polyhedron(V, faces, 0.5)
    with pytest.raises(BadParameters):
        polytope_fixture('icosahedron')


def test_faces_lie_in_the_spindle_hull_of_the_edges(unit_tetrahedron):
    report = spindle_hull_of_edges_check(boundary_structure(unit_tetrahedron))
    assert report['face_points'] > 0
    assert report['edge_midpoints'] == 6
    assert report['in_edge_hull']
    assert report['outside_vertex_hull']


def prism(base, height=1.0):
    """Right prism over a convex polygon, faces ordered counter-clockwise seen from outside."""
    m = len(base)
    V = np.array([[x, y, 0.0] for x, y in base] + [[x, y, height] for x, y in base])
    faces = [list(range(m)), list(range(m, 2 * m))]
    faces += [[i, (i + 1) % m, m + (i + 1) % m, m + i] for i in range(m)]
    centroid = V.mean(axis=0)
    oriented = []
    for face in faces:
        normal = np.cross(V[face[1]] - V[face[0]], V[face[2]] - V[face[0]])
        oriented.append(face if normal @ (V[face[0]] - centroid) > 0 else face[::-1])
    return V, oriented


def test_obtuse_triangular_faces_are_cyclic():
    V, faces = prism([(0.0, 0.0), (4.0, 0.0), (1.0, 0.5)])
    result = approximate_polyhedron(V, faces, 50)
    assert {key: result[key] for key in 'VEF'} == {'V': 6, 'E': 9, 'F': 5}
    assert result['contains_polytope']


def test_pentagonal_prism_approximation():
    pentagon = [(math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5)) for i in range(5)]
    V, faces = prism(pentagon)
    result = approximate_polyhedron(V, faces, 20)
    assert {key: result[key] for key in 'VEF'} == {'V': 10, 'E': 15, 'F': 7}
    assert result['standard']
    assert result['lattice_isomorphic']


def test_non_cyclic_face_is_rejected():
    V, faces = prism([(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 2.0)])
    with pytest.raises(NotCoCircular):
        approximate_polyhedron(V, faces, 20)


# a thin lens cut on both sides of its rim: the rim survives as two separate arcs
TWO_RIM_ARCS = np.array([[0.0, 0.0, -0.95], [0.0, 0.0, 0.95], [0.8, 0.0, 0.0], [-0.8, 0.0, 0.0]])


def test_two_faces_sharing_two_edges():
    P = boundary_structure(TWO_RIM_ARCS)
    assert P.counts == {'V': 4, 'E': 6, 'F': 4}
    assert sorted(f.sphere for f in P.faces) == [0, 1, 2, 3]
    assert all(len(f.cycles) == 1 for f in P.faces)
    rim = [k for k, e in enumerate(P.edges) if e.spheres == (0, 1)]
    assert len(rim) == 2
    report = standardness_and_lattice(P)
    assert not report.standard
    assert report.witness['reason'] == 'faces_share_edges'
    assert sorted(report.witness['spheres']) == [0, 1]
    assert report.witness['edges'] == sorted(rim)
    checks = euler_and_graph_checks(P, report.standard)
    assert checks['chi'] == 2
    assert not checks['simple']


def test_faces_are_listed_per_component(unit_tetrahedron):
    P = boundary_structure(unit_tetrahedron)
    dumped = P.to_dict()['faces']
    assert [f['sphere'] for f in dumped] == [0, 1, 2, 3]
    for face in P.faces:
        assert len(face.vertex_ids(P.edges)) == 3
        assert len(face.edge_ids) == 3
