import math

import numpy as np
import pytest

from ballpoly.constructions import (
    ContractionPair,
    exsphere_opposite,
    helly_sharpness_family,
    inverted_unit_family,
    kp_anchor_pairs,
    kp_experiments,
    maehara_family,
    maehara_g,
    maehara_parameters,
    random_contraction_pair,
    sphere_family_helly_check,
    titeica_check,
)
from ballpoly.core import Ball, SubSphereKind, intersect_spheres, polar, regular_simplex
from ballpoly.exceptions import (
    BadParameters,
    ConstructionError,
    DegenerateConfiguration,
    HypothesisNotMet,
    InvalidPair,
    OutOfRange,
)


@pytest.mark.parametrize('angles', [(0.3, 2.0, 4.1), (0.0, 1.0, 2.5), (1.2, 3.0, 5.9)])
def test_second_points_lie_on_a_unit_circle(angles):
    centers = [polar(1.0, a) for a in angles]
    result = titeica_check(*centers, [0.0, 0.0])
    assert result['holds']
    assert result['radius'] == pytest.approx(1.0, abs=1e-12)
    # the circumcenter is p + c1 + c2 + c3
    np.testing.assert_allclose(result['center'], np.sum(centers, axis=0), atol=1e-9)


def test_random_triples_on_a_shifted_point(rng):
    p = np.array([0.3, -0.7])
    for _ in range(50):
        centers = [p + polar(1.0, a) for a in rng.uniform(0, 2 * math.pi, 3)]
        try:
            result = titeica_check(*centers, p)
        except DegenerateConfiguration:
            continue
        assert result['deviation'] < 1e-9


def test_titeica_degenerate_inputs():
    with pytest.raises(BadParameters):
        titeica_check([0.5, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, 0.0])
    with pytest.raises(DegenerateConfiguration):
        titeica_check([1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0])
    with pytest.raises(DegenerateConfiguration):
        titeica_check([1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, 0.0])


def test_coaxial_spheres_keep_their_common_circle():
    family = [Ball([0.0, 0.0, h], math.sqrt(0.25 + h * h)) for h in (0.0, 0.3, -0.5, 1.0)]
    result = sphere_family_helly_check(family, 0)
    assert result['dim'] == 1
    assert result['subsets_checked'] == 4
    assert result['intersection']['radius'] == pytest.approx(0.5)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_simplex_spheres_show_the_bound_is_sharp(n):
    family = helly_sharpness_family(n)
    assert len(family) == n + 1
    full = intersect_spheres(family)
    assert full.kind == SubSphereKind.POINT
    np.testing.assert_allclose(full.center, np.zeros(n), atol=1e-9)
    with pytest.raises(HypothesisNotMet):
        sphere_family_helly_check(family, 0)


def test_helly_check_arguments():
    with pytest.raises(BadParameters):
        sphere_family_helly_check([], 0)
    with pytest.raises(BadParameters):
        sphere_family_helly_check(helly_sharpness_family(3), 3)


def test_maehara_height_in_dimension_four():
    params = maehara_parameters(4)
    assert params.m == 3
    assert params.t_star == 0.5
    assert maehara_g(0.5, 3) == pytest.approx(0.0, abs=1e-14)
    assert params.vertices.shape == (5, 4)
    np.testing.assert_allclose(np.linalg.norm(params.vertices, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize('n', [4, 5, 6])
def test_tangent_sphere_is_the_exsphere(n):
    params = maehara_parameters(n)
    assert abs(params.residual) < 1e-12
    center, radius = exsphere_opposite(params.vertices, n)
    np.testing.assert_allclose(center, params.center, atol=1e-9)
    assert radius == pytest.approx(params.r, abs=1e-9)
    assert 0.0 < params.t_star < 1.0


@pytest.mark.parametrize('n', [4, 5, 6])
def test_maehara_family_intersection_pattern(n):
    family = maehara_family(n)
    assert family.centers.shape == (n + 2, n)
    report = family.report
    assert report['holds']
    assert max(report['leave_one_out_residuals']) < 1e-8
    assert report['full_intersection'] == 'empty'
    assert report['full_margin'] > 1e-6


def test_maehara_needs_dimension_four():
    with pytest.raises(OutOfRange):
        maehara_parameters(3)
    with pytest.raises(BadParameters):
        exsphere_opposite(np.eye(3), 0)


def _incircle(V):
    a, b, c = (np.linalg.norm(V[(i + 1) % 3] - V[(i + 2) % 3]) for i in range(3))
    center = (a * V[0] + b * V[1] + c * V[2]) / (a + b + c)
    s = (a + b + c) / 2.0
    return center, math.sqrt((s - a) * (s - b) * (s - c) / s)


@pytest.mark.parametrize('tangent, case', [('incircle', 'inside'), ('excircle', 'outside')])
def test_triangle_tangent_circles_give_four_unit_circles(tangent, case):
    # Euler: d^2 = R^2 - 2rR for the incircle, d^2 = R^2 + 2rR for an excircle
    V = np.array([polar(1.0, a) for a in (0.3, 2.0, 4.4)])
    center, radius = _incircle(V) if tangent == 'incircle' else exsphere_opposite(V, 0)
    centers, report = inverted_unit_family(V, center, radius)
    assert report['case'] == case
    assert abs(report['relation_residual']) < 1e-9
    assert centers.shape == (4, 2)
    assert report['holds']
    assert max(report['leave_one_out_residuals']) < 1e-8
    assert report['full_intersection'] == 'empty'


def test_maehara_tangent_sphere_is_inside_the_circumball():
    for n in (4, 5, 6):
        params = maehara_parameters(n)
        assert params.case == 'inside'
        assert params.d ** 2 == pytest.approx(1.0 - 2.0 * params.r, abs=1e-12)
        assert maehara_family(n).report['case'] == 'inside'


def test_inverted_family_rejects_unrelated_tangent_spheres():
    V = regular_simplex(3)
    # insphere of the regular tetrahedron: d = 0, r = 1/3, and 1 - 2/3 != 0
    with pytest.raises(ConstructionError):
        inverted_unit_family(V, np.zeros(3), 1.0 / 3.0)
    with pytest.raises(BadParameters):
        inverted_unit_family(V, np.zeros(3), 0.5)
    with pytest.raises(BadParameters):
        inverted_unit_family(V[:3], np.zeros(3), 1.0 / 3.0)


def test_contraction_pair_validation():
    with pytest.raises(InvalidPair):
        ContractionPair([[0.0, 0.0], [0.1, 0.0]], [[0.0, 0.0], [0.5, 0.0]])
    with pytest.raises(InvalidPair):
        ContractionPair([[0.0, 0.0]], [[0.0, 0.0], [0.1, 0.0]])


def test_contraction_can_shrink_diameter_and_circumradius():
    report = kp_experiments(kp_anchor_pairs()['diameter'])
    assert report['inradius_ok']
    assert report['diameter_delta'] < 0
    assert report['circumradius_delta'] < 0
    assert report['inradius_identity_error'] < 1e-6


def test_contraction_can_shrink_minimum_width():
    report = kp_experiments(kp_anchor_pairs()['width'])
    assert report['inradius_ok']
    assert report['width_delta'] < 0
    assert report['body_y']['min_width'] == pytest.approx(1.2, abs=1e-6)


def test_inradius_never_shrinks_under_random_contractions(rng):
    for _ in range(20):
        pair = random_contraction_pair(rng, 4)
        report = kp_experiments(pair)
        assert report['inradius_ok']
        assert report['inradius_identity_error'] < 1e-6
