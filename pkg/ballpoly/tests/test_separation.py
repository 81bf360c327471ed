import math

import numpy as np
import pytest

from ballpoly.exceptions import BadParameters, NotSeparable, NotSupporting, SizeCapExceeded
from ballpoly import separation
from ballpoly.separation import (
    Infeasible,
    KirchbergerReport,
    KirchbergerVerdict,
    SeparationResult,
    houle_verdict,
    inversion_minimality_check,
    kirchberger_counterexample,
    kirchberger_verdict,
    separate_by_unit_sphere,
    smallest_separating_sphere,
    strictly_separable,
    support_unit_ball,
    unit_separation_margin,
    verify_counterexample,
)

PAIR = np.array([[-1.0, 0.0], [1.0, 0.0]])


def test_smallest_separating_sphere_of_a_diametral_pair():
    result = smallest_separating_sphere(PAIR, [[0.0, 2.0], [0.0, -2.0]])
    assert isinstance(result, SeparationResult)
    assert result.radius == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(result.center, [0.0, 0.0], atol=1e-9)
    assert {0, 1} <= set(result.active)
    assert inversion_minimality_check(PAIR, [[0.0, 2.0], [0.0, -2.0]], result)


def test_inversion_check_rejects_a_loose_sphere():
    loose = SeparationResult(np.zeros(2), 1.5, 'A', False, 0.5)
    assert not inversion_minimality_check(PAIR, [[0.0, 3.0]], loose)


def test_blocking_point_forces_a_larger_sphere():
    # B sits just below the midpoint of A
    A = [[0.0, 0.0], [1.0, 0.0]]
    B = [[0.5, -0.1]]
    result = smallest_separating_sphere(A, B)
    assert isinstance(result, SeparationResult)
    assert result.radius > 0.5
    assert np.all(np.linalg.norm(np.array(A) - result.center, axis=1) <= result.radius + 1e-7)
    assert np.linalg.norm(np.array(B[0]) - result.center) >= result.radius - 1e-7
    assert inversion_minimality_check(A, B, result)


def test_infeasible_instance_has_a_witness():
    result = smallest_separating_sphere(PAIR, [[0.0, 0.0]])
    assert isinstance(result, Infeasible)
    assert result.witness_b == (0,)
    assert len(result.witness_a) == 2


def test_singleton_inner_set():
    result = smallest_separating_sphere([[0.3, 0.3], [0.3, 0.3]], [[1.0, 1.0]])
    assert result.singleton
    assert result.radius == 0.0


def test_strict_separability_and_subset_verdict():
    ok, margin, (c, w) = strictly_separable([[0.0, 0.0]], 2.0 * np.eye(2))
    assert ok and margin > 0
    verdict = houle_verdict(PAIR, [[0.0, 0.0], [0.0, 3.0]])
    assert not verdict['separable']
    assert verdict['witness'] is not None
    assert verdict['subsets_checked'] == 1
    assert houle_verdict([[0.0, 0.0], [0.1, 0.0]], [[2.0, 0.0], [0.0, 2.0], [-2.0, 0.0]])['separable']


def test_unit_sphere_separates_distant_sets():
    X = np.array([[0.0, 0.0], [0.2, 0.0]])
    Y = np.array([[1.5, 0.0], [1.5, 0.3]])
    result = separate_by_unit_sphere(X, Y)
    assert result.radius == 1.0
    assert np.all(np.linalg.norm(X - result.center, axis=1) <= 1.0 + 1e-9)
    assert np.all(np.linalg.norm(Y - result.center, axis=1) >= 1.0 - 1e-9)
    assert result.strict
    assert result.margin > 0


def test_unit_sphere_cannot_separate_overlapping_hulls():
    with pytest.raises(NotSeparable):
        separate_by_unit_sphere([[0.0, 0.0], [0.5, 0.0]], [[0.25, 0.01], [0.25, -0.01]])


def test_unit_separation_margin():
    margin, center = unit_separation_margin([[0.0, 0.0]], [[3.0, 0.0]])
    assert margin == pytest.approx(1.0, abs=1e-4)
    np.testing.assert_allclose(center, [0.0, 0.0], atol=1e-3)
    assert unit_separation_margin(np.zeros((0, 2)), [[1.0, 1.0]])[0] == math.inf


def test_support_unit_ball():
    X = [[0.0, 0.0], [1.0, 0.0]]
    ball = support_unit_ball(X, [0.0, 0.0], [-2.0, 0.0])
    np.testing.assert_allclose(ball.center, [1.0, 0.0])
    with pytest.raises(NotSupporting):
        support_unit_ball(X, [0.0, 0.0], [0.0, -1.0])
    with pytest.raises(BadParameters):
        support_unit_ball(X, [0.0, 0.0], [0.0, 0.0])


def test_radius_at_most_one_verdicts():
    A = [[0.0, 0.0], [0.1, 0.0]]
    B = [[2.0, 0.0], [0.0, 2.0], [-2.0, 0.0]]
    report = kirchberger_verdict(A, B)
    assert report.verdict == KirchbergerVerdict.SEPARABLE_BY_CAP_RADIUS_1
    assert report.sphere.radius <= 1.0
    assert report.sphere.margin > 0
    assert report.subsets_checked == 5
    blocked = kirchberger_verdict(PAIR, [[0.0, 0.0]])
    assert blocked.verdict == KirchbergerVerdict.NOT_SEPARABLE
    assert blocked.witness is not None


def test_kirchberger_rejects_bad_requests():
    with pytest.raises(BadParameters):
        kirchberger_verdict(PAIR, [[0.0, 3.0]], radius_mode='huge')
    with pytest.raises(SizeCapExceeded):
        kirchberger_verdict(np.zeros((13, 2)), np.ones((12, 2)))


def test_unit_counterexample_holds():
    example = kirchberger_counterexample(0.5)
    assert example.B.shape == (7, 2)
    np.testing.assert_allclose(example.B[0], [0.5, 0.0])
    report = verify_counterexample(example, samples=4000, seed=1)
    assert report['covered']
    assert report['minimal_cover']
    assert report['a_in_conv_B']
    assert report['not_unit_separable']
    assert report['subsets_unit_separable']
    assert report['verdict']['subsets_checked'] == math.comb(8, 4)
    assert report['holds']


def test_counterexample_fails_when_a_small_subset_does_not_separate(monkeypatch):
    example = kirchberger_counterexample(0.5)
    monkeypatch.setattr(separation, 'kirchberger_verdict', lambda *args, **kwargs: KirchbergerReport(
        KirchbergerVerdict.NOT_SEPARABLE, 'unit', witness=(0, 1, 2, 3), subsets_checked=1))
    report = verify_counterexample(example, samples=2000, seed=1)
    assert report['covered'] and report['minimal_cover'] and report['not_unit_separable']
    assert not report['subsets_unit_separable']
    assert report['verdict']['witness'] == [0, 1, 2, 3]
    assert not report['holds']


def test_unit_counterexample_beats_the_subset_test():
    example = kirchberger_counterexample(0.5)
    report = kirchberger_verdict(example.A, example.B, radius_mode='unit')
    assert report.verdict == KirchbergerVerdict.COUNTEREXAMPLE_WITNESS
    assert report.subsets_checked == math.comb(8, 4)


@pytest.mark.parametrize('kwargs', [{'delta': 1.0}, {'delta': 0.0}, {'delta': 0.5, 'eps': 2.0}, {'delta': 0.5, 'eps': 1.0}])
def test_counterexample_parameters_are_validated(kwargs):
    with pytest.raises(BadParameters):
        kirchberger_counterexample(**kwargs)
