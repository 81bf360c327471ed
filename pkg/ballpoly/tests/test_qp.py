import numpy as np
import pytest

from ballpoly.qp import ActiveSetSolver, find_feasible_point, min_norm_point, project_onto_polytope


def test_projection_onto_box_corner():
    G = np.array([[1.0, 0.0], [0.0, 1.0]])
    h = np.array([1.0, 1.0])
    np.testing.assert_allclose(project_onto_polytope(np.array([2.0, 3.0]), G, h), [1.0, 1.0], atol=1e-10)
    np.testing.assert_allclose(project_onto_polytope(np.array([0.2, 0.3]), G, h), [0.2, 0.3], atol=1e-10)


def test_equality_constrained_minimum():
    result = ActiveSetSolver().solve(H=np.eye(2), g=np.zeros(2), G=np.zeros((0, 2)), h=np.zeros(0),
                                     A=np.array([[1.0, 1.0]]), b=np.array([1.0]))
    assert result.optimal
    np.testing.assert_allclose(result.x, [0.5, 0.5], atol=1e-10)
    assert result.objective == pytest.approx(0.25)


def test_active_set_and_multipliers():
    # minimize (x-2)^2 + (y-2)^2 subject to x + y <= 2
    result = ActiveSetSolver().solve(H=2 * np.eye(2), g=np.array([-4.0, -4.0]),
                                     G=np.array([[1.0, 1.0]]), h=np.array([2.0]))
    np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-10)
    assert result.active == (0,)
    assert result.multipliers[0] == pytest.approx(2.0)


def test_zero_curvature_direction_is_followed_to_a_bound():
    result = ActiveSetSolver().solve(H=np.zeros((1, 1)), g=np.array([1.0]), G=np.array([[-1.0]]),
                                     h=np.array([0.0]), x0=np.array([5.0]))
    np.testing.assert_allclose(result.x, [0.0], atol=1e-12)


def test_infeasible_constraints():
    G = np.array([[1.0], [-1.0]])
    h = np.array([-1.0, -1.0])
    assert find_feasible_point(G, h) is None
    assert ActiveSetSolver().solve(np.eye(1), np.zeros(1), G, h).status == 'infeasible'


@pytest.mark.parametrize('P, expected', [
    ([[1.0, 1.0], [1.0, -1.0]], [1.0, 0.0]),
    ([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5]),
    ([[2.0, 0.0], [3.0, 1.0]], [2.0, 0.0]),
    ([[-1.0, 1.0], [1.0, 1.0], [0.0, -1.0]], [0.0, 0.0]),
])
def test_min_norm_point(P, expected):
    np.testing.assert_allclose(min_norm_point(np.array(P)), expected, atol=1e-9)
