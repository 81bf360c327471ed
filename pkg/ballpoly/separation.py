"""
Separation of point sets by spheres.

Covers supporting unit balls of spindle hulls, unit-sphere separation of
two spindle hulls, the smallest sphere separating A from B with A enclosed
(a convex QP in the lifted variables (c, w) with w = |c|^2 - r^2), strict
separability, Kirchberger-type verdicts and the planar configuration that
defeats a Kirchberger theorem for unit spheres.

Usage:
    from ballpoly.separation import smallest_separating_sphere, kirchberger_verdict

    smallest_separating_sphere([[-1, 0], [1, 0]], [[0, 2], [0, -2]]).radius   # 1.0
    kirchberger_verdict(A, B).verdict
"""
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog, minimize, minimize_scalar

from ballpoly import bp3, diskpoly
from ballpoly.core import (
    DEFAULT_TOLERANCE,
    Ball,
    Tolerance,
    as_point,
    as_points,
    circumball,
    in_convex_hull,
    unique_points,
)
from ballpoly.exceptions import (
    BadParameters,
    EmptyInput,
    NotSeparable,
    NotSupporting,
    SizeCapExceeded,
    TheoremViolation,
    Unsupported,
)
from ballpoly.hull import ArcBoundary2, SingleBall
from ballpoly.qp import ActiveSetSolver, find_feasible_point, min_norm_point

try:
    from ballpoly_config import OPTIMIZER, SAMPLING, SEARCH_LIMITS
except ImportError:
    OPTIMIZER = {'max_workers': 4}
    SAMPLING = {
        'counterexample_samples': 10000,
        'unit_separation_grid_2d': 256,
        'unit_separation_grid_3d': 48,
        'direction_scan_2d': 720,
        'direction_scan_3d': 2000,
    }
    SEARCH_LIMITS = {'kirchberger_points': 24}

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SeparationResult:
    """
    Sphere S(center, radius) with the `inner` set enclosed.

    margin is min(radius - max inner distance, min outer distance - radius);
    strict results have margin >= eps_geom.
    """
    center: np.ndarray
    radius: float
    inner: str
    strict: bool
    margin: float
    active: Tuple[int, ...] = ()
    singleton: bool = False

    @property
    def ball(self) -> Ball:
        return Ball(self.center, self.radius, degenerate=self.radius == 0)

    def to_dict(self) -> dict:
        return {
            'center': self.center.tolist(), 'radius': self.radius, 'inner': self.inner,
            'strict': self.strict, 'margin': self.margin, 'active': list(self.active),
            'singleton': self.singleton,
        }


@dataclass(frozen=True)
class Infeasible:
    """No sphere separates with A enclosed; witness indices into A and B."""
    witness_a: Tuple[int, ...]
    witness_b: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {'infeasible': True, 'witness_a': list(self.witness_a), 'witness_b': list(self.witness_b)}


def _margin(center: np.ndarray, radius: float, inner: np.ndarray, outer: np.ndarray) -> float:
    values = []
    if inner.shape[0]:
        values.append(radius - float(np.max(np.linalg.norm(inner - center, axis=1))))
    if outer.shape[0]:
        values.append(float(np.min(np.linalg.norm(outer - center, axis=1))) - radius)
    return min(values) if values else math.inf


# -- supporting and separating unit balls -----------------------------------


def support_unit_ball(hull, z, normal, tol: Tolerance = DEFAULT_TOLERANCE) -> Ball:
    """
    The unit ball B[z - normal], checked to contain the hull.

    hull may be an ArcBoundary2, a SingleBall, a BallPolyhedron3 or a raw
    point array (whose spindle hull is meant).

    Raises:
        NotSupporting: the ball misses part of the hull, i.e. normal is not
            an outward normal at z.
    """
    z = as_point(z)
    n = as_point(normal)
    length = float(np.linalg.norm(n))
    if length == 0:
        raise BadParameters("normal must be nonzero")
    center = z - n / length
    if isinstance(hull, SingleBall):
        ok = float(np.linalg.norm(hull.center - center)) <= 10 * tol.eps_geom
    elif isinstance(hull, bp3.BallPolyhedron3):
        ok = bp3.farthest_point_3d(hull.centers, center, tol)[1] <= 1.0 + 10 * tol.eps_geom
    else:
        points = hull.vertices if isinstance(hull, ArcBoundary2) else as_points(hull, dim=z.size)
        ok = bool(np.all(np.linalg.norm(points - center, axis=1) <= 1.0 + 10 * tol.eps_geom))
    if not ok:
        raise NotSupporting(f"unit ball around {center.tolist()} does not contain the hull")
    return Ball(center, 1.0)


def _dual_support(P: np.ndarray, tol: Tolerance) -> Callable[[np.ndarray], Tuple[float, np.ndarray]]:
    """Support function u -> (h_{B[P]}(u), attaining point) of the dual body B[P]."""
    ball = circumball(P, tol)
    if ball.radius > 1.0 + tol.eps_geom:
        raise NotSeparable("a spindle hull is the whole space")
    if ball.radius >= 1.0 - tol.eps_geom:
        return lambda u: (float(ball.center @ u), ball.center.copy())
    if P.shape[1] == 2:
        body = diskpoly.build_disk_polygon(P, tol)
        return lambda u: diskpoly.support_value(body, u, tol)
    return lambda u: bp3.support_value_3d(P, u, tol)


def _fibonacci_directions(count: int) -> np.ndarray:
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    rho = np.sqrt(1.0 - z * z)
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def _best_direction(gap: Callable[[np.ndarray], float], n: int) -> np.ndarray:
    if n == 2:
        count = SAMPLING.get('direction_scan_2d', 720)
        thetas = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
        values = [gap(np.array([math.cos(t), math.sin(t)])) for t in thetas]
        t0 = thetas[int(np.argmax(values))]
        step = 2.0 * math.pi / count
        res = minimize_scalar(lambda t: -gap(np.array([math.cos(t), math.sin(t)])),
                              bounds=(t0 - step, t0 + step), method='bounded', options={'xatol': 1e-12})
        t = res.x if -res.fun >= max(values) else t0
        return np.array([math.cos(t), math.sin(t)])
    dirs = _fibonacci_directions(SAMPLING.get('direction_scan_3d', 2000))
    values = [gap(u) for u in dirs]
    u0 = dirs[int(np.argmax(values))]

    def to_dir(angles):
        theta, phi = angles
        return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])

    start = np.array([math.acos(max(-1.0, min(1.0, u0[2]))), math.atan2(u0[1], u0[0])])
    res = minimize(lambda x: -gap(to_dir(x)), start, method='Nelder-Mead',
                   options={'xatol': 1e-12, 'fatol': 1e-14, 'maxiter': 2000})
    return to_dir(res.x) if -res.fun >= max(values) else u0


def separate_by_unit_sphere(X, Y, tol: Tolerance = DEFAULT_TOLERANCE) -> SeparationResult:
    """
    A unit ball containing X whose open interior misses Y.

    The gap between the spindle hulls in direction a is
    h_{B[Y]}(a) + h_{B[X]}(-a) - 2; at the best direction the supporting
    unit ball of conv_s X is centered at the point of B[X] extreme in -a.
    When the gap is positive and X is not a unit ball, the center is pushed
    toward the contact points so both sides clear by a positive margin.

    Raises:
        NotSeparable: the spindle hulls overlap.
    """
    P = unique_points(as_points(X), tol)
    Q = unique_points(as_points(Y, dim=P.shape[1] if P.size else None), tol)
    if P.shape[0] == 0 or Q.shape[0] == 0:
        raise EmptyInput("both sets must be nonempty")
    n = P.shape[1]
    if n not in (2, 3):
        raise Unsupported("unit-sphere separation is implemented in dimensions 2 and 3")
    hX, hY = _dual_support(P, tol), _dual_support(Q, tol)

    def gap(a):
        return hY(a)[0] + hX(-a)[0] - 2.0

    a = _best_direction(gap, n)
    best = gap(a)
    logger.debug("separate_by_unit_sphere: best direction %s, gap %.3e", a, best)
    if best < -tol.eps_geom:
        raise NotSeparable(f"spindle hulls overlap (gap {best:.3e})")
    c_star = hX(-a)[1]

    dist = np.linalg.norm(P - c_star, axis=1)
    contacts = np.flatnonzero(dist >= 1.0 - 10 * tol.eps_geom)
    center, strict = c_star, False
    if best > tol.eps_geom and circumball(P, tol).radius < 1.0 - tol.eps_geom:
        D = P[contacts] - c_star
        d = min_norm_point(D) if D.shape[0] else np.zeros(n)
        length = float(np.linalg.norm(d))
        if length > tol.eps_geom:
            d_hat = d / length
            others = np.delete(dist, contacts)
            slack = float(1.0 - others.max()) if others.size else math.inf
            tau = min(best / 2.0, slack / 2.0, float(np.min(D @ d_hat)))
            trial = c_star + tau * d_hat
            if _margin(trial, 1.0, P, Q) >= tol.eps_geom:
                center, strict = trial, True
    margin = _margin(center, 1.0, P, Q)
    return SeparationResult(center, 1.0, 'X', strict, margin, tuple(int(i) for i in contacts))


# -- the lifted program -----------------------------------------------------


def _lifted_rows(A: np.ndarray, B: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Rows of G (c, w) <= h: |a-c|^2 <= r^2 for a in A, |b-c|^2 >= r^2 for b in B."""
    n = A.shape[1] if A.size else B.shape[1]
    G_a = np.hstack([-2.0 * A, np.ones((A.shape[0], 1))]) if A.shape[0] else np.zeros((0, n + 1))
    G_b = np.hstack([2.0 * B, -np.ones((B.shape[0], 1))]) if B.shape[0] else np.zeros((0, n + 1))
    h = np.concatenate([-np.sum(A * A, axis=1), np.sum(B * B, axis=1)])
    return np.vstack([G_a, G_b]), h


def _deletion_filter(G: np.ndarray, h: np.ndarray) -> List[int]:
    """Irreducible infeasible subset of rows (drops every row not needed for infeasibility)."""
    keep = list(range(G.shape[0]))
    for i in range(G.shape[0]):
        trial = [j for j in keep if j != i]
        if trial and find_feasible_point(G[trial], h[trial]) is None:
            keep = trial
    return keep


def smallest_separating_sphere(A, B, tol: Tolerance = DEFAULT_TOLERANCE) -> Union[SeparationResult, Infeasible]:
    """
    Smallest sphere with A in the closed ball and B outside the open ball.

    Minimizes |c|^2 - w subject to the lifted linear constraints; the
    active rows at the optimum index A first, then B.
    """
    A = as_points(A)
    if A.shape[0] == 0:
        raise EmptyInput("A must be nonempty")
    B = as_points(B, dim=A.shape[1])
    n = A.shape[1]
    if unique_points(A, tol).shape[0] == 1:
        return SeparationResult(A[0].copy(), 0.0, 'A', False, _margin(A[0], 0.0, A, B), (0,), singleton=True)
    G, h = _lifted_rows(A, B)
    H = np.diag([2.0] * n + [0.0])
    g = np.zeros(n + 1)
    g[-1] = -1.0
    res = ActiveSetSolver(tol=tol.eps_opt).solve(H, g, G, h)
    if not res.optimal:
        rows = _deletion_filter(G, h)
        witness_a = tuple(i for i in rows if i < A.shape[0])
        witness_b = tuple(i - A.shape[0] for i in rows if i >= A.shape[0])
        logger.debug("smallest_separating_sphere: infeasible, witness A%s B%s", witness_a, witness_b)
        return Infeasible(witness_a, witness_b)
    c, w = res.x[:n], res.x[n]
    radius = math.sqrt(max(float(c @ c) - w, 0.0))
    return SeparationResult(c, radius, 'A', False, _margin(c, radius, A, B), res.active)


def inversion_minimality_check(A, B, result: SeparationResult, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Independent minimality test for a separating sphere with A enclosed.

    After normalizing the points on the sphere to unit vectors a', b', the
    sphere is minimal iff no x satisfies <a', x> >= 1 and <b', x> <= 1 with
    a positive margin.
    """
    A, B = as_points(A), as_points(B, dim=result.center.size)
    if result.radius <= tol.eps_geom:
        return True
    band = 1e-7 * max(1.0, result.radius)

    def on_sphere(P):
        if P.shape[0] == 0:
            return P
        d = np.linalg.norm(P - result.center, axis=1)
        return (P[np.abs(d - result.radius) <= band] - result.center) / result.radius

    Ac, Bc = on_sphere(A), on_sphere(B)
    if Ac.shape[0] == 0:
        return False
    n = A.shape[1]
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    rows = [np.hstack([-Ac, np.ones((Ac.shape[0], 1))])]
    rhs = [-np.ones(Ac.shape[0])]
    if Bc.shape[0]:
        rows.append(np.hstack([Bc, np.ones((Bc.shape[0], 1))]))
        rhs.append(np.ones(Bc.shape[0]))
    res = linprog(cost, A_ub=np.vstack(rows), b_ub=np.concatenate(rhs),
                  bounds=[(-1e4, 1e4)] * n + [(None, 1.0)], method='highs')
    if not res.success:
        return True
    return -res.fun <= 1e-7


def strictly_separable(A, B, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[bool, float, Optional[Tuple[np.ndarray, float]]]:
    """
    Whether some sphere has A strictly inside and B strictly outside.

    Maximizes the margin t of the lifted constraints (capped at 1); returns
    (separable, t, (c, w)).
    """
    A = as_points(A)
    B = as_points(B, dim=A.shape[1] if A.size else None)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return True, 1.0, None
    n = A.shape[1]
    G, h = _lifted_rows(A, B)
    G = np.hstack([G, np.ones((G.shape[0], 1))])
    cost = np.zeros(n + 2)
    cost[-1] = -1.0
    res = linprog(cost, A_ub=G, b_ub=h, bounds=[(None, None)] * (n + 1) + [(None, 1.0)], method='highs')
    if not res.success:
        return False, -math.inf, None
    t = -float(res.fun)
    return t > tol.eps_geom, t, (res.x[:n], float(res.x[n]))


def _subsets(total: int, size: int):
    return list(itertools.combinations(range(total), min(size, total)))


def _split(A: np.ndarray, B: np.ndarray, subset: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    ia = [i for i in subset if i < A.shape[0]]
    ib = [i - A.shape[0] for i in subset if i >= A.shape[0]]
    return A[ia], B[ib]


def _first_failure(A: np.ndarray, B: np.ndarray, test: Callable[[np.ndarray, np.ndarray], bool]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """First (lexicographic) subset of size n+2 failing the test, and the number checked."""
    subsets = _subsets(A.shape[0] + B.shape[0], A.shape[1] + 2)
    with ThreadPoolExecutor(max_workers=OPTIMIZER.get('max_workers', 4)) as pool:
        outcomes = list(pool.map(lambda s: test(*_split(A, B, s)), subsets))
    for subset, ok in zip(subsets, outcomes):
        if not ok:
            return subset, len(subsets)
    return None, len(subsets)


def houle_verdict(A, B, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Strict separability by any sphere with A inside, decided on the full sets
    and on all subsets of size n+2; the two answers must agree.

    Raises:
        TheoremViolation: the subset answer and the full answer differ.
    """
    A = as_points(A)
    B = as_points(B, dim=A.shape[1])
    failing, checked = _first_failure(A, B, lambda a, b: strictly_separable(a, b, tol)[0])
    full, margin, _ = strictly_separable(A, B, tol)
    if full != (failing is None):
        raise TheoremViolation(f"full separability {full} disagrees with the subset test (witness {failing})")
    return {'separable': full, 'margin': margin, 'witness': list(failing) if failing else None,
            'subsets_checked': checked}


def unit_separation_margin(A, B, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[float, Optional[np.ndarray]]:
    """
    Best margin min(1 - |c-a|, |c-b| - 1) over centers c; positive means A is
    strictly inside and B strictly outside a unit sphere.
    """
    A = as_points(A)
    if A.shape[0] == 0:
        return math.inf, None
    B = as_points(B, dim=A.shape[1])
    n = A.shape[1]

    def margin_at(C):
        values = 1.0 - np.max(np.linalg.norm(C[:, None, :] - A[None, :, :], axis=2), axis=1)
        if B.shape[0]:
            values = np.minimum(values, np.min(np.linalg.norm(C[:, None, :] - B[None, :, :], axis=2), axis=1) - 1.0)
        return values

    size = SAMPLING.get('unit_separation_grid_2d', 256) if n == 2 else SAMPLING.get('unit_separation_grid_3d', 48)
    axes = [np.linspace(A[0, k] - 1.0, A[0, k] + 1.0, size) for k in range(n)]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, n)
    values = margin_at(grid)
    k = int(np.argmax(values))
    res = minimize(lambda c: -margin_at(c[None, :])[0], grid[k], method='Nelder-Mead',
                   options={'xatol': 1e-12, 'fatol': 1e-14, 'maxiter': 4000})
    if -res.fun > values[k]:
        return float(-res.fun), np.asarray(res.x)
    return float(values[k]), grid[k]


class KirchbergerVerdict(str, Enum):
    SEPARABLE_BY_CAP_RADIUS_1 = 'separable_by_cap_radius_1'
    NOT_SEPARABLE = 'not_separable'
    COUNTEREXAMPLE_WITNESS = 'counterexample_witness'


@dataclass
class KirchbergerReport:
    verdict: KirchbergerVerdict
    radius_mode: str
    witness: Optional[Tuple[int, ...]] = None
    sphere: Optional[SeparationResult] = None
    subsets_checked: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict.value, 'radius_mode': self.radius_mode,
            'witness': list(self.witness) if self.witness else None,
            'sphere': self.sphere.to_dict() if self.sphere else None,
            'subsets_checked': self.subsets_checked, **self.details,
        }


def _separable_radius_at_most_one(A: np.ndarray, B: np.ndarray, tol: Tolerance) -> bool:
    if A.shape[0] == 0:
        return True
    ok, _, _ = strictly_separable(A, B, tol)
    if not ok:
        return False
    smallest = smallest_separating_sphere(A, B, tol)
    return isinstance(smallest, SeparationResult) and smallest.radius < 1.0 - tol.eps_geom


def _blend_to_unit(A: np.ndarray, B: np.ndarray, tol: Tolerance) -> Optional[SeparationResult]:
    """
    A strictly separating sphere of radius <= 1, as a convex combination of
    the lifted strict solution and the smallest sphere.
    """
    ok, _, lifted = strictly_separable(A, B, tol)
    smallest = smallest_separating_sphere(A, B, tol)
    if not ok or not isinstance(smallest, SeparationResult):
        return None
    c_s, w_s = lifted
    c_m = smallest.center
    w_m = float(c_m @ c_m) - smallest.radius ** 2
    lam = 1.0
    for _ in range(60):
        c = lam * c_s + (1.0 - lam) * c_m
        w = lam * w_s + (1.0 - lam) * w_m
        r = math.sqrt(max(float(c @ c) - w, 0.0))
        if r <= 1.0 and _margin(c, r, A, B) > 0:
            return SeparationResult(c, r, 'A', True, _margin(c, r, A, B))
        lam /= 2.0
    return None


def kirchberger_verdict(A, B, radius_mode: str = 'at_most_one', tol: Tolerance = DEFAULT_TOLERANCE) -> KirchbergerReport:
    """
    Subset test against the full instance for separation with A enclosed.

    radius_mode 'at_most_one' tests strict separation by spheres of radius
    at most 1, where every subset of size n+2 passing forces the full sets
    to pass. radius_mode 'unit' tests unit spheres, where the full instance
    may fail although all subsets pass; that outcome is reported as a
    counterexample witness.

    Raises:
        TheoremViolation: all subsets pass in 'at_most_one' mode but the full
            instance does not.
    """
    A = as_points(A)
    B = as_points(B, dim=A.shape[1])
    cap = SEARCH_LIMITS.get('kirchberger_points', 24)
    if A.shape[0] + B.shape[0] > cap:
        raise SizeCapExceeded(f"kirchberger_verdict is limited to {cap} points")
    if radius_mode == 'at_most_one':
        failing, checked = _first_failure(A, B, lambda a, b: _separable_radius_at_most_one(a, b, tol))
        if failing is not None:
            return KirchbergerReport(KirchbergerVerdict.NOT_SEPARABLE, radius_mode, failing, subsets_checked=checked)
        sphere = _blend_to_unit(A, B, tol) if A.shape[0] else None
        if A.shape[0] and sphere is None:
            logger.error("all %d subsets separate with radius <= 1 but the full instance does not", checked)
            raise TheoremViolation("full instance is not separable by a sphere of radius at most 1")
        return KirchbergerReport(KirchbergerVerdict.SEPARABLE_BY_CAP_RADIUS_1, radius_mode,
                                 sphere=sphere, subsets_checked=checked)
    if radius_mode == 'unit':
        failing, checked = _first_failure(A, B, lambda a, b: unit_separation_margin(a, b, tol)[0] > tol.eps_geom)
        if failing is not None:
            return KirchbergerReport(KirchbergerVerdict.NOT_SEPARABLE, radius_mode, failing, subsets_checked=checked)
        margin, center = unit_separation_margin(A, B, tol)
        if margin > tol.eps_geom:
            sphere = SeparationResult(center, 1.0, 'A', True, margin)
            return KirchbergerReport(KirchbergerVerdict.SEPARABLE_BY_CAP_RADIUS_1, radius_mode,
                                     sphere=sphere, subsets_checked=checked)
        logger.info("unit-sphere subsets all separate but the full instance does not (margin %.3e)", margin)
        return KirchbergerReport(KirchbergerVerdict.COUNTEREXAMPLE_WITNESS, radius_mode,
                                 subsets_checked=checked, details={'full_margin': margin})
    raise BadParameters(f"unknown radius mode {radius_mode!r}")


# -- the unit-sphere counterexample -----------------------------------------


def _unit(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


def inner_cap_half_angle(delta: float) -> float:
    """Half the angular size of the arc of S(b0) inside B[a] when |a - b0| = delta."""
    return math.pi - math.acos(-delta / 2.0)


def cap_radius_for(delta: float, caps: int) -> float:
    """Cap radius eps giving exactly `caps` covering caps."""
    return inner_cap_half_angle(delta) / (caps - 0.5)


@dataclass(frozen=True, eq=False)
class Counterexample:
    a: np.ndarray
    B: np.ndarray
    delta: float
    eps: float
    cap_angles: np.ndarray

    @property
    def A(self) -> np.ndarray:
        return self.a[None, :]

    def to_dict(self) -> dict:
        return {'a': self.a.tolist(), 'B': self.B.tolist(), 'delta': self.delta, 'eps': self.eps,
                'cap_angles': self.cap_angles.tolist()}


def kirchberger_counterexample(delta: float = 0.5, eps: Optional[float] = None, caps: Optional[int] = None) -> Counterexample:
    """
    A = {a} with a = o and B = {b_0, ..., b_m}: b_0 = (delta, 0) and the
    b_j cut caps of angular radius eps from the arc C of S(b_0) inside B[a],
    spaced so they cover C and none of them is redundant.

    Raises:
        BadParameters: delta outside (0, 1), or eps too large for three caps.
    """
    if not 0.0 < delta < 1.0:
        raise BadParameters("delta must lie in (0, 1)")
    if eps is None:
        eps = cap_radius_for(delta, caps or 6)
    alpha = inner_cap_half_angle(delta)
    if not 0.0 < eps < alpha:
        raise BadParameters(f"cap radius {eps} must lie in (0, {alpha:.6f})")
    m = int(math.floor(alpha / eps)) + 1
    if m < 3:
        raise BadParameters(f"cap radius {eps} gives only {m} caps; at least 3 are needed")
    spacing = 2.0 * alpha / m
    angles = np.array([math.pi - alpha + spacing * (i + 0.5) for i in range(m)])
    b0 = np.array([delta, 0.0])
    B = np.vstack([b0] + [b0 + 2.0 * math.cos(eps) * _unit(phi) for phi in angles])
    logger.debug("kirchberger_counterexample: delta %.3f, eps %.4f, %d caps", delta, eps, m)
    return Counterexample(np.zeros(2), B, delta, eps, angles)


def verify_counterexample(example: Counterexample, samples: Optional[int] = None, seed: int = 0,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Checks that the open unit disk around a is covered by the closed unit
    disks around B, that each b_i has a separating witness once it is
    removed, that a lies in conv B, that no unit sphere separates, and that
    every subset of n+2 points is separated by a unit sphere.
    """
    samples = samples or SAMPLING.get('counterexample_samples', 10000)
    rng = np.random.default_rng(seed)
    a, B = example.a, example.B
    radii = np.sqrt(rng.uniform(0.0, 1.0, samples)) * (1.0 - 1e-9)
    thetas = rng.uniform(0.0, 2.0 * math.pi, samples)
    pts = a + np.column_stack([radii * np.cos(thetas), radii * np.sin(thetas)])
    nearest = np.min(np.linalg.norm(pts[:, None, :] - B[None, :, :], axis=2), axis=1)
    uncovered = int(np.sum(nearest > 1.0 + tol.eps_geom))

    tau = 1e-4
    witnesses = [a.copy()] + [B[0] + (1.0 + tau) * _unit(phi) for phi in example.cap_angles]
    leave_one_out = []
    for i, p in enumerate(witnesses):
        others = np.delete(B, i, axis=0)
        inside = float(np.linalg.norm(p - a)) < 1.0
        clear = bool(np.all(np.linalg.norm(others - p, axis=1) > 1.0))
        leave_one_out.append(bool(inside and clear))

    in_hull = in_convex_hull(B, a, tol)
    margin, _ = unit_separation_margin(example.A, B, tol)
    verdict = kirchberger_verdict(example.A, B, 'unit', tol)
    report = {
        'samples': samples,
        'uncovered': uncovered,
        'covered': uncovered == 0,
        'leave_one_out': leave_one_out,
        'minimal_cover': all(leave_one_out),
        'a_in_conv_B': bool(in_hull),
        'unit_margin': margin,
        'not_unit_separable': margin <= tol.eps_geom,
        'subsets_unit_separable': verdict.verdict == KirchbergerVerdict.COUNTEREXAMPLE_WITNESS,
        'verdict': verdict.to_dict(),
    }
    report['holds'] = bool(report['covered'] and report['minimal_cover'] and report['a_in_conv_B']
                           and report['not_unit_separable'] and report['subsets_unit_separable'])
    return report
