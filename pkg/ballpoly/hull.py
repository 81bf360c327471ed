"""
Spindle convex hulls and the searches built on them.

The planar hull boundary is computed exactly by gift wrapping along unit
arcs. Membership in the spindle hull of X (n <= 3) is decided through the
dual body: p lies in conv_s X iff the farthest point of B[X] from p is at
distance at most 1.

Usage:
    from ballpoly.hull import spindle_hull_2d, spindle_hull_contains

    H = spindle_hull_2d([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])   # Reuleaux triangle
    spindle_hull_contains([[0, 0], [1, 0]], [0.5, 0.1339])            # True
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog

from ballpoly import bp3, diskpoly
from ballpoly.core import (
    DEFAULT_TOLERANCE,
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
    EmptyIntersection,
    ImplementationAlarm,
    NoHemisphere,
    NotInHull,
    OutOfScope,
    PreconditionError,
    SizeCapExceeded,
    Unsupported,
)

try:
    from ballpoly_config import SEARCH_LIMITS
except ImportError:
    SEARCH_LIMITS = {'es_search_points': 20}

logger = logging.getLogger(__name__)


def _left_normal(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1], v[0]])


@dataclass(frozen=True)
class WholePlane:
    """Spindle hull of a set that fits in no unit disk."""

    def contains(self, p, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return True

    def to_dict(self) -> dict:
        return {'kind': 'whole_plane'}


@dataclass(frozen=True, eq=False)
class SingleBall:
    """Spindle hull of a set whose circumradius is exactly 1."""
    center: np.ndarray

    def contains(self, p, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return float(np.linalg.norm(as_point(p) - self.center)) <= 1.0 + tol.eps_geom

    def to_dict(self) -> dict:
        return {'kind': 'single_ball', 'center': self.center.tolist(), 'radius': 1.0}


@dataclass(frozen=True, eq=False)
class ArcBoundary2:
    """
    Boundary of a planar spindle hull.

    Arc k runs counter-clockwise from vertices[k] to vertices[k+1] along the
    unit circle around arc_centers[k]; the center lies on the left of the
    chord. A single vertex has no arcs.
    """
    vertices: np.ndarray
    arc_centers: np.ndarray

    @property
    def size(self) -> int:
        return self.vertices.shape[0]

    def chord(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertices[k], self.vertices[(k + 1) % self.size]

    def arc_lengths(self) -> List[float]:
        if self.size < 2:
            return []
        return [2.0 * math.asin(min(float(np.linalg.norm(b - a)) / 2.0, 1.0))
                for a, b in (self.chord(k) for k in range(self.size))]

    def perimeter(self) -> float:
        return float(sum(self.arc_lengths()))

    def contains(self, p, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        p = as_point(p)
        if self.size == 1:
            return float(np.linalg.norm(p - self.vertices[0])) <= tol.eps_geom
        dist = np.linalg.norm(self.arc_centers - p, axis=1)
        return bool(np.all(dist <= 1.0 + tol.eps_geom))

    def normal_cone(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        """Outward unit normals of the incoming and the outgoing arc at vertex i."""
        if self.size < 2:
            raise BadParameters("a single point has every direction as normal")
        v = self.vertices[i]
        return v - self.arc_centers[(i - 1) % self.size], v - self.arc_centers[i]

    def arc_points(self, samples: int = 32) -> np.ndarray:
        """Points along the boundary, samples per arc, counter-clockwise."""
        if self.size == 1:
            return self.vertices.copy()
        out = []
        for k in range(self.size):
            a, b = self.chord(k)
            c = self.arc_centers[k]
            start = math.atan2(*(a - c)[::-1])
            sweep = (math.atan2(*(b - c)[::-1]) - start) % (2.0 * math.pi)
            for t in np.linspace(0.0, sweep, samples, endpoint=False):
                out.append(c + np.array([math.cos(start + t), math.sin(start + t)]))
        return np.vstack(out)

    def to_dict(self) -> dict:
        return {
            'kind': 'arc_boundary',
            'vertices': self.vertices.tolist(),
            'arc_centers': self.arc_centers.tolist(),
            'arc_lengths': self.arc_lengths(),
        }


Hull2 = Union[ArcBoundary2, WholePlane, SingleBall]


def spindle_hull_2d(X, tol: Tolerance = DEFAULT_TOLERANCE) -> Hull2:
    """
    Exact spindle convex hull of a planar point set.

    Gift wrapping starts at the point farthest from the circumcenter (which
    cannot lie in the hull of the others) and repeatedly follows the unit
    arc, center on the left, whose disk contains every point; among several
    points on the same arc the farthest along is taken.
    """
    P = unique_points(as_points(X, dim=2), tol)
    if P.shape[0] == 0:
        raise EmptyInput("spindle hull of an empty set")
    if P.shape[0] == 1:
        return ArcBoundary2(P.copy(), np.zeros((0, 2)))
    ball = circumball(P, tol)
    if ball.radius > 1.0 + tol.eps_geom:
        return WholePlane()
    if ball.radius >= 1.0 - tol.eps_geom:
        return SingleBall(ball.center)

    dist = np.linalg.norm(P - ball.center, axis=1)
    start = int(np.flatnonzero(dist >= dist.max() - tol.eps_geom)[0])
    order, centers = [start], []
    current = start
    for _ in range(P.shape[0] + 1):
        best, best_center, best_length = None, None, -1.0
        for j in range(P.shape[0]):
            if j == current:
                continue
            chord = P[j] - P[current]
            d = float(np.linalg.norm(chord))
            c = 0.5 * (P[current] + P[j]) + math.sqrt(max(1.0 - d * d / 4.0, 0.0)) * _left_normal(chord) / d
            if np.all(np.linalg.norm(P - c, axis=1) <= 1.0 + 10 * tol.eps_geom) and d > best_length:
                best, best_center, best_length = j, c, d
        if best is None:
            raise ImplementationAlarm(f"gift wrapping found no supporting arc at point {current}")
        centers.append(best_center)
        if best == start:
            break
        order.append(best)
        current = best
    else:
        raise ImplementationAlarm("gift wrapping did not close")
    logger.debug("spindle_hull_2d: %d of %d points are vertices", len(order), P.shape[0])
    return ArcBoundary2(P[order], np.vstack(centers))


def farthest_from_dual(X, p, tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[float]:
    """
    Distance from p to the farthest point of B[X], or None when B[X] is empty.

    Raises:
        Unsupported: ambient dimension above 3.
    """
    P = unique_points(as_points(X), tol)
    if P.shape[0] == 0:
        raise EmptyInput("point set is empty")
    p = as_point(p)
    n = P.shape[1]
    if p.size != n:
        raise BadParameters(f"query point has dimension {p.size}, the set has {n}")
    if n > 3:
        raise Unsupported("spindle hull membership is implemented for dimension at most 3")
    ball = circumball(P, tol)
    if ball.radius > 1.0 + tol.eps_geom:
        return None
    if ball.radius >= 1.0 - tol.eps_geom:
        return float(np.linalg.norm(p - ball.center))
    if n == 1:
        left, right = float(P.max()) - 1.0, float(P.min()) + 1.0
        return max(abs(p[0] - left), abs(p[0] - right))
    if n == 2:
        body = diskpoly.build_disk_polygon(P, tol)
        return diskpoly.farthest_point(body, p, tol)[1]
    try:
        return bp3.farthest_point_3d(P, p, tol)[1]
    except EmptyIntersection:
        return None


def spindle_hull_contains(X, p, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff p lies in the spindle convex hull of X (dimension at most 3)."""
    reach = farthest_from_dual(X, p, tol)
    return reach is None or reach <= 1.0 + tol.eps_geom


@dataclass(frozen=True, eq=False)
class SphericalRegion:
    """Spherical convex hull of generator directions on the sphere S(center, radius)."""
    center: np.ndarray
    radius: float
    generators: np.ndarray

    def __post_init__(self):
        G = as_points(self.generators)
        if G.shape[0] == 0:
            raise EmptyInput("spherical region needs at least one generator")
        norms = np.linalg.norm(G, axis=1)
        if np.any(norms == 0):
            raise BadParameters("generator directions must be nonzero")
        object.__setattr__(self, 'generators', G / norms[:, None])
        object.__setattr__(self, 'center', as_point(self.center))

    @cached_property
    def pole(self) -> np.ndarray:
        """
        Direction p maximizing min <g, p> over a box; the generators lie in
        the open hemisphere around p.

        Raises:
            NoHemisphere: no open hemisphere contains all generators.
        """
        G = self.generators
        m, n = G.shape
        cost = np.zeros(n + 1)
        cost[-1] = -1.0
        A_ub = np.hstack([-G, np.ones((m, 1))])
        res = linprog(cost, A_ub=A_ub, b_ub=np.zeros(m),
                      bounds=[(-1.0, 1.0)] * n + [(None, 1.0)], method='highs')
        if not res.success or -res.fun <= DEFAULT_TOLERANCE.eps_geom:
            raise NoHemisphere("generators are not contained in an open hemisphere")
        pole = res.x[:n]
        return pole / np.linalg.norm(pole)

    def points(self) -> np.ndarray:
        return self.center + self.radius * self.generators

    def to_dict(self) -> dict:
        return {'center': self.center.tolist(), 'radius': self.radius, 'generators': self.generators.tolist()}


def spherical_hull_contains(R: SphericalRegion, y, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Membership of direction y in the spherical convex hull of R.

    Generators and y are centrally projected to the tangent plane at the
    pole, where the question becomes Euclidean hull membership.
    """
    y = as_point(y)
    y = y / np.linalg.norm(y)
    pole = R.pole
    height = float(y @ pole)
    if height <= tol.eps_geom:
        return False
    projected = R.generators / (R.generators @ pole)[:, None]
    return in_convex_hull(projected, y / height, tol)


def contact_region(X, q, tol: Tolerance = DEFAULT_TOLERANCE) -> SphericalRegion:
    """Directions from q to the points of X on the unit sphere around q."""
    P = as_points(X)
    q = as_point(q)
    offsets = P - q
    on_sphere = np.abs(np.linalg.norm(offsets, axis=1) - 1.0) <= 10 * tol.eps_geom
    if not np.any(on_sphere):
        raise EmptyInput("no point of the set lies on the sphere")
    return SphericalRegion(q, 1.0, offsets[on_sphere])


def caratheodory_steinitz_reduce(X, y, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[int, ...]:
    """
    Indices of a small subset Q of X with y in conv_s Q.

    |Q| <= n when y is on the hull boundary and |Q| <= n+1 otherwise; the
    first qualifying subset in (size, lexicographic) order is returned.

    Raises:
        NotInHull: y is not in the spindle hull of X.
    """
    P = as_points(X)
    y = as_point(y)
    n = P.shape[1]
    reach = farthest_from_dual(P, y, tol)
    if reach is not None and reach > 1.0 + tol.eps_geom:
        raise NotInHull(f"point lies outside the spindle hull (reach {reach:.12f})")
    on_boundary = reach is not None and reach >= 1.0 - 10 * tol.eps_geom
    bound = n if on_boundary else n + 1
    for size in range(1, min(bound, P.shape[0]) + 1):
        for subset in itertools.combinations(range(P.shape[0]), size):
            if spindle_hull_contains(P[list(subset)], y, tol):
                logger.debug("caratheodory_steinitz_reduce: %s (boundary=%s)", subset, on_boundary)
                return subset
    raise ImplementationAlarm(f"no subset of size at most {bound} carries the point")


def strengthened_caratheodory(P, p, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[str, Optional[Tuple[int, ...]]]:
    """('conv', None) when p is in the Euclidean hull of P, else ('spindle', Q) with |Q| <= n."""
    pts = as_points(P)
    p = as_point(p)
    if not spindle_hull_contains(pts, p, tol):
        raise NotInHull("point lies outside the spindle hull")
    if in_convex_hull(pts, p, tol):
        return 'conv', None
    n = pts.shape[1]
    for size in range(1, min(n, pts.shape[0]) + 1):
        for subset in itertools.combinations(range(pts.shape[0]), size):
            if spindle_hull_contains(pts[list(subset)], p, tol):
                return 'spindle', subset
    raise ImplementationAlarm(f"no subset of size at most {n} carries the point")


def colorful_transversal(classes: Sequence, o, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[int, ...]:
    """
    One index per class such that o lies in the spindle hull of the chosen points.

    Raises:
        PreconditionError: some class does not carry o in its spindle hull;
            the failing class indices are attached.
    """
    o = as_point(o)
    groups = [as_points(X, dim=o.size) for X in classes]
    if len(groups) != o.size + 1:
        raise BadParameters(f"need {o.size + 1} classes in dimension {o.size}, got {len(groups)}")
    failed = [k for k, X in enumerate(groups) if X.shape[0] == 0 or not spindle_hull_contains(X, o, tol)]
    if failed:
        raise PreconditionError("classes do not contain the point in their spindle hulls", failed=failed)
    for choice in itertools.product(*[range(X.shape[0]) for X in groups]):
        T = np.vstack([groups[k][i] for k, i in enumerate(choice)])
        if spindle_hull_contains(T, o, tol):
            return tuple(choice)
    raise ImplementationAlarm("no colorful transversal carries the point")


def spindle_position(A, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff no point of A lies in the spindle hull of the others."""
    P = as_points(A)
    if P.shape[0] <= 1:
        return True
    if circumball(P, tol).radius > 1.0 + tol.eps_geom:
        raise OutOfScope("point set does not fit in a closed unit ball")
    for i in range(P.shape[0]):
        others = np.delete(P, i, axis=0)
        if spindle_hull_contains(others, P[i], tol):
            return False
    return True


def es_search(A, m: int, tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[Tuple[int, ...]]:
    """First m-subset (lexicographic) of A in spindle convex position, or None."""
    P = as_points(A, dim=2)
    cap = SEARCH_LIMITS.get('es_search_points', 20)
    if P.shape[0] > cap:
        raise SizeCapExceeded(f"es_search is limited to {cap} points, got {P.shape[0]}")
    if m < 1:
        raise BadParameters("subset size must be positive")
    if P.shape[0] and circumball(P, tol).radius > 1.0 + tol.eps_geom:
        raise OutOfScope("point set does not fit in a closed unit ball")
    for subset in itertools.combinations(range(P.shape[0]), m):
        if spindle_position(P[list(subset)], tol):
            return subset
    return None
