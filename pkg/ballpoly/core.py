"""
Euclidean and spherical primitives for spindle convexity.

Covers arc-distance, spindles, circumballs, membership in intersections of
balls and the classification of sphere-family intersections in any
dimension. Everything here is a pure function of numpy arrays or of the
frozen value types defined below.

Usage:
    from ballpoly.core import arc_distance, spindle_contains, circumball

    arc_distance([0, 0], [1, 0])                    # pi / 3
    spindle_contains([0, 0], [1, 0], [0.5, 0.1])    # True
    circumball([[-1, 0], [1, 0]]).radius            # 1.0
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog

from ballpoly.exceptions import (
    BadParameters,
    DegenerateConfiguration,
    DimensionMismatch,
    EmptyInput,
    ImplementationAlarm,
)

# Try to import configuration, fall back to defaults
try:
    from ballpoly_config import TOLERANCES, SEARCH_LIMITS
except ImportError:
    TOLERANCES = {'eps_geom': 1e-9, 'eps_opt': 1e-12, 'degeneracy_band': 1e-6}
    SEARCH_LIMITS = {'exhaustive_circumball': 12}

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True)
class Tolerance:
    """Two-tier tolerance: predicates use eps_geom, optimizers stop at eps_opt."""
    eps_geom: float = 1e-9
    eps_opt: float = 1e-12
    degeneracy_band: float = 1e-6

    def __post_init__(self):
        if not (0 < self.eps_opt <= self.eps_geom < 1e-3):
            raise BadParameters(
                f"need 0 < eps_opt <= eps_geom < 1e-3, got eps_opt={self.eps_opt}, eps_geom={self.eps_geom}"
            )
        if self.degeneracy_band < self.eps_geom:
            raise BadParameters("degeneracy_band must not be smaller than eps_geom")

    @classmethod
    def from_config(cls, eps_geom: Optional[float] = None, eps_opt: Optional[float] = None) -> 'Tolerance':
        """Build from ballpoly_config.TOLERANCES, with optional per-run overrides."""
        geom = eps_geom if eps_geom is not None else TOLERANCES.get('eps_geom', 1e-9)
        opt = eps_opt if eps_opt is not None else TOLERANCES.get('eps_opt', 1e-12)
        band = TOLERANCES.get('degeneracy_band', 1e-6)
        return cls(eps_geom=geom, eps_opt=min(opt, geom), degeneracy_band=max(band, geom))


DEFAULT_TOLERANCE = Tolerance.from_config()


class _Undefined:
    """Result of arc_distance for points farther apart than 2."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'UNDEFINED'

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


def as_point(x: ArrayLike) -> np.ndarray:
    """Convert to a finite 1-D float vector of length >= 1."""
    p = np.asarray(x, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise BadParameters(f"not a finite point: {x!r}")
    return p


def as_points(X: Iterable[ArrayLike], dim: Optional[int] = None) -> np.ndarray:
    """Convert a point collection to an (m, n) float array (m may be 0)."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        pts = X.astype(float)
    else:
        rows = [as_point(x) for x in X]
        if not rows:
            return np.zeros((0, dim if dim is not None else 0))
        if len({r.size for r in rows}) != 1:
            raise DimensionMismatch("points have different ambient dimensions")
        pts = np.vstack(rows)
    if not np.all(np.isfinite(pts)):
        raise BadParameters("point set contains non-finite coordinates")
    if dim is not None and pts.shape[0] and pts.shape[1] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {pts.shape[1]}")
    return pts


def unique_points(X: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Drop points within eps_geom of an earlier one, keeping input order."""
    pts = as_points(X)
    keep: List[int] = []
    for i, p in enumerate(pts):
        if all(np.linalg.norm(p - pts[j]) > tol.eps_geom for j in keep):
            keep.append(i)
    return pts[keep]


def polar(radius: float, angle: float) -> np.ndarray:
    return np.array([radius * math.cos(angle), radius * math.sin(angle)])


def _check_same_dim(*points: np.ndarray) -> None:
    if len({p.size for p in points}) != 1:
        raise DimensionMismatch("points live in different ambient dimensions")


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed or open ball; the operation using it decides which."""
    center: np.ndarray
    radius: float
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'center', as_point(self.center))
        object.__setattr__(self, 'radius', float(self.radius))
        if self.degenerate:
            if self.radius < 0:
                raise BadParameters("radius must be non-negative")
        elif not self.radius > 0:
            raise BadParameters(f"radius must be positive, got {self.radius}")

    @property
    def dim(self) -> int:
        return self.center.size

    def contains(self, x: ArrayLike, closed: bool = True, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        d = float(np.linalg.norm(as_point(x) - self.center))
        if closed:
            return d <= self.radius + tol.eps_geom
        return d < self.radius - tol.eps_geom

    def to_dict(self) -> dict:
        return {'center': self.center.tolist(), 'radius': self.radius, 'degenerate': self.degenerate}


class Sphere(Ball):
    """Boundary sphere S(center, radius); same data as Ball."""


class SubSphereKind(str, Enum):
    EMPTY = 'empty'
    POINT = 'point'
    SPHERE = 'sphere'


@dataclass(frozen=True, eq=False)
class SubSphere:
    """
    Result of intersecting spheres: empty, a point, or a k-sphere.

    For kind=sphere the sphere lives in the affine subspace center + span(frame),
    where frame has k+1 orthonormal rows. intrinsic_dim is 0 for points and
    empty results; kind tells a point from a 0-sphere, which is a pair of
    points.
    """
    kind: SubSphereKind
    center: Optional[np.ndarray] = None
    radius: float = 0.0
    frame: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    intrinsic_dim: int = 0

    @property
    def is_empty(self) -> bool:
        return self.kind == SubSphereKind.EMPTY

    def points(self) -> np.ndarray:
        """Explicit points for point results and 0-spheres."""
        if self.kind == SubSphereKind.POINT:
            return self.center[None, :]
        if self.kind == SubSphereKind.SPHERE and self.intrinsic_dim == 0:
            u = self.frame[0]
            return np.vstack([self.center + self.radius * u, self.center - self.radius * u])
        raise BadParameters(f"{self.kind.value} of dimension {self.intrinsic_dim} is not a finite point set")

    def contains(self, x: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        if self.kind == SubSphereKind.EMPTY:
            return False
        p = as_point(x)
        if self.kind == SubSphereKind.POINT:
            return np.linalg.norm(p - self.center) <= tol.eps_geom
        offset = p - self.center
        off_plane = offset - self.frame.T @ (self.frame @ offset)
        return (np.linalg.norm(off_plane) <= tol.eps_geom
                and abs(np.linalg.norm(offset) - self.radius) <= tol.eps_geom)

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'center': None if self.center is None else self.center.tolist(),
            'radius': self.radius,
            'intrinsic_dim': self.intrinsic_dim,
            'frame': self.frame.tolist(),
        }


class TriangleClass(str, Enum):
    GREATER = 'greater'
    EQUAL = 'equal'
    LESS = 'less'


def arc_distance(a: ArrayLike, b: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE):
    """
    Length of the shorter unit-circle arc joining a and b.

    Args:
        a, b: Points of the same dimension.

    Returns:
        2*arcsin(|a-b|/2) in radians, or UNDEFINED when |a-b| > 2 + eps_geom.
        Chords in (2, 2 + eps_geom] are clamped to give pi.
    """
    a, b = as_point(a), as_point(b)
    _check_same_dim(a, b)
    chord = float(np.linalg.norm(a - b))
    if chord > 2.0 + tol.eps_geom:
        return UNDEFINED
    return 2.0 * math.asin(min(chord / 2.0, 1.0))


def classify_arc_triangle(a: ArrayLike, b: ArrayLike, c: ArrayLike,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> TriangleClass:
    """Sign of rho(a,b) + rho(b,c) - rho(a,c) with an eps_geom band for EQUAL."""
    rab, rbc, rac = arc_distance(a, b, tol), arc_distance(b, c, tol), arc_distance(a, c, tol)
    if UNDEFINED in (rab, rbc, rac):
        raise BadParameters("arc triangle needs all pairwise distances at most 2")
    excess = rab + rbc - rac
    if abs(excess) <= tol.eps_geom:
        return TriangleClass.EQUAL
    return TriangleClass.GREATER if excess > 0 else TriangleClass.LESS


def quadrilateral_excess(a: ArrayLike, b: ArrayLike, c: ArrayLike, d: ArrayLike,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """rho(a,c) + rho(b,d) - rho(a,b) - rho(c,d) for a quadrilateral a, b, c, d."""
    values = [arc_distance(a, c, tol), arc_distance(b, d, tol), arc_distance(a, b, tol), arc_distance(c, d, tol)]
    if UNDEFINED in values:
        raise BadParameters("quadrilateral needs all pairwise distances at most 2")
    return values[0] + values[1] - values[2] - values[3]


def spindle_contains(a: ArrayLike, b: ArrayLike, x: ArrayLike, closed: bool = True,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Membership in the closed (or open) spindle of a and b.

    The spindle is rotationally symmetric about the line ab. In the half-plane
    through that line and x, with axial coordinate s (from the midpoint) and
    radial coordinate t, the closed spindle is s^2 + (t + k)^2 <= 1 where
    k = sqrt(1 - |a-b|^2/4) is the offset of the far arc center.
    """
    a, b, x = as_point(a), as_point(b), as_point(x)
    _check_same_dim(a, b, x)
    d = float(np.linalg.norm(b - a))
    if d > 2.0 + tol.eps_geom:
        return True
    mid = 0.5 * (a + b)
    if d >= 2.0 - tol.eps_geom:
        dist = float(np.linalg.norm(x - mid))
        return dist <= 1.0 + tol.eps_geom if closed else dist < 1.0 - tol.eps_geom
    if d <= tol.eps_geom:
        return bool(closed and np.linalg.norm(x - mid) <= tol.eps_geom)
    axis = (b - a) / d
    offset = x - mid
    s = float(offset @ axis)
    t = float(np.linalg.norm(offset - s * axis))
    k = math.sqrt(max(1.0 - d * d / 4.0, 0.0))
    reach = math.hypot(s, t + k)
    return reach <= 1.0 + tol.eps_geom if closed else reach < 1.0 - tol.eps_geom


def in_ball_intersection(centers: ArrayLike, radius: float, x: ArrayLike, closed: bool = True,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff x lies in every ball of the given radius around the centers."""
    p = as_point(x)
    C = as_points(centers, dim=p.size)
    if C.shape[0] == 0:
        return True
    dist = np.linalg.norm(C - p, axis=1)
    if closed:
        return bool(np.all(dist <= radius + tol.eps_geom))
    return bool(np.all(dist < radius - tol.eps_geom))


def _affine_circumcenter(S: np.ndarray) -> Tuple[np.ndarray, float]:
    """Center (in the affine hull of S) equidistant from all rows of S, and squared radius."""
    p0 = S[0]
    if S.shape[0] == 1:
        return p0.copy(), 0.0
    V = S[1:] - p0
    G = V @ V.T
    lam, *_ = np.linalg.lstsq(2.0 * G, np.diag(G), rcond=None)
    center = p0 + lam @ V
    return center, float(np.max(np.sum((S - center) ** 2, axis=1)))


def circumsphere(points: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> Ball:
    """
    Sphere through affinely independent points, centered in their affine hull.

    Raises:
        DegenerateConfiguration: if the points are affinely dependent.
    """
    S = as_points(points)
    if S.shape[0] < 2:
        raise EmptyInput("circumsphere needs at least two points")
    V = S[1:] - S[0]
    sv = np.linalg.svd(V, compute_uv=False)
    if sv.size < V.shape[0] or sv[-1] <= tol.eps_geom * max(sv[0], 1.0):
        raise DegenerateConfiguration("points are affinely dependent", witness=S.tolist())
    center, r2 = _affine_circumcenter(S)
    return Ball(center, math.sqrt(r2))


def _circumball_exhaustive(P: np.ndarray, tol: Tolerance) -> Tuple[np.ndarray, float]:
    n = P.shape[1]
    best: Optional[Tuple[np.ndarray, float]] = None
    for size in range(2, min(n + 1, P.shape[0]) + 1):
        for subset in itertools.combinations(range(P.shape[0]), size):
            center, r2 = _affine_circumcenter(P[list(subset)])
            r = math.sqrt(r2)
            if best is not None and r >= best[1]:
                continue
            if np.all(np.linalg.norm(P - center, axis=1) <= r + tol.eps_geom * max(1.0, r)):
                best = (center, r)
    return best


def _circumball_mtf(P: np.ndarray, tol: Tolerance) -> Tuple[np.ndarray, float]:
    """Move-to-front incremental construction with an explicit support set."""
    n = P.shape[1]
    order = [P[i] for i in range(P.shape[0])]

    def inside(p, center, r2):
        return center is not None and math.sqrt(float((p - center) @ (p - center))) <= math.sqrt(r2) + tol.eps_geom

    def mtf(end: int, support: List[np.ndarray]):
        if support:
            center, r2 = _affine_circumcenter(np.vstack(support))
        else:
            center, r2 = None, -1.0
        if len(support) == n + 1:
            return center, r2
        i = 0
        while i < end:
            p = order[i]
            if not inside(p, center, r2):
                center, r2 = mtf(i, support + [p])
                order.insert(0, order.pop(i))
            i += 1
        return center, r2

    center, r2 = mtf(len(order), [])
    return center, math.sqrt(r2)


def circumball(X: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> Ball:
    """
    Minimal enclosing ball of a finite point set.

    Small inputs use exhaustive support-set enumeration, larger ones the
    move-to-front construction; either way the result is checked to contain
    every point. A singleton gives a degenerate ball of radius 0.
    """
    P = unique_points(X, tol)
    if P.shape[0] == 0:
        raise EmptyInput("circumball of an empty set")
    if P.shape[0] == 1:
        return Ball(P[0], 0.0, degenerate=True)
    if P.shape[0] <= SEARCH_LIMITS.get('exhaustive_circumball', 12):
        center, r = _circumball_exhaustive(P, tol)
    else:
        center, r = _circumball_mtf(P, tol)
    slack = np.linalg.norm(P - center, axis=1) - r
    if np.any(slack > tol.eps_geom * max(1.0, r)):
        logger.warning("circumball certification failed, max slack %.3e", float(slack.max()))
        raise ImplementationAlarm("circumball does not contain all points")
    return Ball(center, r)


def circumradius(X: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    return circumball(X, tol).radius


def circumball_support(X: ArrayLike, ball: Ball, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Indices of points on the boundary of the given enclosing ball."""
    P = as_points(X)
    gap = np.abs(np.linalg.norm(P - ball.center, axis=1) - ball.radius)
    return np.flatnonzero(gap <= 10 * tol.eps_geom * max(1.0, ball.radius))


def in_convex_hull(points: ArrayLike, y: ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Euclidean convex-hull membership via an L1-slack LP."""
    P = as_points(points)
    y = as_point(y)
    if P.shape[0] == 0:
        return False
    m, n = P.shape
    # variables: lambda (m), s_plus (n), s_minus (n)
    cost = np.concatenate([np.zeros(m), np.ones(2 * n)])
    A_eq = np.zeros((n + 1, m + 2 * n))
    A_eq[:n, :m] = P.T
    A_eq[:n, m:m + n] = np.eye(n)
    A_eq[:n, m + n:] = -np.eye(n)
    A_eq[n, :m] = 1.0
    b_eq = np.concatenate([y, [1.0]])
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (m + 2 * n), method='highs')
    if not res.success:
        logger.debug("hull membership LP failed: %s", res.message)
        return False
    scale = max(1.0, float(np.abs(P).max()), float(np.abs(y).max()))
    return res.fun <= 10 * tol.eps_geom * scale


def intersect_spheres(family: Sequence[Ball], tol: Tolerance = DEFAULT_TOLERANCE) -> SubSphere:
    """
    Exact classification of the intersection of a family of spheres.

    Subtracting the first sphere equation from the others gives the radical
    affine subspace A x = b; the intersection is the first sphere cut by that
    subspace. Rank decisions use the cutoff eps_geom * (largest singular value).
    """
    spheres = list(family)
    if not spheres:
        raise EmptyInput("sphere family is empty")
    C = as_points([s.center for s in spheres])
    R = np.array([float(s.radius) for s in spheres])
    n = C.shape[1]
    c0, r0 = C[0], R[0]
    if len(spheres) == 1:
        return SubSphere(SubSphereKind.SPHERE, c0.copy(), r0, np.eye(n), n - 1)

    A = 2.0 * (C[1:] - c0)
    b = (np.sum(C[1:] ** 2, axis=1) - R[1:] ** 2) - (c0 @ c0 - r0 ** 2)
    scale = max(1.0, float(np.abs(b).max()), r0 ** 2)
    U, s, Vt = np.linalg.svd(A)
    rank = int(np.sum(s > tol.eps_geom * s[0])) if s[0] > 0 else 0
    logger.debug("intersect_spheres: %d spheres, rank %d, singular values %s", len(spheres), rank, s)

    if rank == 0:
        if np.all(np.abs(b) <= 10 * tol.eps_geom * scale):
            return SubSphere(SubSphereKind.SPHERE, c0.copy(), r0, np.eye(n), n - 1)
        return SubSphere(SubSphereKind.EMPTY)

    x_p = Vt[:rank].T @ ((U[:, :rank].T @ b) / s[:rank])
    if np.linalg.norm(A @ x_p - b) > 10 * tol.eps_geom * scale:
        return SubSphere(SubSphereKind.EMPTY)

    N = Vt[rank:]
    q = x_p + N.T @ (N @ (c0 - x_p))
    rho2 = r0 ** 2 - float((c0 - q) @ (c0 - q))
    point_band = 2.0 * tol.eps_geom * max(r0, 1.0)
    if N.shape[0] == 0:
        if abs(rho2) <= point_band:
            return SubSphere(SubSphereKind.POINT, q, 0.0)
        return SubSphere(SubSphereKind.EMPTY)
    if rho2 < -point_band:
        return SubSphere(SubSphereKind.EMPTY)
    if rho2 <= point_band:
        return SubSphere(SubSphereKind.POINT, q, 0.0)
    return SubSphere(SubSphereKind.SPHERE, q, math.sqrt(rho2), N.copy(), N.shape[0] - 1)


@lru_cache(maxsize=32)
def _regular_simplex_unit(n: int) -> np.ndarray:
    E = np.eye(n + 1) - 1.0 / (n + 1)
    _, _, Vt = np.linalg.svd(E)
    V = E @ Vt[:n].T
    V /= np.linalg.norm(V[0])
    V.setflags(write=False)
    return V


def regular_simplex(n: int, circumradius: float = 1.0) -> np.ndarray:
    """Vertices ((n+1) x n) of a regular n-simplex centered at the origin."""
    if n < 1:
        raise BadParameters("simplex dimension must be positive")
    return circumradius * _regular_simplex_unit(n).copy()


def invert(x: ArrayLike, center: ArrayLike, radius: float) -> np.ndarray:
    """Inversion in the sphere S(center, radius)."""
    x, c = as_point(x), as_point(center)
    offset = x - c
    d2 = float(offset @ offset)
    if d2 == 0.0:
        raise BadParameters("inversion is undefined at the center")
    return c + (radius * radius / d2) * offset
