"""
Verified constructions on sphere families.

- titeica_check: three unit circles through a point meet pairwise again in
  three points that lie on a unit circle.
- sphere_family_helly_check: if every n-k members of a sphere family meet in
  a sphere of dimension at least k+1, so does the whole family.
- maehara_parameters / maehara_family: n+2 unit spheres in R^n (n >= 4) any
  n+1 of which have a common point while all n+2 do not, built from a simplex
  and an exsphere by inversion.
- inverted_unit_family: the inversion step for any simplex and tangent
  sphere whose center lies strictly inside or outside the circumball.
- kp_experiments: how inradius, diameter, circumradius and minimum width of
  a disk-polygon respond to a contraction of its centers.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, minimize

from ballpoly import diskpoly
from ballpoly.core import (
    DEFAULT_TOLERANCE,
    Ball,
    SubSphereKind,
    Tolerance,
    as_point,
    as_points,
    circumball,
    circumsphere,
    intersect_spheres,
    polar,
    regular_simplex,
    unique_points,
)
from ballpoly.exceptions import (
    BadParameters,
    ConstructionError,
    DegenerateConfiguration,
    HypothesisNotMet,
    InvalidPair,
    OutOfRange,
    OutOfScope,
    TheoremViolation,
)

logger = logging.getLogger(__name__)


# -- Titeica ----------------------------------------------------------------


def _reflect_across_line(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    axis = (b - a) / np.linalg.norm(b - a)
    offset = p - a
    foot = a + (offset @ axis) * axis
    return 2.0 * foot - p


def titeica_check(c1, c2, c3, p, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Second intersections of three unit circles through p and their circumcircle.

    The second common point of the circles around c_i and c_j is the mirror
    image of p in the line c_i c_j.

    Raises:
        DegenerateConfiguration: coincident centers or a tangent pair.
    """
    C = as_points([c1, c2, c3], dim=2)
    p = as_point(p)
    if np.any(np.abs(np.linalg.norm(C - p, axis=1) - 1.0) > 10 * tol.eps_geom):
        raise BadParameters("every circle must pass through p")
    points = []
    for i, j in ((1, 2), (2, 0), (0, 1)):
        if np.linalg.norm(C[i] - C[j]) <= tol.eps_geom:
            raise DegenerateConfiguration("two circle centers coincide", witness=[i, j])
        q = _reflect_across_line(p, C[i], C[j])
        if np.linalg.norm(q - p) <= tol.eps_geom:
            raise DegenerateConfiguration("two circles are tangent at p", witness=[i, j])
        points.append(q)
    circle = circumsphere(np.vstack(points), tol)
    deviation = abs(circle.radius - 1.0)
    logger.debug("titeica_check: radius %.15f", circle.radius)
    return {
        'points': [q.tolist() for q in points],
        'center': circle.center.tolist(),
        'radius': circle.radius,
        'deviation': deviation,
        'holds': deviation < 1e-9,
    }


# -- Helly-type theorem for sphere families ---------------------------------


def _sub_sphere_dim(s) -> int:
    return s.intrinsic_dim if s.kind == SubSphereKind.SPHERE else -1


def sphere_family_helly_check(family: Sequence[Ball], k: int, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Check the hypothesis on every (n-k)-subfamily, then the conclusion on the
    whole family.

    Raises:
        HypothesisNotMet: some n-k members meet in less than a (k+1)-sphere.
        TheoremViolation: the hypothesis holds but the whole family does not
            meet in a sphere of dimension at least k+1.
    """
    spheres = list(family)
    if not spheres:
        raise BadParameters("sphere family is empty")
    n = spheres[0].dim
    if not 0 <= k <= n - 1:
        raise BadParameters(f"k must lie in [0, {n - 1}]")
    size = n - k
    if len(spheres) < size:
        raise BadParameters(f"family needs at least {size} members")
    checked = 0
    for subset in itertools.combinations(range(len(spheres)), size):
        checked += 1
        common = intersect_spheres([spheres[i] for i in subset], tol)
        if _sub_sphere_dim(common) < k + 1:
            raise HypothesisNotMet(f"members {list(subset)} meet in dimension {_sub_sphere_dim(common)}",
                                   witness=list(subset))
    full = intersect_spheres(spheres, tol)
    if _sub_sphere_dim(full) < k + 1:
        logger.error("sphere family meets in dimension %d although every %d members meet in >= %d",
                     _sub_sphere_dim(full), size, k + 1)
        raise TheoremViolation("whole family meets in too small a sphere")
    return {'k': k, 'subsets_checked': checked, 'intersection': full.to_dict(), 'dim': _sub_sphere_dim(full)}


def helly_sharpness_family(n: int) -> List[Ball]:
    """n+1 unit spheres around the vertices of a regular simplex of circumradius 1; they share only o."""
    return [Ball(v, 1.0) for v in regular_simplex(n, circumradius=1.0)]


# -- Maehara counterexample -------------------------------------------------


def maehara_r(t: float, m: int) -> float:
    """Radius of the sphere tangent to the facet hyperplanes of the apex-over-simplex body at height t."""
    return math.sqrt(1.0 + t) / m ** 2 * (math.sqrt(m * m + 1.0 - (m * m - 1.0) * t) + math.sqrt(1.0 + t))


def maehara_g(t: float, m: int) -> float:
    r = maehara_r(t, m)
    return (r - t) ** 2 + 2.0 * r - 1.0


@dataclass(frozen=True, eq=False)
class MaeharaParameters:
    n: int
    m: int
    t_star: float
    r: float
    d: float
    apex: np.ndarray
    base: np.ndarray
    center: np.ndarray
    residual: float

    @property
    def vertices(self) -> np.ndarray:
        """Simplex vertices: the base first, the apex last."""
        return np.vstack([self.base, self.apex])

    @property
    def case(self) -> str:
        return 'inside' if self.d < 1.0 else 'outside'

    def to_dict(self) -> dict:
        return {
            'n': self.n, 'm': self.m, 't_star': self.t_star, 'r': self.r, 'd': self.d,
            'apex': self.apex.tolist(), 'base': self.base.tolist(), 'center': self.center.tolist(),
            'residual': self.residual, 'case': self.case,
        }


def maehara_parameters(n: int) -> MaeharaParameters:
    """
    Height t_star of the base hyperplane where R^2 - 2rR = d^2 with R = 1.

    g_3 has a double root at 1/2, returned directly; for m > 3 the root is
    bracketed by g_m(0) < 0 < g_m(1).
    """
    if n < 4:
        raise OutOfRange("the construction needs dimension at least 4")
    m = n - 1
    if m == 3:
        t_star = 0.5
    else:
        lo, hi = 1e-12, 1.0 - 1e-12
        if not (maehara_g(lo, m) < 0 < maehara_g(hi, m)):
            raise ConstructionError(f"g_{m} does not change sign on (0, 1)",
                                    residuals=[maehara_g(lo, m), maehara_g(hi, m)])
        t_star = bisect(maehara_g, lo, hi, args=(m,), xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
    r = maehara_r(t_star, m)
    axis = np.zeros(n)
    axis[-1] = 1.0
    base = np.zeros((m + 1, n))
    base[:, :m] = math.sqrt(1.0 - t_star ** 2) * regular_simplex(m)
    base[:, -1] = t_star
    center = (t_star - r) * axis
    residual = maehara_g(t_star, m)
    logger.info("maehara_parameters n=%d: t*=%.15f r=%.15f g=%.2e", n, t_star, r, residual)
    return MaeharaParameters(n, m, t_star, r, abs(r - t_star), axis, base, center, residual)


def _facet_planes(V: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unit normals and offsets (normal . x = offset) of the facet opposite each vertex, normals pointing outward."""
    normals, offsets = [], []
    centroid = V.mean(axis=0)
    for i in range(V.shape[0]):
        F = np.delete(V, i, axis=0)
        _, _, Vt = np.linalg.svd(F[1:] - F[0])
        normal = Vt[-1]
        if normal @ (centroid - F[0]) > 0:
            normal = -normal
        normals.append(normal)
        offsets.append(float(normal @ F[0]))
    return np.array(normals), np.array(offsets)


def exsphere_opposite(vertices, apex_index: int) -> Tuple[np.ndarray, float]:
    """
    Sphere tangent to every facet hyperplane of a simplex with its center
    beyond the facet opposite the apex.

    Solves offset_i - normal_i . c = r for the facets through the apex and
    normal_j . c - offset_j = r for the facet opposite it.
    """
    V = as_points(vertices)
    n = V.shape[1]
    if V.shape[0] != n + 1:
        raise BadParameters(f"a simplex in dimension {n} has {n + 1} vertices")
    normals, offsets = _facet_planes(V)
    sign = np.ones(n + 1)
    sign[apex_index] = -1.0
    M = np.hstack([sign[:, None] * normals, np.ones((n + 1, 1))])
    solution = np.linalg.solve(M, sign * offsets)
    return solution[:n], float(solution[n])


@dataclass(frozen=True, eq=False)
class MaeharaFamily:
    parameters: MaeharaParameters
    centers: np.ndarray
    report: dict

    @property
    def spheres(self) -> List[Ball]:
        return [Ball(c, 1.0) for c in self.centers]

    def to_dict(self) -> dict:
        return {'parameters': self.parameters.to_dict(), 'centers': self.centers.tolist(), 'report': self.report}


def _point_of(common) -> Optional[np.ndarray]:
    if common.kind == SubSphereKind.POINT:
        return common.center
    if common.kind == SubSphereKind.SPHERE:
        return common.center + common.radius * common.frame[0]
    return None


def _common_point_margin(centers: np.ndarray, starts: Sequence[np.ndarray]) -> float:
    """min over x of max_i | |x - c_i| - 1 |, by SLSQP on the epigraph form."""
    def constraints(z):
        gaps = np.linalg.norm(centers - z[:-1], axis=1) - 1.0
        return np.concatenate([z[-1] - gaps, z[-1] + gaps])

    best = math.inf
    for x0 in starts:
        gaps = np.abs(np.linalg.norm(centers - x0, axis=1) - 1.0)
        z0 = np.append(x0, gaps.max())
        res = minimize(lambda z: z[-1], z0, method='SLSQP',
                       constraints=[{'type': 'ineq', 'fun': constraints}],
                       options={'ftol': 1e-15, 'maxiter': 1000})
        x = res.x[:-1]
        best = min(best, float(np.max(np.abs(np.linalg.norm(centers - x, axis=1) - 1.0))))
    return best


def inverted_unit_family(vertices, center, r: float,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, dict]:
    """
    Invert the facet hyperplanes and the circumsphere S(o, R) of a simplex in a
    sphere S(center, r) tangent to every facet hyperplane, then scale by 2/r.

    With d = |center - o| the images all have radius r/2 when R^2 - 2rR = d^2
    (center inside B(o, R)) or R^2 + 2rR = d^2 (center outside B[o, R]); the
    relation checked is the one matching the side the center lies on.

    Returns the n+2 unit sphere centers, circumsphere image first, and a
    report with the case, both intersection checks and 'holds'.

    Raises:
        BadParameters: not a simplex, or the sphere misses a facet hyperplane.
        ConstructionError: the center lies on the circumsphere or the
            relation for its side fails.
    """
    V = as_points(vertices)
    n = V.shape[1]
    if V.shape[0] != n + 1:
        raise BadParameters(f"a simplex in dimension {n} has {n + 1} vertices")
    c = as_point(center)
    circ = circumsphere(V, tol)
    R = circ.radius
    normals, offsets = _facet_planes(V)
    distances = offsets - normals @ c
    if np.any(np.abs(np.abs(distances) - r) > 1e-9 * max(1.0, r)):
        raise BadParameters(f"sphere is not tangent to every facet hyperplane: distances {np.abs(distances).round(12).tolist()}")
    d = float(np.linalg.norm(c - circ.center))
    if abs(d - R) <= tol.eps_geom:
        raise ConstructionError("tangent sphere center lies on the circumsphere", residuals=[d - R])
    case = 'inside' if d < R else 'outside'
    sign = -1.0 if case == 'inside' else 1.0
    relation = R * R + sign * 2.0 * r * R - d * d
    if abs(relation) > 1e-9 * max(1.0, R * R):
        raise ConstructionError(f"center is {case} the circumball but R^2 {sign:+.0f}*2rR != d^2", residuals=[relation])

    images = []
    for normal, dist in zip(normals, distances):
        toward = normal if dist > 0 else -normal
        images.append((c + (r * r / (2.0 * abs(dist))) * toward, r * r / (2.0 * abs(dist))))
    s = r * r / (d * d - R * R)
    images.insert(0, (c + s * (circ.center - c), abs(s) * R))
    radii = np.array([rad for _, rad in images])
    if np.any(np.abs(radii - r / 2.0) > 1e-9 * max(1.0, r)):
        raise ConstructionError("inverted spheres do not all have radius r/2", residuals=(radii - r / 2.0).tolist())
    centers = np.vstack([x for x, _ in images]) * (2.0 / r)

    leave_one_out, starts = [], []
    for i in range(centers.shape[0]):
        sub = np.delete(centers, i, axis=0)
        common = intersect_spheres([Ball(x, 1.0) for x in sub], tol)
        x = _point_of(common)
        residual = math.inf if x is None else float(np.max(np.abs(np.linalg.norm(sub - x, axis=1) - 1.0)))
        leave_one_out.append(residual)
        if x is not None:
            starts.append(x)
    full = intersect_spheres([Ball(x, 1.0) for x in centers], tol)
    margin = _common_point_margin(centers, starts) if starts else 0.0
    report = {
        'case': case,
        'relation_residual': relation,
        'leave_one_out_residuals': leave_one_out,
        'full_intersection': full.kind.value,
        'full_margin': margin,
        'holds': bool(max(leave_one_out) < 1e-8 and full.is_empty and margin > 1e-6),
    }
    logger.debug("inverted_unit_family n=%d case=%s margin=%.3e", n, case, margin)
    return centers, report


def maehara_family(n: int, tol: Tolerance = DEFAULT_TOLERANCE) -> MaeharaFamily:
    """
    n+2 unit spheres in R^n, any n+1 with a common point, all n+2 without one.

    Raises:
        OutOfRange: n < 4.
        ConstructionError: a leave-one-out family has no common point or the
            full family is not separated from having one.
    """
    params = maehara_parameters(n)
    centers, report = inverted_unit_family(params.vertices, params.center, params.r, tol)
    if not report['holds']:
        logger.error("maehara_family n=%d failed verification: %s", n, report)
        raise ConstructionError("constructed family does not have the intersection pattern",
                                residuals=report['leave_one_out_residuals'] + [report['full_margin']])
    return MaeharaFamily(params, centers, report)


# -- Kneser-Poulsen type experiments ---------------------------------------


@dataclass(frozen=True, eq=False)
class ContractionPair:
    """Y[i] is the image of X[i]; no pairwise distance grows."""
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X, Y = as_points(self.X, dim=2), as_points(self.Y, dim=2)
        if X.shape != Y.shape or X.shape[0] == 0:
            raise InvalidPair("X and Y must be nonempty and of the same length")
        dx = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=2)
        dy = np.linalg.norm(Y[:, None, :] - Y[None, :, :], axis=2)
        grown = np.argwhere(dy > dx + DEFAULT_TOLERANCE.eps_geom)
        if grown.size:
            i, j = grown[0]
            raise InvalidPair(f"distance between points {i} and {j} grows from {dx[i, j]:.6f} to {dy[i, j]:.6f}")
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'Y', Y)


def random_contraction_pair(rng: np.random.Generator, size: int) -> ContractionPair:
    """Random centers in the disk of radius 0.45 and their image under a random linear contraction."""
    radii = 0.45 * np.sqrt(rng.uniform(0.0, 1.0, size))
    angles = rng.uniform(0.0, 2.0 * math.pi, size)
    X = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    M = rng.normal(size=(2, 2))
    M *= rng.uniform(0.2, 1.0) / np.linalg.norm(M, 2)
    return ContractionPair(X, X @ M.T)


def _body_functionals(centers: np.ndarray, tol: Tolerance) -> dict:
    body = diskpoly.build_disk_polygon(centers, tol)
    if isinstance(body, diskpoly.DegenerateDiskPolygon):
        return {'diameter': 0.0, 'min_width': 0.0, 'circumradius': 0.0, 'inradius_direct': 0.0}
    profile = diskpoly.width_profile(body, tol)
    return {
        'diameter': profile['diameter'],
        'min_width': profile['min_width'],
        'circumradius': diskpoly.polygon_circumradius(body, tol),
        'inradius_direct': diskpoly.inradius_direct(body, tol),
    }


def kp_experiments(pair: ContractionPair, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Inradius, diameter, circumradius and minimum width of B[X] and B[Y].

    The inradius is 1 - crr(centers); it can only grow under a contraction.
    The other functionals are reported as signed deltas (Y minus X).
    """
    X, Y = unique_points(pair.X, tol), unique_points(pair.Y, tol)
    crr_x = circumball(X, tol).radius
    if crr_x > 1.0 + tol.eps_geom:
        raise OutOfScope("B[X] is empty")
    crr_y = circumball(Y, tol).radius
    fx, fy = _body_functionals(X, tol), _body_functionals(Y, tol)
    inradius_x, inradius_y = 1.0 - crr_x, 1.0 - crr_y
    report = {
        'inradius_x': inradius_x,
        'inradius_y': inradius_y,
        'inradius_ok': bool(inradius_y >= inradius_x - tol.eps_geom),
        'diameter_delta': fy['diameter'] - fx['diameter'],
        'circumradius_delta': fy['circumradius'] - fx['circumradius'],
        'width_delta': fy['min_width'] - fx['min_width'],
        'body_x': fx,
        'body_y': fy,
        'inradius_identity_error': max(abs(fx['inradius_direct'] - inradius_x),
                                       abs(fy['inradius_direct'] - inradius_y)),
    }
    logger.debug("kp_experiments: %s", report)
    return report


def kp_anchor_pairs() -> dict:
    """
    Three-disk configurations given in polar coordinates where a contraction
    of the centers shrinks a functional of B[X].

    'diameter' shrinks diameter and circumradius; 'width' shrinks the minimum
    width (the two moved centers merge at (0.8, 0)).
    """
    o = np.zeros(2)
    return {
        'diameter': ContractionPair(
            np.vstack([o, polar(0.5, math.pi / 3), polar(0.5, -math.pi / 3)]),
            np.vstack([o, polar(0.5, math.pi / 4), polar(0.5, -math.pi / 4)]),
        ),
        'width': ContractionPair(
            np.vstack([o, polar(0.8, math.pi / 10), polar(0.8, -math.pi / 10)]),
            np.vstack([o, polar(0.8, 0.0), polar(0.8, 0.0)]),
        ),
    }
