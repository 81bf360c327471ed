"""
Disk-polygons: intersections of finitely many unit disks in the plane.

Provides construction with the reduced generating family, perimeter and area,
extreme-point queries over the boundary arcs, regular inscribed and
circumscribed families, multi-start extremal searches and Dowker-type
inequality tables.

Usage:
    from ballpoly.diskpoly import build_disk_polygon, measure, dowker_table

    P = build_disk_polygon([[-0.5, 0], [0.5, 0]])     # lens
    measure(P)['perimeter']                          # 4*pi/3
    dowker_table(0.5, 4, 8, settings=['inscribed-perimeter'])
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import minimize

from ballpoly.core import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_point,
    as_points,
    circumball,
    unique_points,
)
from ballpoly.exceptions import (
    BadParameters,
    DegenerateConfiguration,
    ImplementationAlarm,
    SizeCapExceeded,
)

try:
    from ballpoly_config import OPTIMIZER, SEARCH_LIMITS
except ImportError:
    OPTIMIZER = {'restarts': 32, 'max_workers': 4}
    SEARCH_LIMITS = {'dowker_n_max': 12}

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

DOWKER_SETTINGS = (
    'inscribed-perimeter',
    'inscribed-area',
    'circumscribed-area',
    'circumscribed-perimeter',
)


class Degenerate(str, Enum):
    EMPTY = 'empty'
    POINT = 'point'
    FULL_DISK_FAMILY = 'full_disk_family'


@dataclass(frozen=True)
class DegenerateDiskPolygon:
    """Intersection that is empty, a single point, or unconstrained (no centers)."""
    kind: Degenerate
    point: Optional[np.ndarray] = None


@dataclass(frozen=True)
class DiskArc:
    center_index: int
    start: int
    end: int


def segment_area(chord: float) -> float:
    """Area between a chord of the unit circle and its minor arc."""
    c = min(max(chord, 0.0), 2.0)
    return math.asin(c / 2.0) - (c / 4.0) * math.sqrt(max(4.0 - c * c, 0.0))


def arc_length(chord: float) -> float:
    return 2.0 * math.asin(min(max(chord, 0.0), 2.0) / 2.0)


def _angle(v: np.ndarray) -> float:
    return math.atan2(v[1], v[0])


def _in_arc(angle: float, start: float, sweep: float, tol: Tolerance) -> bool:
    return (angle - start) % TWO_PI <= sweep + tol.eps_geom


def _shoelace(V: np.ndarray) -> float:
    if V.shape[0] < 3:
        return 0.0
    x, y = V[:, 0], V[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True, eq=False)
class DiskPolygon:
    """
    Intersection of unit disks with nonempty interior.

    centers is the reduced family; vertices run counter-clockwise and edge k
    is the arc of the unit circle around centers[edges[k].center_index] from
    vertices[edges[k].start] to vertices[edges[k].end]. A single center is
    the full unit disk (no vertices, no edges).
    """
    centers: np.ndarray
    vertices: np.ndarray
    edges: Tuple[DiskArc, ...]
    interior_point: np.ndarray

    @property
    def is_full_disk(self) -> bool:
        return self.centers.shape[0] == 1

    @property
    def is_standard(self) -> bool:
        return self.centers.shape[0] >= 3

    def arc_span(self, k: int) -> Tuple[float, float]:
        """Start angle and CCW sweep of edge k about its center."""
        e = self.edges[k]
        c = self.centers[e.center_index]
        start = _angle(self.vertices[e.start] - c)
        end = _angle(self.vertices[e.end] - c)
        return start, (end - start) % TWO_PI

    def contains(self, p, closed: bool = True, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        d = np.linalg.norm(self.centers - as_point(p), axis=1)
        return bool(np.all(d <= 1.0 + tol.eps_geom)) if closed else bool(np.all(d < 1.0 - tol.eps_geom))

    def boundary_points(self, per_arc: int = 32) -> np.ndarray:
        """Points along the boundary, arc by arc, in CCW order."""
        if self.is_full_disk:
            t = np.linspace(0.0, TWO_PI, per_arc, endpoint=False)
            return self.centers[0] + np.column_stack([np.cos(t), np.sin(t)])
        chunks = []
        for k, e in enumerate(self.edges):
            start, sweep = self.arc_span(k)
            t = start + sweep * np.linspace(0.0, 1.0, per_arc, endpoint=False)
            chunks.append(self.centers[e.center_index] + np.column_stack([np.cos(t), np.sin(t)]))
        return np.vstack(chunks)

    def to_circle_polygon(self) -> 'CirclePolygon':
        if self.is_full_disk:
            raise BadParameters("a full disk has no vertices")
        return CirclePolygon(self.vertices.copy(), tuple([1] * len(self.edges)))

    def to_dict(self) -> dict:
        return {
            'centers': self.centers.tolist(),
            'vertices': self.vertices.tolist(),
            'edges': [{'center': e.center_index, 'start': e.start, 'end': e.end} for e in self.edges],
        }


@dataclass(frozen=True, eq=False)
class CirclePolygon:
    """
    Closed chain of unit-circle arcs through x_0, ..., x_{n-1} (x_n = x_0).

    arc_side[i] is +1 when the arc from x_i to x_{i+1} bulges to the right of
    the direction of travel and -1 when it bulges to the left.
    """
    vertices: np.ndarray
    arc_side: Tuple[int, ...]

    def __post_init__(self):
        V = as_points(self.vertices, dim=2)
        object.__setattr__(self, 'vertices', V)
        if len(self.arc_side) != V.shape[0]:
            raise BadParameters("one arc choice per edge is required")
        chords = np.linalg.norm(np.roll(V, -1, axis=0) - V, axis=1)
        if np.any(chords > 2.0 + DEFAULT_TOLERANCE.eps_geom):
            raise BadParameters("consecutive vertices farther apart than 2")

    def chords(self) -> np.ndarray:
        return np.linalg.norm(np.roll(self.vertices, -1, axis=0) - self.vertices, axis=1)

    def perimeter(self) -> float:
        return float(sum(arc_length(c) for c in self.chords()))

    def is_simple(self) -> bool:
        """True if the underlying polygon has no self-intersections."""
        V = self.vertices
        n = V.shape[0]
        if n < 4:
            return n == 3 and abs(_shoelace(V)) > 0
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_cross(V[i], V[(i + 1) % n], V[j], V[(j + 1) % n]):
                    return False
        return True

    def area(self) -> float:
        if not self.is_simple():
            raise BadParameters("area is only defined for simple circle-polygons")
        signed = _shoelace(self.vertices)
        signed += sum(side * segment_area(c) for side, c in zip(self.arc_side, self.chords()))
        return abs(signed)


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def circle_pair_points(c1: np.ndarray, c2: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> List[np.ndarray]:
    """Intersection points of the unit circles around c1 and c2."""
    delta = c2 - c1
    d = float(np.linalg.norm(delta))
    if d <= tol.eps_geom or d > 2.0 + tol.eps_geom:
        return []
    h = math.sqrt(max(1.0 - d * d / 4.0, 0.0))
    mid = 0.5 * (c1 + c2)
    perp = np.array([-delta[1], delta[0]]) / d
    if h <= tol.eps_geom:
        return [mid]
    return [mid + h * perp, mid - h * perp]


def build_disk_polygon(centers, tol: Tolerance = DEFAULT_TOLERANCE) -> Union[DiskPolygon, DegenerateDiskPolygon]:
    """
    Intersection of the unit disks around the given centers.

    Returns a DiskPolygon over the reduced family, or a DegenerateDiskPolygon
    when the intersection is empty, a single point, or there are no centers.
    """
    C = unique_points(as_points(centers, dim=2) if len(centers) else np.zeros((0, 2)), tol)
    if C.shape[0] == 0:
        return DegenerateDiskPolygon(Degenerate.FULL_DISK_FAMILY)
    if C.shape[0] == 1:
        return DiskPolygon(C, np.zeros((0, 2)), (), C[0].copy())

    ball = circumball(C, tol)
    if ball.radius > 1.0 + tol.eps_geom:
        return DegenerateDiskPolygon(Degenerate.EMPTY)
    if ball.radius >= 1.0 - tol.eps_geom:
        return DegenerateDiskPolygon(Degenerate.POINT, ball.center)
    q = ball.center

    merge = 100 * tol.eps_geom
    verts: List[np.ndarray] = []
    for i in range(C.shape[0]):
        for j in range(i + 1, C.shape[0]):
            for p in circle_pair_points(C[i], C[j], tol):
                if np.all(np.linalg.norm(C - p, axis=1) <= 1.0 + tol.eps_geom) and \
                        all(np.linalg.norm(p - v) > merge for v in verts):
                    verts.append(p)
    if len(verts) < 2:
        raise ImplementationAlarm(f"disk-polygon with crr {ball.radius:.6f} has {len(verts)} vertices")

    angles = [_angle(v - q) for v in verts]
    order = sorted(range(len(verts)), key=lambda k: (angles[k], k))
    V = np.vstack([verts[k] for k in order])
    incident = [set(np.flatnonzero(np.abs(np.linalg.norm(C - v, axis=1) - 1.0) <= merge)) for v in V]

    edge_centers: List[int] = []
    for k in range(V.shape[0]):
        a, b = V[k], V[(k + 1) % V.shape[0]]
        chosen = None
        for i in sorted(incident[k] & incident[(k + 1) % V.shape[0]]):
            start = _angle(a - C[i])
            sweep = (_angle(b - C[i]) - start) % TWO_PI
            if sweep > math.pi + tol.eps_geom:
                continue
            mid_angle = start + sweep / 2.0
            mid = C[i] + np.array([math.cos(mid_angle), math.sin(mid_angle)])
            if np.all(np.linalg.norm(C - mid, axis=1) <= 1.0 + tol.eps_geom):
                chosen = i
                break
        if chosen is None:
            raise ImplementationAlarm(f"no generating circle carries the arc after vertex {k}")
        edge_centers.append(chosen)

    reduced = sorted(set(edge_centers))
    if len(reduced) < C.shape[0]:
        logger.debug("build_disk_polygon: %d of %d centers are redundant", C.shape[0] - len(reduced), C.shape[0])
    index = {old: new for new, old in enumerate(reduced)}
    edges = tuple(DiskArc(index[i], k, (k + 1) % V.shape[0]) for k, i in enumerate(edge_centers))
    return DiskPolygon(C[reduced], V, edges, q)


def measure(P: DiskPolygon) -> Dict[str, float]:
    """Perimeter (sum of arc lengths) and area (polygon plus circular segments)."""
    if isinstance(P, DegenerateDiskPolygon):
        raise BadParameters(f"cannot measure a degenerate disk-polygon ({P.kind.value})")
    if P.is_full_disk:
        return {'perimeter': TWO_PI, 'area': math.pi}
    V = P.vertices
    chords = [float(np.linalg.norm(V[e.end] - V[e.start])) for e in P.edges]
    return {
        'perimeter': sum(arc_length(c) for c in chords),
        'area': _shoelace(V) + sum(segment_area(c) for c in chords),
    }


def farthest_point(P: DiskPolygon, p, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, float]:
    """Point of P farthest from p and its distance (vertices plus arc critical points)."""
    p = as_point(p)
    candidates: List[np.ndarray] = [v for v in P.vertices]
    arcs = [(0, None)] if P.is_full_disk else list(enumerate(P.edges))
    for k, e in arcs:
        c = P.centers[0 if e is None else e.center_index]
        away = c - p
        norm = float(np.linalg.norm(away))
        if norm <= tol.eps_geom:
            if e is None:
                candidates.append(c + np.array([1.0, 0.0]))
            continue
        f = c + away / norm
        if e is None or _in_arc(_angle(away), *P.arc_span(k), tol):
            candidates.append(f)
    dist = [float(np.linalg.norm(x - p)) for x in candidates]
    best = int(np.argmax(dist))
    return candidates[best], dist[best]


def _support_piece(P: DiskPolygon, theta: float, tol: Tolerance) -> Tuple[np.ndarray, float]:
    """(p, delta) with h_P(u) = <p, u> + delta near direction theta: an arc center with 1 or a vertex with 0."""
    u = np.array([math.cos(theta), math.sin(theta)])
    if P.is_full_disk:
        return P.centers[0], 1.0
    best_value, best = -math.inf, None
    for v in P.vertices:
        value = float(v @ u)
        if value > best_value:
            best_value, best = value, (v, 0.0)
    for k, e in enumerate(P.edges):
        if _in_arc(theta, *P.arc_span(k), tol):
            c = P.centers[e.center_index]
            value = float(c @ u) + 1.0
            if value > best_value:
                best_value, best = value, (c, 1.0)
    return best


def support_value(P: DiskPolygon, u, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[float, np.ndarray]:
    """
    Support function h_P(u) for a unit vector u and a point attaining it.

    An arc contributes <c, u> + 1 when u lies in its angular range; vertices
    contribute <v, u>.
    """
    u = as_point(u)
    u = u / np.linalg.norm(u)
    p, delta = _support_piece(P, _angle(u), tol)
    return float(p @ u) + delta, p + delta * u


def width_profile(P: DiskPolygon, tol: Tolerance = DEFAULT_TOLERANCE) -> Dict[str, float]:
    """
    Minimum width and diameter from w(theta) = h(theta) + h(theta + pi).

    Between consecutive arc endpoints (taken mod pi) both support pieces are
    fixed, so w = <p - q, u> + const and its extremes sit at the interval
    ends or where u is parallel to p - q.
    """
    if P.is_full_disk:
        return {'min_width': 2.0, 'diameter': 2.0}
    breaks = [0.0, math.pi]
    for k in range(len(P.edges)):
        start, sweep = P.arc_span(k)
        breaks.extend([start % math.pi, (start + sweep) % math.pi])
    breaks = np.unique(np.array(breaks))
    lo, hi = math.inf, -math.inf
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= tol.eps_geom:
            continue
        mid = 0.5 * (a + b)
        p, dp = _support_piece(P, mid, tol)
        q, dq = _support_piece(P, mid + math.pi, tol)
        diff = p - q
        candidates = [a, b]
        if np.linalg.norm(diff) > tol.eps_geom:
            phi = _angle(diff)
            for k in range(-2, 4):
                t = phi + 0.5 * k * TWO_PI
                if a < t < b:
                    candidates.append(t)
        for t in candidates:
            w = float(diff @ np.array([math.cos(t), math.sin(t)])) + dp + dq
            lo, hi = min(lo, w), max(hi, w)
    return {'min_width': lo, 'diameter': hi}


def polygon_circumradius(P: DiskPolygon, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Circumradius of the curved region: min over q of the farthest-point distance."""
    if P.is_full_disk:
        return 1.0
    start = circumball(P.boundary_points(16), tol).center
    res = minimize(lambda q: farthest_point(P, q, tol)[1], start, method='Nelder-Mead',
                   options={'xatol': 1e-12, 'fatol': 1e-14, 'maxiter': 20000})
    return float(res.fun)


def _distance_to_boundary(P: DiskPolygon, q: np.ndarray, tol: Tolerance) -> float:
    best = math.inf
    for k, e in enumerate(P.edges):
        c = P.centers[e.center_index]
        off = q - c
        norm = float(np.linalg.norm(off))
        if norm > tol.eps_geom and _in_arc(_angle(off), *P.arc_span(k), tol):
            best = min(best, 1.0 - norm)
        else:
            best = min(best, float(np.linalg.norm(q - P.vertices[e.start])),
                       float(np.linalg.norm(q - P.vertices[e.end])))
    return best


def inradius_direct(P: DiskPolygon, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Largest inscribed disk radius by maximizing the distance to the boundary arcs."""
    if P.is_full_disk:
        return 1.0

    def objective(q):
        if not P.contains(q, tol=tol):
            return 1.0 + float(np.max(np.linalg.norm(P.centers - q, axis=1)))
        return -_distance_to_boundary(P, q, tol)

    res = minimize(objective, P.interior_point, method='Nelder-Mead',
                   options={'xatol': 1e-13, 'fatol': 1e-15, 'maxiter': 40000})
    polish = minimize(lambda z: -z[2], np.append(res.x, -res.fun), method='SLSQP',
                      constraints=[{'type': 'ineq', 'fun': lambda z: _distance_to_boundary(P, z[:2], tol) - z[2]}],
                      options={'ftol': 1e-15, 'maxiter': 200})
    best = -float(res.fun)
    if polish.success and P.contains(polish.x[:2], tol=tol):
        best = max(best, min(float(polish.x[2]), _distance_to_boundary(P, polish.x[:2], tol)))
    return best


# -- regular families and extremal values ---------------------------------


def inscribed_values(angles: np.ndarray, r: float) -> Dict[str, float]:
    """Perimeter and area of the inscribed disk-polygon with the given central angles."""
    theta = np.asarray(angles, dtype=float)
    chords = 2.0 * r * np.sin(theta / 2.0)
    per = float(np.sum(2.0 * np.arcsin(np.clip(chords / 2.0, 0.0, 1.0))))
    area = float(np.sum(0.5 * r * r * np.sin(theta))) + sum(segment_area(c) for c in chords)
    return {'perimeter': per, 'area': area}


def _inscribed_gradient(theta: np.ndarray, r: float, objective: str) -> np.ndarray:
    half = theta / 2.0
    chords = 2.0 * r * np.sin(half)
    dchord = r * np.cos(half)
    if objective == 'perimeter':
        return dchord / np.sqrt(np.maximum(1.0 - (chords / 2.0) ** 2, 1e-300))
    dseg = chords ** 2 / (2.0 * np.sqrt(np.maximum(4.0 - chords ** 2, 1e-300)))
    return 0.5 * r * r * np.cos(theta) + dseg * dchord


def circumscribed_vertices(gaps: np.ndarray, r: float) -> np.ndarray:
    """Vertices of the circumscribed disk-polygon with centers at distance 1-r and the given angular gaps."""
    alpha = np.asarray(gaps, dtype=float)
    rho = 1.0 - r
    phi = np.concatenate([[0.0], np.cumsum(alpha)[:-1]])
    t = np.sqrt(1.0 - (rho * np.sin(alpha / 2.0)) ** 2) - rho * np.cos(alpha / 2.0)
    direction = phi + alpha / 2.0 + math.pi
    return np.column_stack([t * np.cos(direction), t * np.sin(direction)])


def circumscribed_values(gaps: np.ndarray, r: float) -> Dict[str, float]:
    W = circumscribed_vertices(gaps, r)
    chords = np.linalg.norm(np.roll(W, -1, axis=0) - W, axis=1)
    return {
        'perimeter': float(sum(arc_length(c) for c in chords)),
        'area': _shoelace(W) + sum(segment_area(c) for c in chords),
    }


def regular_value(n: int, r: float, kind: str, objective: str) -> float:
    """Closed-form perimeter or area of the regular n-sided family."""
    equal = np.full(n, TWO_PI / n)
    if kind == 'inscribed':
        return inscribed_values(equal, r)[objective]
    return circumscribed_values(equal, r)[objective]


def _check_family_args(n: int, r: float, kind: str) -> None:
    if n < 3:
        raise BadParameters("a disk-polygon family needs at least 3 sides")
    if not 0.0 < r < 1.0:
        raise BadParameters("r must lie in (0, 1)")
    if kind not in ('inscribed', 'circumscribed'):
        raise BadParameters(f"unknown kind {kind!r}")


@dataclass(frozen=True, eq=False)
class RegularFamily:
    n: int
    r: float
    kind: str
    polygon: DiskPolygon
    perimeter: float
    area: float


def regular_family(n: int, r: float, kind: str, tol: Tolerance = DEFAULT_TOLERANCE) -> RegularFamily:
    """
    Regular disk-polygon inscribed in (vertices on) or circumscribed about
    (edges tangent to) the circle of radius r around the origin.
    """
    _check_family_args(n, r, kind)
    k = np.arange(n)
    if kind == 'inscribed':
        V = r * np.column_stack([np.cos(TWO_PI * k / n), np.sin(TWO_PI * k / n)])
        mids = 0.5 * (V + np.roll(V, -1, axis=0))
        half_chord = r * math.sin(math.pi / n)
        normals = mids / np.linalg.norm(mids, axis=1)[:, None]
        centers = mids - math.sqrt(1.0 - half_chord ** 2) * normals
    else:
        centers = (1.0 - r) * np.column_stack([np.cos(TWO_PI * k / n), np.sin(TWO_PI * k / n)])
    P = build_disk_polygon(centers, tol)
    if isinstance(P, DegenerateDiskPolygon) or P.vertices.shape[0] != n or P.centers.shape[0] != n:
        raise DegenerateConfiguration(f"{kind} family with n={n}, r={r} does not have {n} sides",
                                      witness=centers.tolist())
    equal = np.full(n, TWO_PI / n)
    values = inscribed_values(equal, r) if kind == 'inscribed' else circumscribed_values(equal, r)
    return RegularFamily(n, r, kind, P, values['perimeter'], values['area'])


@dataclass(frozen=True, eq=False)
class ExtremalResult:
    n: int
    r: float
    kind: str
    objective: str
    sense: str
    angles: np.ndarray
    value: float
    regular_value: float
    deviation: float
    restarts: int

    @property
    def excess(self) -> float:
        """How far the search beat the regular value (positive means it did)."""
        if self.sense == 'max':
            return self.value - self.regular_value
        return self.regular_value - self.value

    def to_dict(self) -> dict:
        return {
            'n': self.n, 'r': self.r, 'kind': self.kind, 'objective': self.objective, 'sense': self.sense,
            'angles': self.angles.tolist(), 'value': self.value, 'regular_value': self.regular_value,
            'deviation': self.deviation, 'restarts': self.restarts,
        }


def extremal_search(n: int, r: float, kind: str, objective: str, sense: str, seed: int = 0,
                    restarts: Optional[int] = None, tol: Tolerance = DEFAULT_TOLERANCE) -> ExtremalResult:
    """
    Multi-start search for the extremal n-sided inscribed/circumscribed disk-polygon.

    Inscribed polygons are parametrized by central angles summing to 2*pi,
    circumscribed ones by the angular gaps between consecutive centers.
    Each restart runs SLSQP on the simplex; the best value wins, ties going
    to the lexicographically smaller configuration.
    """
    _check_family_args(n, r, kind)
    if objective not in ('perimeter', 'area') or sense not in ('max', 'min'):
        raise BadParameters(f"unknown objective/sense {objective!r}/{sense!r}")
    restarts = restarts or OPTIMIZER.get('restarts', 32)
    sign = -1.0 if sense == 'max' else 1.0
    floor = 1e-9 if kind == 'inscribed' else 1e-6
    ceiling = TWO_PI if kind == 'inscribed' else math.pi - 1e-6

    def value(x):
        if kind == 'inscribed':
            return inscribed_values(x, r)[objective]
        return circumscribed_values(x, r)[objective]

    def fun(x):
        return sign * value(x)

    jac = (lambda x: sign * _inscribed_gradient(np.asarray(x), r, objective)) if kind == 'inscribed' else None
    rng = np.random.default_rng(seed)
    starts = []
    while len(starts) < restarts:
        x0 = rng.dirichlet(np.full(n, 4.0)) * TWO_PI
        if np.all(x0 > floor) and np.all(x0 < ceiling):
            starts.append(x0)

    def run(x0):
        res = minimize(fun, x0, jac=jac, method='SLSQP', bounds=[(floor, ceiling)] * n,
                       constraints=[{'type': 'eq', 'fun': lambda x: np.sum(x) - TWO_PI,
                                     'jac': lambda x: np.ones_like(x)}],
                       options={'ftol': 1e-15, 'maxiter': 500})
        x = np.asarray(res.x)
        return value(x), x

    with ThreadPoolExecutor(max_workers=OPTIMIZER.get('max_workers', 4)) as pool:
        outcomes = list(pool.map(run, starts))
    best_value, best_x = outcomes[0]
    for v, x in outcomes[1:]:
        better = v > best_value if sense == 'max' else v < best_value
        if better or (v == best_value and tuple(x) < tuple(best_x)):
            best_value, best_x = v, x
    reference = regular_value(n, r, kind, objective)
    deviation = float(np.max(np.abs(best_x - TWO_PI / n)))
    logger.debug("extremal_search %s/%s/%s n=%d r=%.3f: best %.15f regular %.15f deviation %.2e",
                 kind, objective, sense, n, r, best_value, reference, deviation)
    return ExtremalResult(n, r, kind, objective, sense, best_x, best_value, reference, deviation, restarts)


def dowker_table(r: float, n_min: int, n_max: int, settings: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """
    Check the Dowker-type inequalities on the regular extremal values.

    Inscribed settings expect strict concavity in n, circumscribed ones strict
    convexity. Inscribed-area rows are labelled 'lemma' for odd n and
    'conjecture' for even n; everything else is a 'theorem' row.

    Returns:
        DataFrame with columns setting, n, prev, value, next, margin, holds, status.
    """
    if not 0.0 < r < 1.0:
        raise BadParameters("r must lie in (0, 1)")
    if n_min < 4 or n_max < n_min:
        raise BadParameters("need 4 <= n_min <= n_max")
    cap = SEARCH_LIMITS.get('dowker_n_max', 12)
    if n_max > cap:
        raise SizeCapExceeded(f"n_max {n_max} exceeds the cap {cap}")
    settings = list(settings or DOWKER_SETTINGS)
    rows = []
    for setting in settings:
        if setting not in DOWKER_SETTINGS:
            raise BadParameters(f"unknown setting {setting!r}")
        kind, objective = setting.split('-')
        values = {n: regular_value(n, r, kind, objective) for n in range(n_min - 1, n_max + 2)}
        for n in range(n_min, n_max + 1):
            if kind == 'inscribed':
                margin = 2.0 * values[n] - values[n - 1] - values[n + 1]
            else:
                margin = values[n - 1] + values[n + 1] - 2.0 * values[n]
            if setting == 'inscribed-area':
                status = 'lemma' if n % 2 else 'conjecture'
            else:
                status = 'theorem'
            rows.append({
                'setting': setting, 'n': n, 'prev': values[n - 1], 'value': values[n],
                'next': values[n + 1], 'margin': margin, 'holds': bool(margin > 0), 'status': status,
            })
    return pd.DataFrame(rows, columns=['setting', 'n', 'prev', 'value', 'next', 'margin', 'holds', 'status'])
