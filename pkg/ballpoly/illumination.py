"""
Illumination of ball-polyhedra B[X] in 3-space by three orthogonal pairs of
opposite directions.

At a boundary point z the inward normals G(z) form the spherical hull of
the unit vectors x - z, x in X, |x - z| = 1. The pair +-u illuminates at z
iff G(z) misses the great circle orthogonal to u, which for a spherically
convex G(z) means all generators have strictly the same sign against u.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ballpoly.bp3 import BallPolyhedron3, boundary_structure
from ballpoly.core import DEFAULT_TOLERANCE, Tolerance, as_point, as_points, unique_points
from ballpoly.exceptions import BadParameters, ImplementationAlarm, PreconditionError, TheoremViolation

try:
    from ballpoly_config import SEARCH_LIMITS
except ImportError:
    SEARCH_LIMITS = {'angle_sweep': 64}

logger = logging.getLogger(__name__)

# generator signs within this band count as lying on the great circle
SIGN_BAND = 1e-12


@dataclass(frozen=True, eq=False)
class Frame:
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        vectors = [as_point(x) for x in (self.u, self.v, self.w)]
        if any(x.size != 3 for x in vectors):
            raise BadParameters("frame vectors must be 3-dimensional")
        M = np.vstack(vectors)
        if np.max(np.abs(M @ M.T - np.eye(3))) > DEFAULT_TOLERANCE.eps_geom * 10:
            raise BadParameters("frame vectors must be orthonormal")
        object.__setattr__(self, 'u', vectors[0])
        object.__setattr__(self, 'v', vectors[1])
        object.__setattr__(self, 'w', vectors[2])

    @classmethod
    def standard(cls) -> 'Frame':
        return cls(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))

    @classmethod
    def about(cls, u, angle: float = 0.0) -> 'Frame':
        """Frame with the given first axis; v and w are rotated by angle about u."""
        u = as_point(u)
        u = u / np.linalg.norm(u)
        helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        v0 = np.cross(u, helper)
        v0 /= np.linalg.norm(v0)
        w0 = np.cross(u, v0)
        c, s = math.cos(angle), math.sin(angle)
        return cls(u, c * v0 + s * w0, -s * v0 + c * w0)

    @property
    def matrix(self) -> np.ndarray:
        return np.vstack([self.u, self.v, self.w])

    def rotated(self, Q: np.ndarray) -> 'Frame':
        return Frame(Q @ self.u, Q @ self.v, Q @ self.w)

    def to_dict(self) -> dict:
        return {'u': self.u.tolist(), 'v': self.v.tolist(), 'w': self.w.tolist()}


def _spherical_diameter(G: np.ndarray) -> float:
    if G.shape[0] < 2:
        return 0.0
    cosines = np.clip(G @ G.T, -1.0, 1.0)
    return float(np.max(np.arccos(cosines)))


@dataclass(frozen=True, eq=False)
class GaussImage:
    z: np.ndarray
    generators: np.ndarray
    stratum: str
    diameter: float

    def meets(self, e: np.ndarray) -> bool:
        """True iff the spherical hull of the generators meets the great circle orthogonal to e."""
        return _meets(self.generators @ e)

    def to_dict(self) -> dict:
        return {'z': self.z.tolist(), 'generators': self.generators.tolist(),
                'stratum': self.stratum, 'diameter': self.diameter}


def _meets(signs: np.ndarray) -> bool:
    return bool(signs.min() <= SIGN_BAND and signs.max() >= -SIGN_BAND)


def _diameter_of(X: np.ndarray) -> float:
    if X.shape[0] < 2:
        return 0.0
    return float(np.max(np.linalg.norm(X[:, None, :] - X[None, :, :], axis=2)))


def _check_body(X, tol: Tolerance) -> np.ndarray:
    P = unique_points(as_points(X, dim=3), tol)
    if P.shape[0] == 0:
        raise BadParameters("X must be nonempty")
    if _diameter_of(P) > 1.0 + tol.eps_geom:
        raise PreconditionError("X must have diameter at most 1")
    return P


def gauss_image(X, z, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussImage:
    """
    Inward normal directions of B[X] at the boundary point z.

    Raises:
        PreconditionError: z is not on the boundary of B[X].
        TheoremViolation: the image is wider than pi/3 although diam X <= 1.
    """
    P = unique_points(as_points(X, dim=3), tol)
    z = as_point(z)
    offsets = P - z
    dist = np.linalg.norm(offsets, axis=1)
    if np.any(dist > 1.0 + 100 * tol.eps_geom):
        raise PreconditionError("z is not in B[X]")
    touching = np.abs(dist - 1.0) <= 100 * tol.eps_geom
    if not np.any(touching):
        raise PreconditionError("z is an interior point of B[X]")
    G = offsets[touching] / dist[touching][:, None]
    stratum = {1: 'face', 2: 'edge'}.get(G.shape[0], 'vertex')
    diameter = _spherical_diameter(G)
    if _diameter_of(P) <= 1.0 + tol.eps_geom and diameter > math.pi / 3 + 1e-9:
        logger.error("Gauss image at %s has diameter %.12f", z, diameter)
        raise TheoremViolation(f"Gauss image diameter {diameter:.12f} exceeds pi/3")
    return GaussImage(z, G, stratum, diameter)


@dataclass
class IlluminationResult:
    illuminated: bool
    frame: Frame
    witnesses: List[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.illuminated

    def to_dict(self) -> dict:
        return {'illuminated': self.illuminated, 'frame': self.frame.to_dict(), 'witnesses': self.witnesses}


def _trig_roots(a: float, b: float, c: float) -> List[float]:
    """Angles where a + b cos(t) + c sin(t) vanishes."""
    amplitude = math.hypot(b, c)
    if amplitude <= 1e-15 or abs(a) > amplitude:
        return []
    phase = math.atan2(c, b)
    spread = math.acos(max(-1.0, min(1.0, -a / amplitude)))
    return [phase + spread, phase - spread]


def _edge_blocking(P: BallPolyhedron3, k: int, E: np.ndarray) -> Optional[float]:
    """Arc parameter s in (0, 1) where the edge's Gauss image meets all three circles, if any."""
    edge = P.edges[k]
    ci, cj = P.centers[edge.spheres[0]], P.centers[edge.spheres[1]]
    cut_points = []
    for e in E:
        for c in (ci, cj):
            a = float((c - edge.center) @ e)
            b = -edge.radius * float(edge.e1 @ e)
            s = -edge.radius * float(edge.e2 @ e)
            for theta in _trig_roots(a, b, s):
                frac = ((theta - edge.theta0) % (2.0 * math.pi)) / edge.sweep
                if 0.0 < frac < 1.0:
                    cut_points.append(frac)
    grid = sorted(set([0.0, 1.0] + cut_points))
    probes = cut_points + [(lo + hi) / 2.0 for lo, hi in zip(grid, grid[1:])]
    for frac in sorted(probes):
        z = edge.point(frac)
        G = np.vstack([ci - z, cj - z])
        if all(_meets(G @ e) for e in E):
            return frac
    return None


def illuminates_frame(X, frame: Frame, body: Optional[BallPolyhedron3] = None,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> IlluminationResult:
    """
    Whether +-u, +-v, +-w illuminate B[X]: every boundary point's Gauss image
    misses at least one of the three great circles.

    Face points have a single generator, which cannot be orthogonal to all
    three axes; vertices are checked on their generator signs and edges by
    the sign changes of each generator along the arc. A precomputed body can
    be passed to reuse its boundary structure across frames.
    """
    P = _check_body(X, tol)
    if P.shape[0] == 1:
        return IlluminationResult(True, frame)
    body = body or boundary_structure(P, tol)
    E = frame.matrix
    witnesses = []
    for k, vertex in enumerate(body.vertices):
        offsets = P - vertex.point
        touching = np.abs(np.linalg.norm(offsets, axis=1) - 1.0) <= 100 * tol.eps_geom
        G = offsets[touching]
        if all(_meets(G @ e) for e in E):
            witnesses.append({'stratum': 'vertex', 'index': k, 'point': vertex.point.tolist(),
                              'generators': G.tolist()})
    for k, edge in enumerate(body.edges):
        frac = _edge_blocking(body, k, E)
        if frac is not None:
            z = edge.point(frac)
            G = np.vstack([body.centers[i] - z for i in edge.spheres])
            witnesses.append({'stratum': 'seam' if edge.is_seam else 'edge', 'index': k,
                              'point': z.tolist(), 'generators': G.tolist()})
    if witnesses:
        logger.debug("illuminates_frame: %d blocked strata", len(witnesses))
    return IlluminationResult(not witnesses, frame, witnesses)


def _widest_gap_midpoint(blocked: Sequence[float], period: float) -> float:
    """Midpoint of the largest gap between blocked angles on a circle of the given period."""
    angles = np.sort(np.mod(np.asarray(blocked, dtype=float), period))
    gaps = np.diff(np.append(angles, angles[0] + period))
    k = int(np.argmax(gaps))
    return float((angles[k] + gaps[k] / 2.0) % period)


def find_frame(X, u, tol: Tolerance = DEFAULT_TOLERANCE) -> Frame:
    """
    An illuminating frame whose first axis is u.

    Rotations of (v, w) about u start at angle 0. After each blocked try the
    tried angle and every angle where a witness generator falls on C(v) or
    C(w) are recorded (mod pi/2), and the next try is the midpoint of the
    widest gap between recorded angles. The returned frame passes
    illuminates_frame.

    Raises:
        ImplementationAlarm: no rotation works within the sweep limit.
    """
    P = _check_body(X, tol)
    body = boundary_structure(P, tol) if P.shape[0] > 1 else None
    quarter = math.pi / 2.0
    base = Frame.about(u, 0.0)
    blocked: List[float] = []
    angle = 0.0
    sweep = SEARCH_LIMITS.get('angle_sweep', 64)
    for attempt in range(sweep):
        frame = Frame.about(u, angle)
        result = illuminates_frame(P, frame, body, tol)
        if result.illuminated:
            logger.debug("find_frame: angle %.6f accepted on try %d", angle, attempt + 1)
            return frame
        blocked.append(angle)
        for witness in result.witnesses:
            for g in np.asarray(witness['generators']):
                # <g, v(angle)> = 0; <g, w> vanishes a quarter turn away
                blocked.append(math.atan2(-(g @ base.v), g @ base.w))
        angle = _widest_gap_midpoint(blocked, quarter)
    raise ImplementationAlarm(f"no illuminating frame found in {sweep} rotations")


def haar_frame(rng: np.random.Generator) -> Frame:
    Q, R = np.linalg.qr(rng.normal(size=(3, 3)))
    Q = Q * np.sign(np.diag(R))
    return Frame(Q[:, 0], Q[:, 1], Q[:, 2])


def random_frame_experiment(X, trials: int, seed: int = 0, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """Fraction of uniformly random orthogonal frames that illuminate B[X]."""
    P = _check_body(X, tol)
    body = boundary_structure(P, tol) if P.shape[0] > 1 else None
    rng = np.random.default_rng(seed)
    successes, failures = 0, []
    for _ in range(trials):
        result = illuminates_frame(P, haar_frame(rng), body, tol)
        if result.illuminated:
            successes += 1
        else:
            failures.append(result.to_dict())
    if failures:
        logger.warning("random_frame_experiment: %d of %d frames failed", len(failures), trials)
    return {'trials': trials, 'successes': successes, 'ratio': successes / trials if trials else 1.0,
            'failures': failures}


def illuminated_by_ray(X, z, u, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether the open ray z + t u, t > 0, enters the interior of B[X]."""
    P = as_points(X, dim=3)
    z, u = as_point(z), as_point(u)
    u = u / np.linalg.norm(u)
    for k in range(1, 41):
        probe = z + 2.0 ** -k * u
        if np.all(np.linalg.norm(P - probe, axis=1) < 1.0 - 4 * np.finfo(float).eps):
            return True
    return False


def blocking_configuration() -> tuple:
    """
    Three points at pairwise distance 1 whose common vertex o has a Gauss
    image with one generator on each coordinate great circle.
    """
    X = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]) / math.sqrt(2.0)
    return X, Frame.standard()
