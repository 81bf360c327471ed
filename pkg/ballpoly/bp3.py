"""
Ball-polyhedra in 3-space: intersections of finitely many closed unit balls.

Builds the boundary arrangement (vertices, edge arcs, faces), decides
standardness, assembles the face lattice, runs the Euler-Poincare and
edge-graph checks, and approximates polytopes with cyclic faces by
ball-polyhedra of growing radius.

Usage:
    from ballpoly.bp3 import boundary_structure, euler_and_graph_checks
    from ballpoly.core import regular_simplex

    P = boundary_structure(regular_simplex(3, circumradius=math.sqrt(3 / 8)))
    euler_and_graph_checks(P)['chi']      # 2
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.spatial.distance import cdist

from ballpoly.core import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_point,
    as_points,
    circumball,
    circumsphere,
    regular_simplex,
    unique_points,
)
from ballpoly.exceptions import (
    BadParameters,
    DegenerateConfiguration,
    EmptyIntersection,
    ImplementationAlarm,
    NotCoCircular,
)
from ballpoly.qp import project_onto_polytope

try:
    from ballpoly_config import SAMPLING
except ImportError:
    SAMPLING = {'edge_samples': 6}

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


# -- extreme points of B[X] -----------------------------------------------


def _triple_points(C: np.ndarray, triples: np.ndarray, tol: Tolerance) -> Tuple[np.ndarray, np.ndarray]:
    """Common points of the unit spheres around each center triple (vectorized)."""
    if triples.size == 0:
        return np.zeros((0, 3)), np.zeros((0, 3), dtype=int)
    a, b, c = C[triples[:, 0]], C[triples[:, 1]], C[triples[:, 2]]
    u, v = b - a, c - a
    w = np.cross(u, v)
    ww = np.sum(w * w, axis=1)
    ok = ww > tol.eps_geom ** 2
    a, u, v, w, ww, tri = a[ok], u[ok], v[ok], w[ok], ww[ok], triples[ok]
    o = a + (np.sum(u * u, axis=1)[:, None] * np.cross(v, w)
             + np.sum(v * v, axis=1)[:, None] * np.cross(w, u)) / (2.0 * ww[:, None])
    R2 = np.sum((o - a) ** 2, axis=1)
    keep = R2 <= 1.0 + tol.eps_geom
    o, w, ww, R2, tri = o[keep], w[keep], ww[keep], R2[keep], tri[keep]
    h = np.sqrt(np.maximum(1.0 - R2, 0.0))
    nu = w / np.sqrt(ww)[:, None]
    pts = np.vstack([o + h[:, None] * nu, o - h[:, None] * nu])
    return pts, np.vstack([tri, tri])


def _pair_circles(C: np.ndarray, tol: Tolerance):
    """Carrier circles of all center pairs closer than 2: (pairs, mids, radii, axes)."""
    pairs = np.array(list(itertools.combinations(range(C.shape[0]), 2)), dtype=int).reshape(-1, 2)
    if pairs.size == 0:
        return pairs, np.zeros((0, 3)), np.zeros(0), np.zeros((0, 3))
    delta = C[pairs[:, 1]] - C[pairs[:, 0]]
    d = np.linalg.norm(delta, axis=1)
    ok = (d > tol.eps_geom) & (d < 2.0 - tol.eps_geom)
    pairs, delta, d = pairs[ok], delta[ok], d[ok]
    mids = 0.5 * (C[pairs[:, 0]] + C[pairs[:, 1]])
    return pairs, mids, np.sqrt(1.0 - d * d / 4.0), delta / d[:, None]


def _in_all(C: np.ndarray, pts: np.ndarray, tol: Tolerance) -> np.ndarray:
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    dist = cdist(pts, C)
    return np.all(dist <= 1.0 + 10 * tol.eps_geom, axis=1)


def _extreme_candidates(C: np.ndarray, direction_of, tol: Tolerance) -> np.ndarray:
    """
    Critical points of a linear or distance objective over B[C].

    direction_of(anchor) returns, per sphere/circle anchor, the unit
    direction in which the objective grows fastest from it.
    """
    chunks = [C + direction_of(C, None)]
    pairs, mids, radii, axes = _pair_circles(C, tol)
    if pairs.shape[0]:
        dirs = direction_of(mids, axes)
        chunks.append(mids + radii[:, None] * dirs)
    if C.shape[0] >= 3:
        triples = np.array(list(itertools.combinations(range(C.shape[0]), 3)), dtype=int)
        chunks.append(_triple_points(C, triples, tol)[0])
    pts = np.vstack(chunks)
    return pts[_in_all(C, pts, tol)]


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    fallback = np.zeros_like(v)
    fallback[..., 0] = 1.0
    return np.where(norm > 1e-300, v / np.where(norm > 1e-300, norm, 1.0), fallback)


def _in_plane(v: np.ndarray, axes: Optional[np.ndarray]) -> np.ndarray:
    """Unit component of v orthogonal to each axis, with an arbitrary choice when it vanishes."""
    if axes is None:
        return _unit(v)
    flat = v - np.sum(v * axes, axis=1)[:, None] * axes
    norm = np.linalg.norm(flat, axis=1)
    spare = np.cross(axes, np.where(np.abs(axes[:, :1]) < 0.9, [[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0]]))
    flat = np.where(norm[:, None] > 1e-12, flat, spare)
    return _unit(flat)


def farthest_point_3d(centers, p, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, float]:
    """
    Point of B[centers] farthest from p and its distance.

    Candidates are the sphere far points, the far points of the pair circles
    and the triple points, kept when they lie in every ball.
    """
    C = unique_points(as_points(centers, dim=3), tol)
    p = as_point(p)
    if C.shape[0] == 1:
        away = C[0] - p
        norm = float(np.linalg.norm(away))
        return (C[0] + (away / norm if norm > 0 else np.array([1.0, 0.0, 0.0]))), norm + 1.0
    if circumball(C, tol).radius > 1.0 + tol.eps_geom:
        raise EmptyIntersection("the unit balls have no common point")
    pts = _extreme_candidates(C, lambda anchors, axes: _in_plane(anchors - p, axes), tol)
    if pts.shape[0] == 0:
        raise ImplementationAlarm("no extreme point candidate lies in the ball-polyhedron")
    dist = np.linalg.norm(pts - p, axis=1)
    k = int(np.argmax(dist))
    return pts[k], float(dist[k])


def support_value_3d(centers, u, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[float, np.ndarray]:
    """Support function of B[centers] in direction u and a point attaining it."""
    C = unique_points(as_points(centers, dim=3), tol)
    u = as_point(u)
    u = u / np.linalg.norm(u)
    if C.shape[0] == 1:
        return float(C[0] @ u) + 1.0, C[0] + u
    pts = _extreme_candidates(C, lambda anchors, axes: _in_plane(np.broadcast_to(u, anchors.shape), axes), tol)
    if pts.shape[0] == 0:
        raise EmptyIntersection("the unit balls have no common point")
    values = pts @ u
    k = int(np.argmax(values))
    return float(values[k]), pts[k]


# -- boundary structure -----------------------------------------------------


def reduce_family_3d(centers, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Reduced generating family: drops every ball that contains the
    intersection of the remaining ones.
    """
    C = unique_points(as_points(centers, dim=3), tol)
    if C.shape[0] == 0:
        raise BadParameters("no centers given")
    if circumball(C, tol).radius > 1.0 + tol.eps_geom:
        raise EmptyIntersection("the unit balls have no common point")
    keep = list(range(C.shape[0]))
    for i in range(C.shape[0]):
        others = [j for j in keep if j != i]
        if not others:
            continue
        _, reach = farthest_point_3d(C[others], C[i], tol)
        if reach <= 1.0 + tol.eps_geom:
            logger.debug("reduce_family_3d: ball %d is redundant (reach %.12f)", i, reach)
            keep = others
    return C[keep]


@dataclass(frozen=True)
class Vertex3:
    point: np.ndarray
    incident: FrozenSet[int]


@dataclass(frozen=True, eq=False)
class EdgeArc:
    """
    Arc of the circle S(c_i) and S(c_j), i < j, run counter-clockwise about
    axis = (c_j - c_i)/|c_j - c_i|; face i lies on its left. A seam is the
    full circle and has start = end = -1.
    """
    spheres: Tuple[int, int]
    start: int
    end: int
    center: np.ndarray
    radius: float
    axis: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    theta0: float
    sweep: float

    @property
    def is_seam(self) -> bool:
        return self.start < 0

    def point(self, s: float) -> np.ndarray:
        """Point at fraction s in [0, 1] along the arc."""
        theta = self.theta0 + s * self.sweep
        return self.center + self.radius * (math.cos(theta) * self.e1 + math.sin(theta) * self.e2)

    def tangent(self, s: float) -> np.ndarray:
        theta = self.theta0 + s * self.sweep
        return -math.sin(theta) * self.e1 + math.cos(theta) * self.e2

    def samples(self, k: int, endpoints: bool = False) -> np.ndarray:
        s = np.linspace(0.0, 1.0, k + 2)[1:-1] if not endpoints else np.linspace(0.0, 1.0, k)
        return np.vstack([self.point(t) for t in s])

    def to_dict(self) -> dict:
        return {
            'spheres': list(self.spheres), 'start': self.start, 'end': self.end,
            'circle_center': self.center.tolist(), 'circle_radius': self.radius,
            'axis': self.axis.tolist(), 'theta0': self.theta0, 'sweep': self.sweep,
        }


HalfEdge = Tuple[int, bool]


@dataclass(frozen=True, eq=False)
class Face3:
    """
    One connected component of S(c_sphere) on the boundary, with its
    boundary cycles of half-edges. A disk face has exactly one cycle.
    """
    sphere: int
    cycles: Tuple[Tuple[HalfEdge, ...], ...]

    @property
    def edge_ids(self) -> FrozenSet[int]:
        return frozenset(k for cycle in self.cycles for k, _ in cycle)

    def vertex_ids(self, edges: Sequence[EdgeArc]) -> FrozenSet[int]:
        return frozenset(v for k in self.edge_ids if not edges[k].is_seam
                         for v in (edges[k].start, edges[k].end))

    def to_dict(self) -> dict:
        return {'sphere': self.sphere, 'cycles': [[[k, fwd] for k, fwd in cycle] for cycle in self.cycles]}


@dataclass(frozen=True, eq=False)
class BallPolyhedron3:
    centers: np.ndarray
    vertices: Tuple[Vertex3, ...]
    edges: Tuple[EdgeArc, ...]
    faces: Tuple[Face3, ...] = ()

    @property
    def seams(self) -> List[int]:
        return [k for k, e in enumerate(self.edges) if e.is_seam]

    @property
    def counts(self) -> Dict[str, int]:
        return {
            'V': len(self.vertices),
            'E': sum(1 for e in self.edges if not e.is_seam),
            'F': len(self.faces),
        }

    def edge_graph(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(range(len(self.vertices)))
        for k, e in enumerate(self.edges):
            if not e.is_seam:
                G.add_edge(e.start, e.end, key=k)
        return G

    def to_dict(self) -> dict:
        return {
            'centers': self.centers.tolist(),
            'vertices': [{'point': v.point.tolist(), 'incident': sorted(v.incident)} for v in self.vertices],
            'edges': [e.to_dict() for e in self.edges],
            'faces': [f.to_dict() for f in self.faces],
            'counts': self.counts,
        }


def _circle_frame(axis: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(axis, e1)


def _collect_vertices(C: np.ndarray, tol: Tolerance) -> List[Vertex3]:
    triples = np.array(list(itertools.combinations(range(C.shape[0]), 3)), dtype=int).reshape(-1, 3)
    pts, _ = _triple_points(C, triples, tol)
    pts = pts[_in_all(C, pts, tol)]
    incidence_tol = 10 * tol.eps_geom
    merged: List[np.ndarray] = []
    for p in pts:
        if all(np.linalg.norm(p - q) > 100 * tol.eps_geom for q in merged):
            merged.append(p)
    vertices = []
    for p in merged:
        gap = 1.0 - np.linalg.norm(C - p, axis=1)
        incident = frozenset(int(i) for i in np.flatnonzero(np.abs(gap) <= incidence_tol))
        close = np.flatnonzero((gap > incidence_tol) & (gap <= tol.degeneracy_band))
        if close.size:
            quad = sorted(incident)[:3] + [int(close[0])]
            logger.warning("sphere %d passes within %.2e of vertex %s", close[0], gap[close[0]], p)
            raise DegenerateConfiguration("a fourth sphere nearly passes through a vertex", witness=quad)
        if len(incident) >= 3:
            vertices.append(Vertex3(p, incident))
    vertices.sort(key=lambda v: tuple(np.round(v.point, 12)))
    return vertices


def _collect_edges(C: np.ndarray, vertices: Sequence[Vertex3], tol: Tolerance) -> List[EdgeArc]:
    edges: List[EdgeArc] = []
    pairs, mids, radii, axes = _pair_circles(C, tol)
    for (i, j), mid, radius, axis in zip(pairs, mids, radii, axes):
        e1, e2 = _circle_frame(axis)
        on_circle = [k for k, v in enumerate(vertices) if {int(i), int(j)} <= v.incident]
        if not on_circle:
            probe = np.array([mid + radius * (math.cos(t) * e1 + math.sin(t) * e2)
                              for t in np.linspace(0.0, TWO_PI, 8, endpoint=False)])
            if np.all(_in_all(C, probe, tol)):
                edges.append(EdgeArc((int(i), int(j)), -1, -1, mid, radius, axis, e1, e2, 0.0, TWO_PI))
            continue
        angles = []
        for k in on_circle:
            off = vertices[k].point - mid
            angles.append((math.atan2(off @ e2, off @ e1) % TWO_PI, k))
        angles.sort()
        if len(angles) == 1:
            theta, k = angles[0]
            probe = mid + radius * (math.cos(theta + math.pi) * e1 + math.sin(theta + math.pi) * e2)
            if _in_all(C, probe[None, :], tol)[0]:
                raise DegenerateConfiguration("a generating circle touches the body in a single vertex loop",
                                              witness=[int(i), int(j)])
            continue
        for (ta, ka), (tb, kb) in zip(angles, angles[1:] + angles[:1]):
            sweep = (tb - ta) % TWO_PI
            if sweep <= tol.eps_geom:
                continue
            t_mid = ta + sweep / 2.0
            probe = mid + radius * (math.cos(t_mid) * e1 + math.sin(t_mid) * e2)
            if _in_all(C, probe[None, :], tol)[0]:
                edges.append(EdgeArc((int(i), int(j)), ka, kb, mid, radius, axis, e1, e2, ta, sweep))
    return edges


def _walk_faces(C: np.ndarray, vertices: Sequence[Vertex3], edges: Sequence[EdgeArc],
                tol: Tolerance = DEFAULT_TOLERANCE) -> List[Face3]:
    """Boundary cycles per sphere; sphere i uses its edges forward when it is the smaller index."""
    faces: List[Face3] = []
    for sphere in range(C.shape[0]):
        halves: List[HalfEdge] = []
        for k, e in enumerate(edges):
            if sphere in e.spheres:
                halves.append((k, e.spheres[0] == sphere))
        if not halves:
            continue
        cycles: List[List[HalfEdge]] = []
        remaining = list(halves)
        for half in [h for h in remaining if edges[h[0]].is_seam]:
            cycles.append([half])
            remaining.remove(half)

        def head(half):
            e = edges[half[0]]
            return e.end if half[1] else e.start

        def tail(half):
            e = edges[half[0]]
            return e.start if half[1] else e.end

        def out_direction(half):
            e = edges[half[0]]
            return e.tangent(0.0) if half[1] else -e.tangent(1.0)

        def in_direction(half):
            e = edges[half[0]]
            return e.tangent(1.0) if half[1] else -e.tangent(0.0)

        while remaining:
            cycle = [remaining.pop(0)]
            while True:
                at = head(cycle[-1])
                options = [h for h in remaining if tail(h) == at]
                if not options:
                    break
                if len(options) > 1:
                    normal = vertices[at].point - C[sphere]
                    back = -in_direction(cycle[-1])

                    def clockwise_turn(h):
                        d = out_direction(h)
                        angle = math.atan2(np.dot(np.cross(back, d), normal), np.dot(back, d))
                        return (-angle) % TWO_PI

                    options.sort(key=clockwise_turn)
                nxt = options[0]
                remaining.remove(nxt)
                cycle.append(nxt)
            if tail(cycle[0]) != head(cycle[-1]):
                raise ImplementationAlarm(f"face walk on sphere {sphere} did not close")
            cycles.append(cycle)
        faces.extend(_components(C, sphere, edges, cycles, tol))
    return faces


def _inner_point(C: np.ndarray, sphere: int, edges: Sequence[EdgeArc], cycle: Sequence[HalfEdge]) -> np.ndarray:
    """A point of S(c_sphere) just inside the face next to the first edge of the cycle."""
    e = edges[cycle[0][0]]
    m = e.point(0.5)
    other = e.spheres[1] if e.spheres[0] == sphere else e.spheres[0]
    n = _unit(m - C[sphere])
    toward = C[other] - m
    toward = _unit(toward - (toward @ n) * n)
    return C[sphere] + _unit(n + 1e-4 * min(e.radius, 1.0) * toward)


def _components(C: np.ndarray, sphere: int, edges: Sequence[EdgeArc], cycles: List[List[HalfEdge]],
                tol: Tolerance) -> List[Face3]:
    """
    Groups the boundary cycles of one sphere into connected faces. Two
    cycles bound the same face when the minor great arc between points just
    inside them stays in every ball.
    """
    G = nx.Graph()
    G.add_nodes_from(range(len(cycles)))
    if len(cycles) > 1:
        inner = [_inner_point(C, sphere, edges, cycle) - C[sphere] for cycle in cycles]
        steps = np.linspace(0.0, 1.0, 33)[:, None]
        for a, b in itertools.combinations(range(len(cycles)), 2):
            path = C[sphere] + _unit((1.0 - steps) * inner[a] + steps * inner[b])
            if np.all(_in_all(C, path, tol)):
                G.add_edge(a, b)
    faces = []
    for group in sorted(nx.connected_components(G), key=min):
        faces.append(Face3(sphere, tuple(tuple(cycles[i]) for i in sorted(group))))
    if len(faces) > 1:
        logger.debug("sphere %d carries %d separate faces", sphere, len(faces))
    return faces


def boundary_structure(centers, tol: Tolerance = DEFAULT_TOLERANCE, reduce: bool = True) -> BallPolyhedron3:
    """
    Vertices, edge arcs and faces of B[centers].

    Vertices are triple-sphere points inside every ball; each pair circle is
    cut at its vertices and an arc is kept when its midpoint is in every
    ball; a circle lying entirely on the boundary is kept as a seam.

    Raises:
        DegenerateConfiguration: a sphere passes within the degeneracy band of
            a vertex without being incident to it.
    """
    C = reduce_family_3d(centers, tol) if reduce else unique_points(as_points(centers, dim=3), tol)
    if C.shape[0] < 2:
        raise BadParameters("boundary structure needs at least two generating balls")
    vertices = _collect_vertices(C, tol)
    edges = _collect_edges(C, vertices, tol)
    faces = _walk_faces(C, vertices, edges, tol)
    P = BallPolyhedron3(C, tuple(vertices), tuple(edges), tuple(faces))
    logger.debug("boundary_structure: %s, %d seams", P.counts, len(P.seams))
    return P


# -- standardness, lattice, Euler and graph checks -------------------------


class FaceLattice:
    """
    Faces ordered by inclusion, each face represented by its vertex set:
    the empty face, vertices, edges, 2-faces and the whole body.
    """

    def __init__(self, elements: Sequence[Tuple[int, FrozenSet[int]]]):
        seen = {}
        for rank, verts in elements:
            seen.setdefault((rank, verts), None)
        self.elements: List[Tuple[int, FrozenSet[int]]] = sorted(seen, key=lambda e: (e[0], sorted(e[1])))

    @classmethod
    def from_cells(cls, n_vertices: int, edges: Sequence[FrozenSet[int]], faces: Sequence[FrozenSet[int]]) -> 'FaceLattice':
        elements = [(-1, frozenset())]
        elements += [(0, frozenset([v])) for v in range(n_vertices)]
        elements += [(1, frozenset(e)) for e in edges]
        elements += [(2, frozenset(f)) for f in faces]
        elements.append((3, frozenset(range(n_vertices))))
        return cls(elements)

    @classmethod
    def from_body(cls, P: BallPolyhedron3) -> 'FaceLattice':
        edges = [frozenset((e.start, e.end)) for e in P.edges if not e.is_seam]
        faces = [f.vertex_ids(P.edges) for f in P.faces]
        return cls.from_cells(len(P.vertices), edges, faces)

    @classmethod
    def from_polytope(cls, vertices, faces: Sequence[Sequence[int]]) -> 'FaceLattice':
        edges = set()
        for face in faces:
            for a, b in zip(face, list(face[1:]) + [face[0]]):
                edges.add(frozenset((a, b)))
        return cls.from_cells(len(vertices), sorted(edges, key=sorted), [frozenset(f) for f in faces])

    def __len__(self):
        return len(self.elements)

    def atoms(self) -> List[FrozenSet[int]]:
        return [verts for rank, verts in self.elements if rank == 0]

    def meet(self, a: FrozenSet[int], b: FrozenSet[int]) -> FrozenSet[int]:
        below = [v for _, v in self.elements if v <= a and v <= b]
        best = max(below, key=len)
        if any(not (v <= best) for v in below):
            raise ImplementationAlarm(f"no unique meet of {sorted(a)} and {sorted(b)}")
        return best

    def join(self, a: FrozenSet[int], b: FrozenSet[int]) -> FrozenSet[int]:
        above = [v for _, v in self.elements if a <= v and b <= v]
        best = min(above, key=len)
        if any(not (best <= v) for v in above):
            raise ImplementationAlarm(f"no unique join of {sorted(a)} and {sorted(b)}")
        return best

    def is_lattice(self) -> bool:
        sets = [v for _, v in self.elements]
        try:
            for a, b in itertools.combinations(sets, 2):
                self.meet(a, b)
                self.join(a, b)
        except ImplementationAlarm:
            return False
        return True

    def is_atomic(self) -> bool:
        """Every non-empty element is the join of the atoms below it."""
        return all(self.join_of_atoms(verts) == verts for _, verts in self.elements if verts)

    def join_of_atoms(self, verts: FrozenSet[int]) -> FrozenSet[int]:
        result = frozenset()
        for x in verts:
            result = self.join(result, frozenset([x])) if result else frozenset([x])
        return result

    def hasse_diagram(self) -> nx.DiGraph:
        G = nx.DiGraph()
        for idx, (rank, _) in enumerate(self.elements):
            G.add_node(idx, rank=rank)
        for i, (ri, vi) in enumerate(self.elements):
            for j, (rj, vj) in enumerate(self.elements):
                if rj == ri + 1 and vi <= vj:
                    G.add_edge(i, j)
        return G


def face_lattice_isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    if len(L1) != len(L2):
        return False
    return nx.is_isomorphic(L1.hasse_diagram(), L2.hasse_diagram(),
                            node_match=lambda a, b: a['rank'] == b['rank'])


@dataclass
class StandardnessReport:
    standard: bool
    lattice: Optional[FaceLattice] = None
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {'standard': self.standard, 'witness': self.witness,
                'lattice_size': len(self.lattice) if self.lattice else None}


def standardness_and_lattice(P: BallPolyhedron3, tol: Tolerance = DEFAULT_TOLERANCE) -> StandardnessReport:
    """
    A body is standard when every supporting sphere meets it in a closed
    topological ball: one disk face per sphere, one edge (or one vertex) per
    pair circle, and one vertex per higher-order sphere intersection.
    """
    if P.seams:
        e = P.edges[P.seams[0]]
        return StandardnessReport(False, witness={'reason': 'seam', 'spheres': list(e.spheres)})
    for index, face in enumerate(P.faces):
        if len(face.cycles) != 1:
            return StandardnessReport(False, witness={'reason': 'face_cycles', 'face': index, 'sphere': face.sphere,
                                                      'cycles': len(face.cycles)})
    per_sphere: Dict[int, List[int]] = {}
    for index, face in enumerate(P.faces):
        per_sphere.setdefault(face.sphere, []).append(index)
    for sphere, indices in per_sphere.items():
        if len(indices) > 1:
            return StandardnessReport(False, witness={'reason': 'sphere_meets_body_twice', 'sphere': sphere,
                                                      'faces': indices})
    for i, j in itertools.combinations(range(len(P.faces)), 2):
        fi, fj = P.faces[i], P.faces[j]
        shared_edges = sorted(fi.edge_ids & fj.edge_ids)
        shared_vertices = fi.vertex_ids(P.edges) & fj.vertex_ids(P.edges)
        spheres = [fi.sphere, fj.sphere]
        if len(shared_edges) > 1:
            return StandardnessReport(False, witness={'reason': 'faces_share_edges', 'faces': [i, j],
                                                      'spheres': spheres, 'edges': shared_edges})
        if shared_edges:
            e = P.edges[shared_edges[0]]
            if shared_vertices - {e.start, e.end}:
                return StandardnessReport(False, witness={'reason': 'faces_meet_off_edge', 'faces': [i, j],
                                                          'spheres': spheres, 'vertices': sorted(shared_vertices)})
        elif len(shared_vertices) > 1:
            return StandardnessReport(False, witness={'reason': 'faces_share_vertices', 'faces': [i, j],
                                                      'spheres': spheres, 'vertices': sorted(shared_vertices)})
    checked = set()
    for v in P.vertices:
        for size in range(3, len(v.incident) + 1):
            for subset in itertools.combinations(sorted(v.incident), size):
                if subset in checked:
                    continue
                checked.add(subset)
                hits = [k for k, w in enumerate(P.vertices) if set(subset) <= w.incident]
                # three or more unit spheres share at most two points, and any
                # of them inside the body is a vertex
                if len(hits) > 1:
                    return StandardnessReport(False, witness={'reason': 'sphere_intersection_not_a_point',
                                                              'spheres': list(subset), 'vertices': hits})
    lattice = FaceLattice.from_body(P)
    if not lattice.is_lattice():
        return StandardnessReport(False, lattice=None, witness={'reason': 'not_a_lattice'})
    return StandardnessReport(True, lattice=lattice)


def _rotation_system(P: BallPolyhedron3) -> Dict[int, List[Tuple[int, int]]]:
    """Darts (edge, neighbour) leaving each vertex, counter-clockwise seen from outside."""
    rotation: Dict[int, List[Tuple[int, int, float]]] = {k: [] for k in range(len(P.vertices))}
    for k, e in enumerate(P.edges):
        if e.is_seam:
            continue
        for at, other, direction in ((e.start, e.end, e.tangent(0.0)), (e.end, e.start, -e.tangent(1.0))):
            v = P.vertices[at]
            normal = -np.sum([P.centers[s] - v.point for s in v.incident], axis=0)
            normal /= np.linalg.norm(normal)
            b1, b2 = _circle_frame(normal)
            rotation[at].append((k, other, math.atan2(direction @ b2, direction @ b1)))
    return {at: [(k, other) for k, other, _ in sorted(darts, key=lambda d: d[2])]
            for at, darts in rotation.items()}


def _embedding_face_count(P: BallPolyhedron3) -> int:
    rotation = _rotation_system(P)
    darts = {(at, k) for at, lst in rotation.items() for k, _ in lst}
    position = {(at, k): idx for at, lst in rotation.items() for idx, (k, _) in enumerate(lst)}
    other_end = {(at, k): other for at, lst in rotation.items() for k, other in lst}
    faces = 0
    while darts:
        start = dart = next(iter(sorted(darts)))
        while True:
            darts.discard(dart)
            at, k = dart
            nxt_at = other_end[dart]
            lst = rotation[nxt_at]
            idx = position[(nxt_at, k)]
            dart = (nxt_at, lst[(idx - 1) % len(lst)][0])
            if dart == start:
                break
        faces += 1
    return faces


def _three_connected(G: nx.MultiGraph) -> bool:
    if G.number_of_nodes() < 4 or not nx.is_connected(G):
        return False
    return nx.node_connectivity(nx.Graph(G)) >= 3


def euler_and_graph_checks(P: BallPolyhedron3, standard: Optional[bool] = None) -> dict:
    """
    Euler characteristic plus simplicity, planarity (from the geometric
    rotation system) and 3-connectivity of the edge-graph.

    Raises:
        ImplementationAlarm: a check fails on a standard body.
    """
    if standard is None:
        standard = standardness_and_lattice(P).standard
    counts = P.counts
    G = P.edge_graph()
    simple = not any(u == v for u, v in G.edges()) and G.number_of_edges() == nx.Graph(G).number_of_edges()
    connected = G.number_of_nodes() > 0 and nx.is_connected(G)
    if connected and counts['E']:
        embedded_faces = _embedding_face_count(P)
        planar = counts['V'] - counts['E'] + embedded_faces == 2
    else:
        embedded_faces, planar = 0, False
    report = {
        **counts,
        'chi': counts['V'] - counts['E'] + counts['F'],
        'simple': bool(simple),
        'planar': bool(planar),
        'embedded_faces': embedded_faces,
        'three_connected': _three_connected(G) if simple else False,
        'standard': bool(standard),
    }
    if standard:
        failed = [name for name in ('simple', 'planar', 'three_connected') if not report[name]]
        if report['chi'] != 2:
            failed.append('chi')
        if len(P.centers) < 4:
            failed.append('generators')
        if failed:
            logger.warning("edge-graph checks failed on a standard body: %s", failed)
            raise ImplementationAlarm(f"standard body fails {', '.join(failed)}")
    return report


# -- polytope approximation -------------------------------------------------


def polytope_fixture(name: str) -> Tuple[np.ndarray, List[List[int]]]:
    """Vertices and outward counter-clockwise faces of a small regular polytope."""
    if name == 'tetrahedron':
        V = regular_simplex(3)
        faces = []
        for omit in range(4):
            face = [k for k in range(4) if k != omit]
            normal = np.cross(V[face[1]] - V[face[0]], V[face[2]] - V[face[0]])
            if normal @ (V[face[0]] - V[omit]) < 0:
                face = [face[0], face[2], face[1]]
            faces.append(face)
        return V, faces
    if name == 'cube':
        V = np.array([[x, y, z] for x in (-0.5, 0.5) for y in (-0.5, 0.5) for z in (-0.5, 0.5)])
        faces = [[0, 1, 3, 2], [4, 6, 7, 5], [0, 4, 5, 1], [2, 3, 7, 6], [0, 2, 6, 4], [1, 5, 7, 3]]
        return V, faces
    if name == 'octahedron':
        V = np.array([[1.0, 0, 0], [-1.0, 0, 0], [0, 1.0, 0], [0, -1.0, 0], [0, 0, 1.0], [0, 0, -1.0]])
        faces = []
        for a in (0, 1):
            for b in (2, 3):
                for c in (4, 5):
                    face = [a, b, c]
                    normal = np.cross(V[b] - V[a], V[c] - V[a])
                    if normal @ V[a] < 0:
                        face = [a, c, b]
                    faces.append(face)
        return V, faces
    raise BadParameters(f"unknown polytope {name!r}")


def _face_circle(V: np.ndarray, face: Sequence[int], tol: Tolerance, index: int):
    pts = V[list(face)]
    try:
        center = circumsphere(pts[:3], tol).center
    except DegenerateConfiguration:
        raise NotCoCircular(f"face {index} has collinear leading vertices", face=index)
    normal = np.cross(pts[1] - pts[0], pts[2] - pts[0])
    normal /= np.linalg.norm(normal)
    d = np.linalg.norm(pts - center, axis=1)
    radius = float(d.mean())
    scale = max(1.0, float(np.abs(pts).max()))
    if np.ptp(d) > 10 * tol.eps_geom * scale or np.any(np.abs((pts - pts[0]) @ normal) > 10 * tol.eps_geom * scale):
        raise NotCoCircular(f"face {index} is not inscribed in a circle", face=index)
    return center, radius, normal


def _polytope_halfspaces(V: np.ndarray, faces: Sequence[Sequence[int]]) -> Tuple[np.ndarray, np.ndarray]:
    G, h = [], []
    for face in faces:
        p = V[list(face)]
        normal = np.cross(p[1] - p[0], p[2] - p[0])
        normal /= np.linalg.norm(normal)
        G.append(normal)
        h.append(normal @ p[0])
    return np.array(G), np.array(h)


def approximate_polyhedron(vertices, faces: Sequence[Sequence[int]], k: float,
                           tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Ball-polyhedron of radius k through the cyclic faces of a polytope.

    Face F with circumcircle (c_F, r_F) and inward normal n_F contributes the
    ball of radius k around c_F + sqrt(k^2 - r_F^2) n_F. The family is scaled
    by 1/k to unit balls for the structure computation; the Hausdorff
    distance is reported at the original scale.
    """
    V = as_points(vertices, dim=3)
    centers, normals = [], []
    for index, face in enumerate(faces):
        c, r, outward = _face_circle(V, face, tol, index)
        normals.append(outward)
        if k <= r:
            raise BadParameters(f"radius {k} is smaller than the circumradius {r:.6f} of face {index}")
        centers.append(c - math.sqrt(k * k - r * r) * outward)
    centers = np.array(centers)
    P = boundary_structure(centers / k, tol)
    standard = standardness_and_lattice(P, tol)
    isomorphic = bool(standard.lattice is not None
                      and face_lattice_isomorphic(standard.lattice, FaceLattice.from_polytope(V, faces)))

    G, h = _polytope_halfspaces(V, faces)
    probes = [k * v.point for v in P.vertices]
    for e in P.edges:
        probes.extend(k * e.samples(3))
    for face in P.faces:
        apex = centers[face.sphere] + k * normals[face.sphere]
        if np.all(np.linalg.norm(centers - apex, axis=1) <= k * (1.0 + 10 * tol.eps_geom)):
            probes.append(apex)
    hausdorff = 0.0
    for x in probes:
        if np.all(G @ x <= h + tol.eps_geom):
            continue
        hausdorff = max(hausdorff, float(np.linalg.norm(x - project_onto_polytope(x, G, h))))
    contains_polytope = bool(np.all(np.linalg.norm(V[:, None, :] - centers[None, :, :], axis=2)
                                    <= k * (1.0 + 10 * tol.eps_geom)))
    logger.debug("approximate_polyhedron k=%g: %s, Hausdorff %.3e", k, P.counts, hausdorff)
    return {
        'k': k,
        'body': P,
        **P.counts,
        'standard': standard.standard,
        'lattice_isomorphic': isomorphic,
        'hausdorff': hausdorff,
        'contains_polytope': contains_polytope,
    }


def spindle_hull_of_edges_check(P: BallPolyhedron3, samples: Optional[int] = None,
                                tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """
    Sampled boundary points against the spindle hulls of the edges and of the vertices.

    Face points should lie in the spindle hull of the edge discretization up
    to the discretization slack, while some edge midpoint should lie outside
    the spindle hull of the vertices alone.
    """
    samples = samples or SAMPLING.get('edge_samples', 6)
    edge_points = [v.point for v in P.vertices]
    spacing = 0.0
    for e in P.edges:
        if e.is_seam:
            continue
        edge_points.extend(e.samples(samples))
        spacing = max(spacing, e.radius * e.sweep / (samples + 1))
    E = np.array(edge_points)
    vertices = np.array([v.point for v in P.vertices])
    slack = spacing * spacing

    face_points = []
    for face in P.faces:
        sphere = face.sphere
        verts = sorted(face.vertex_ids(P.edges))
        if not verts:
            continue
        directions = np.array([P.vertices[v].point - P.centers[sphere] for v in verts])
        middle = _unit(directions.mean(axis=0))
        for d in directions:
            for s in (0.0, 0.25, 0.5):
                x = P.centers[sphere] + _unit((1 - s) * middle + s * d)
                if _in_all(P.centers, x[None, :], tol)[0]:
                    face_points.append(x)
    midpoints = [e.point(0.5) for e in P.edges if not e.is_seam]
    if not face_points or not midpoints:
        raise BadParameters("the body has no edges to sample")
    excess_edges = max(farthest_point_3d(E, x, tol)[1] - 1.0 for x in face_points)
    excess_vertices = max(farthest_point_3d(vertices, x, tol)[1] - 1.0 for x in midpoints)
    return {
        'face_points': len(face_points),
        'edge_midpoints': len(midpoints),
        'edge_excess': excess_edges,
        'slack': slack,
        'in_edge_hull': bool(excess_edges <= slack + tol.eps_geom),
        'vertex_excess': excess_vertices,
        'outside_vertex_hull': bool(excess_vertices > 1e-6),
    }
