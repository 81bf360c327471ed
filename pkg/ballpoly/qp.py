"""
Primal active-set solver for small dense convex quadratic programs.

    minimize    1/2 x^T H x + g^T x
    subject to  A x = b
                G x <= h

H only needs to be positive semidefinite; directions of zero curvature are
followed as rays until a constraint blocks them. A feasible start comes from
an LP (scipy.optimize.linprog). The working set is changed one constraint at
a time with Bland's rule (smallest index) for both additions and removals.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from ballpoly.exceptions import ImplementationAlarm

try:
    from ballpoly_config import OPTIMIZER
except ImportError:
    OPTIMIZER = {'active_set_max_iter': 500}

logger = logging.getLogger(__name__)


@dataclass
class QPResult:
    status: str                      # 'optimal' or 'infeasible'
    x: Optional[np.ndarray] = None
    objective: float = float('nan')
    active: Tuple[int, ...] = ()
    multipliers: dict = field(default_factory=dict)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == 'optimal'


def find_feasible_point(G: np.ndarray, h: np.ndarray, A: Optional[np.ndarray] = None,
                        b: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
    """Any point with A x = b, G x <= h, or None if there is none."""
    n = G.shape[1] if G.size else A.shape[1]
    res = linprog(np.zeros(n), A_ub=G if G.size else None, b_ub=h if G.size else None,
                  A_eq=A if A is not None and A.size else None, b_eq=b if A is not None and A.size else None,
                  bounds=[(None, None)] * n, method='highs')
    if res.status == 2:
        return None
    if not res.success:
        logger.debug("phase-1 LP did not finish: %s", res.message)
        return None
    return np.asarray(res.x, dtype=float)


class ActiveSetSolver:
    def __init__(self, max_iter: Optional[int] = None, tol: float = 1e-12):
        self.max_iter = max_iter or OPTIMIZER.get('active_set_max_iter', 500)
        self.tol = tol

    def solve(self, H, g, G, h, A=None, b=None, x0=None) -> QPResult:
        """
        Solve the QP; returns QPResult with status 'infeasible' when the
        constraints have no common point.
        """
        H = np.asarray(H, dtype=float)
        g = np.asarray(g, dtype=float)
        n = H.shape[0]
        G = np.asarray(G, dtype=float).reshape(-1, n)
        h = np.asarray(h, dtype=float).reshape(-1)
        A = np.zeros((0, n)) if A is None else np.asarray(A, dtype=float).reshape(-1, n)
        b = np.zeros(0) if b is None else np.asarray(b, dtype=float).reshape(-1)

        x = find_feasible_point(G, h, A, b) if x0 is None else np.asarray(x0, dtype=float)
        if x is None:
            return QPResult('infeasible')
        scale = max(1.0, float(np.abs(h).max()) if h.size else 1.0)
        feas_tol = 1e3 * self.tol * scale

        working: List[int] = []
        for it in range(1, self.max_iter + 1):
            q = H @ x + g
            M = np.vstack([A, G[working]]) if working or A.shape[0] else np.zeros((0, n))
            p, is_ray = self._step(H, q, M)

            if np.linalg.norm(p) <= self.tol * max(1.0, np.linalg.norm(x)):
                lam = self._multipliers(q, A, G, working)
                negative = [i for i, value in zip(working, lam) if value < -1e3 * self.tol]
                if not negative:
                    objective = float(0.5 * x @ H @ x + g @ x)
                    logger.debug("active-set optimum after %d iterations, working set %s", it, working)
                    return QPResult('optimal', x, objective, tuple(sorted(working)),
                                    dict(zip(working, map(float, lam))), it)
                drop = min(negative)
                logger.debug("active-set: drop constraint %d (multiplier %.3e)", drop,
                             lam[working.index(drop)])
                working.remove(drop)
                continue

            slope = G @ p
            candidates = [i for i in range(G.shape[0]) if i not in working and slope[i] > self.tol]
            alpha, blocking = (np.inf if is_ray else 1.0), None
            for i in candidates:
                step = max((h[i] - G[i] @ x) / slope[i], 0.0)
                if step < alpha - 1e-15:
                    alpha, blocking = step, i
            if not np.isfinite(alpha):
                raise ImplementationAlarm("quadratic program is unbounded along a zero-curvature ray")
            x = x + alpha * p
            if blocking is not None:
                logger.debug("active-set: add constraint %d (step %.3e)", blocking, alpha)
                working.append(blocking)
            if np.any(G @ x - h > feas_tol):
                logger.warning("active-set iterate left the feasible region by %.3e", float(np.max(G @ x - h)))

        raise ImplementationAlarm(f"active-set solver did not converge in {self.max_iter} iterations")

    def _step(self, H: np.ndarray, q: np.ndarray, M: np.ndarray) -> Tuple[np.ndarray, bool]:
        """Minimizer of the quadratic model on the null space of M, or a descent ray."""
        n = H.shape[0]
        if M.shape[0]:
            _, s, Vt = np.linalg.svd(M)
            rank = int(np.sum(s > 1e-10 * s[0])) if s.size and s[0] > 0 else 0
            Z = Vt[rank:].T
        else:
            Z = np.eye(n)
        if Z.shape[1] == 0:
            return np.zeros(n), False
        reduced_H = Z.T @ H @ Z
        reduced_q = Z.T @ q
        w, U = np.linalg.eigh(reduced_H)
        flat = w <= 1e-10 * max(1.0, float(np.abs(w).max()))
        if np.any(flat):
            along = U[:, flat].T @ reduced_q
            if np.linalg.norm(along) > self.tol:
                return -(Z @ (U[:, flat] @ along)), True
        inv = np.where(flat, 0.0, 1.0 / np.where(flat, 1.0, w))
        return -(Z @ (U @ (inv * (U.T @ reduced_q)))), False

    @staticmethod
    def _multipliers(q: np.ndarray, A: np.ndarray, G: np.ndarray, working: List[int]) -> np.ndarray:
        """Multipliers of the working inequalities from the stationarity condition."""
        if not working:
            return np.zeros(0)
        M = np.vstack([A, G[working]])
        lam, *_ = np.linalg.lstsq(M.T, -q, rcond=None)
        return lam[A.shape[0]:]


def min_norm_point(P: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Point of conv(P) closest to the origin."""
    P = np.asarray(P, dtype=float)
    m = P.shape[0]
    if m == 1:
        return P[0].copy()
    res = ActiveSetSolver(tol=tol).solve(
        H=P @ P.T, g=np.zeros(m), G=-np.eye(m), h=np.zeros(m),
        A=np.ones((1, m)), b=np.ones(1), x0=np.full(m, 1.0 / m),
    )
    return res.x @ P


def project_onto_polytope(x: np.ndarray, G: np.ndarray, h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Euclidean projection of x onto {y : G y <= h}."""
    x = np.asarray(x, dtype=float)
    res = ActiveSetSolver(tol=tol).solve(H=np.eye(x.size), g=-x, G=G, h=h)
    if not res.optimal:
        raise ImplementationAlarm("projection target polytope is empty")
    return res.x
