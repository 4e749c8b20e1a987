"""Small dense LP kernel: maximize ``c x`` subject to ``A x <= b`` and ``x >= 0``.

Problems with at most three variables are solved by enumerating every vertex
of the polytope, which is exact and trivially auditable. Larger problems use
a two-phase tableau simplex with Bland's rule. Either way, ties among optimal
points are broken towards the lexicographically smallest ``x``.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import InfeasibleError, UnboundedError

__all__ = ["solve_crisp_lp", "FEAS_TOL"]

FEAS_TOL = 1e-9
VERTEX_LIMIT = 3


def _as_problem(c, A, b):
    c = np.asarray(c, dtype=float).ravel()
    A = np.asarray(A, dtype=float)
    if A.ndim == 1:
        A = A[None, :]
    b = np.asarray(b, dtype=float).ravel()
    if A.shape != (b.size, c.size):
        raise ValueError(f"A is {A.shape}, expected ({b.size}, {c.size})")
    return c, A, b


def _scale(A, b) -> float:
    return max(1.0, float(np.abs(A).max(initial=0.0)), float(np.abs(b).max(initial=0.0)))


def _vertices(A: np.ndarray, b: np.ndarray) -> list[np.ndarray]:
    n = A.shape[1]
    G = np.vstack([A, -np.eye(n)])
    h = np.concatenate([b, np.zeros(n)])
    tol = FEAS_TOL * _scale(A, b)
    out = []
    for rows in itertools.combinations(range(G.shape[0]), n):
        M = G[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        v = np.linalg.solve(M, h[list(rows)])
        if (G @ v <= h + tol).all():
            out.append(np.where(np.abs(v) < 1e-13, 0.0, v))
    return out


def _lex_best(points: list[np.ndarray], c: np.ndarray) -> np.ndarray:
    zs = np.array([c @ p for p in points])
    zmax = zs.max()
    tol = 1e-9 * max(1.0, abs(zmax))
    tied = [p for p, z in zip(points, zs) if z >= zmax - tol]
    return min(tied, key=lambda p: tuple(p))


def _solve_vertices(c, A, b):
    verts = _vertices(A, b)
    if not verts:
        raise InfeasibleError("constraints admit no point with x >= 0")
    # unbounded iff some recession direction d (A d <= 0, d >= 0) improves c
    n = c.size
    if n:
        rec_A = np.vstack([A, np.ones((1, n))])
        rec_b = np.concatenate([np.zeros(A.shape[0]), [1.0]])
        dirs = _vertices(rec_A, rec_b)
        if any(c @ d > 1e-12 for d in dirs):
            raise UnboundedError("objective grows without bound on the feasible set")
    return _lex_best(verts, c)


class _Tableau:
    """Dense tableau for ``max c x`` over equality rows with basic variables."""

    def __init__(self, T: np.ndarray, basis: list[int]):
        self.T = T
        self.basis = basis

    def pivot(self, r: int, k: int) -> None:
        T = self.T
        T[r] /= T[r, k]
        for i in range(T.shape[0]):
            if i != r and T[i, k] != 0.0:
                T[i] -= T[i, k] * T[r]
        self.basis[r] = k

    def run(self, allowed: int, eps: float = 1e-11) -> None:
        # last row holds reduced costs (negated), last column the rhs
        T = self.T
        for _ in range(50_000):
            cost = T[-1, :allowed]
            entering = [k for k in range(allowed) if cost[k] < -eps]
            if not entering:
                return
            k = entering[0]  # Bland: smallest index
            col = T[:-1, k]
            ratios = [
                (T[i, -1] / col[i], self.basis[i], i) for i in range(len(col)) if col[i] > eps
            ]
            if not ratios:
                raise UnboundedError("objective grows without bound on the feasible set")
            _, _, r = min(ratios)
            self.pivot(r, k)
        raise RuntimeError("simplex did not terminate")


def _simplex(c, A, b) -> tuple[np.ndarray, float, bool]:
    m, n = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    # x, slacks, artificials
    T = np.zeros((m + 1, n + m + m + 1))
    T[:m, :n] = A * sign[:, None]
    T[:m, n : n + m] = np.diag(sign)
    T[:m, n + m : n + 2 * m] = np.eye(m)
    T[:m, -1] = b * sign
    basis = list(range(n + m, n + 2 * m))
    # phase 1: minimise the sum of artificials
    T[-1, :] = -T[:m, :].sum(axis=0)
    T[-1, n + m : n + 2 * m] = 0.0
    tab = _Tableau(T, basis)
    tab.run(n + 2 * m)
    if -T[-1, -1] > FEAS_TOL * _scale(A, b):
        raise InfeasibleError("constraints admit no point with x >= 0")
    # drive remaining artificials out of the basis
    for r, bv in enumerate(list(tab.basis)):
        if bv >= n + m:
            for k in range(n + m):
                if abs(T[r, k]) > 1e-11:
                    tab.pivot(r, k)
                    break
    # phase 2 over x and slacks only
    T[-1, :] = 0.0
    T[-1, :n] = -c
    for r, bv in enumerate(tab.basis):
        if bv < n + m and T[-1, bv] != 0.0:
            T[-1] -= T[-1, bv] * T[r]
    T[:, n + m : n + 2 * m] = 0.0
    tab.run(n + m)
    x = np.zeros(n + 2 * m)
    for r, bv in enumerate(tab.basis):
        x[bv] = T[r, -1]
    x = x[:n]
    # the optimum is unique when every nonbasic column strictly worsens it
    nonbasic = [k for k in range(n + m) if k not in tab.basis]
    unique = all(T[-1, k] > 1e-9 for k in nonbasic)
    return np.where(np.abs(x) < 1e-13, 0.0, x), float(c @ x), unique


def _solve_simplex(c, A, b) -> np.ndarray:
    x, z, unique = _simplex(c, A, b)
    if unique:
        return x
    # lexicographic tie-break: fix the optimum, then minimise x_1, x_2, ... in turn
    tol = 1e-12 * max(1.0, abs(z))
    rows, rhs = [A, -c[None, :]], [b, [-(z - tol)]]
    n = c.size
    for k in range(n):
        e = np.zeros(n)
        e[k] = -1.0
        Ak, bk = np.vstack(rows), np.concatenate(rhs)
        xk, vk, _ = _simplex(e, Ak, bk)
        x = xk
        rows.append(-e[None, :])
        rhs.append([-vk + 1e-12 * max(1.0, abs(vk))])
    return np.where(np.abs(x) < 1e-10, 0.0, x)


def solve_crisp_lp(c, A, b) -> tuple[np.ndarray, float]:
    """Optimal point and value of ``max c x`` s.t. ``A x <= b``, ``x >= 0``.

    Raises :class:`InfeasibleError` or :class:`UnboundedError`.
    """
    c, A, b = _as_problem(c, A, b)
    if c.size <= VERTEX_LIMIT:
        x = _solve_vertices(c, A, b)
    else:
        x = _solve_simplex(c, A, b)
    return x, float(c @ x)
