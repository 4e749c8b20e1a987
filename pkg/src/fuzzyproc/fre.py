"""Fuzzy relational equations ``P o Q = R`` and the one-layer network fallback.

The exact route computes the greatest solution through the Goedel implication
and checks it by composing back. When the system has no solution, a single
layer of max-of-products neurons with a clamp activation is fitted to the
targets instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

__all__ = [
    "CompositionKind",
    "FreSystem",
    "RowReport",
    "FnnConfig",
    "FnnResult",
    "TwoStageResult",
    "as_fuzzy_matrix",
    "compose",
    "greatest_solution",
    "partition_diagnose",
    "clamp_activation",
    "forward",
    "fnn_solve",
    "two_stage_solve",
]

CompositionKind = Literal["max-min", "max-product"]


def as_fuzzy_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate a 2-D array of grades in [0, 1]; 1-D input becomes a column."""
    arr = np.array(a, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and (np.isnan(arr).any() or arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError(f"{name} entries must lie in [0, 1]")
    return arr


def compose(P, Q, kind: CompositionKind = "max-min") -> np.ndarray:
    """``r_ik = max_j t(p_ij, q_jk)`` with ``t`` = min or product."""
    P = as_fuzzy_matrix(P, "P")
    Q = as_fuzzy_matrix(Q, "Q")
    if P.shape[1] != Q.shape[0]:
        raise ValueError(f"cannot compose {P.shape} with {Q.shape}")
    if kind == "max-min":
        terms = np.minimum(P[:, :, None], Q[None, :, :])
    elif kind == "max-product":
        terms = P[:, :, None] * Q[None, :, :]
    else:
        raise ValueError(f"unknown composition kind {kind!r}")
    if P.shape[1] == 0:
        return np.zeros((P.shape[0], Q.shape[1]))
    return terms.max(axis=1)


@dataclass(frozen=True, eq=False)
class FreSystem:
    """Known ``P`` (n x m) and right-hand side ``R`` (n x 1).

    ``zero_mask`` marks structurally zero positions of ``P``; it defaults to
    the zero entries of ``P``.
    """

    P: np.ndarray
    R: np.ndarray
    kind: CompositionKind = "max-min"
    zero_mask: np.ndarray | None = None

    def __post_init__(self) -> None:
        P = np.array(self.P, dtype=float)
        if P.ndim != 2:
            raise ValueError("P must be 2-D")
        R = np.array(self.R, dtype=float)
        if R.ndim == 1:
            R = R[:, None]
        if R.shape != (P.shape[0], 1):
            raise ValueError(f"R must be a column of length {P.shape[0]}, got {R.shape}")
        mask = P == 0 if self.zero_mask is None else np.array(self.zero_mask, dtype=bool)
        if mask.shape != P.shape:
            raise ValueError("zero_mask must match the shape of P")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "zero_mask", mask)

    @property
    def shape(self) -> tuple[int, int]:
        return self.P.shape


def greatest_solution(sys: FreSystem) -> tuple[np.ndarray, bool]:
    """Greatest candidate ``Q`` and whether it actually solves the system.

    ``Q_j = min_i (1 if p_ij <= r_i else r_i)``. If any solution exists this
    one does and dominates all others elementwise.
    """
    if sys.kind != "max-min":
        raise ValueError("greatest_solution is defined for max-min systems")
    P = as_fuzzy_matrix(sys.P, "P")
    R = as_fuzzy_matrix(sys.R, "R")
    implied = np.where(P <= R, 1.0, np.broadcast_to(R, P.shape))
    Q = implied.min(axis=0)[:, None] if P.shape[0] else np.ones((P.shape[1], 1))
    solvable = bool(np.array_equal(compose(P, Q), R))
    return Q, solvable


@dataclass(frozen=True)
class RowReport:
    row: int
    attainable: float
    target: float
    satisfiable: bool


def partition_diagnose(sys: FreSystem) -> list[RowReport]:
    """Row-wise necessary condition: row ``i`` can reach ``r_i`` only if ``max_j p_ij >= r_i``."""
    out = []
    for i, (row, r) in enumerate(zip(sys.P, sys.R[:, 0])):
        att = float(row.max()) if row.size else 0.0
        out.append(RowReport(i, att, float(r), att >= r))
    return out


def clamp_activation(a):
    """0 below zero, identity on [0, 1], 1 above one."""
    return np.clip(a, 0.0, 1.0) if isinstance(a, np.ndarray) else min(max(float(a), 0.0), 1.0)


def forward(W: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``y_i = f(max_j w_ij x_j)``."""
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float).ravel()
    if W.shape[1] == 0:
        return np.zeros(W.shape[0])
    return clamp_activation((W * x[None, :]).max(axis=1))


@dataclass(frozen=True)
class FnnConfig:
    max_iters: int = 100_000
    tolerance: float = 1e-6
    seed: int = 0
    restarts: int = 4
    weight_bounds: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        lo, hi = self.weight_bounds
        if not lo <= hi:
            raise ValueError("weight_bounds must satisfy lo <= hi")


@dataclass(frozen=True, eq=False)
class FnnResult:
    weights: np.ndarray
    residual: float
    trace: tuple[float, ...]
    converged: bool
    iterations: int
    restart: int
    outputs: np.ndarray = field(default=None)

    @property
    def stop_reason(self) -> str:
        return "tolerance" if self.converged else "max_iters"


def _row_error(w: np.ndarray, x: np.ndarray, t: float) -> float:
    y = clamp_activation(float((w * x).max())) if w.size else 0.0
    return (y - t) ** 2


def _line_search(w: np.ndarray, j: int, x: np.ndarray, t: float, lo: float, hi: float) -> float:
    # the row output is monotone and piecewise linear in w[j]; its best value
    # is either where the j-th term hits the target or at an end of the box
    xj = x[j]
    if xj == 0.0:
        return w[j]
    cands = {float(w[j]), lo, hi, min(max(t / xj, lo), hi)}
    best_val, best_key = w[j], None
    trial = w.copy()
    for c in sorted(cands):
        trial[j] = c
        key = (_row_error(trial, x, t), c * xj, c != w[j])
        if best_key is None or key < best_key:
            best_val, best_key = c, key
    return best_val


def fnn_solve(sys: FreSystem, x, targets, config: FnnConfig | None = None) -> FnnResult:
    """Fit the weights of ``y = f(max_j w_ij x_j)`` to ``targets``.

    Seeded coordinate descent with exact line searches; restart 0 starts from
    ``sys.P``, later restarts from uniform random weights. Structurally zero
    weights stay zero. The residual is the sum of squared output errors, and
    ``trace`` holds the best residual seen after every sweep.
    """
    cfg = config or FnnConfig()
    n, m = sys.shape
    if n == 0 or m == 0:
        raise ValueError("empty system")
    x = np.asarray(x, dtype=float).ravel()
    t = np.asarray(targets, dtype=float).ravel()
    if x.shape != (m,) or t.shape != (n,):
        raise ValueError(f"expected x of length {m} and targets of length {n}")
    lo, hi = cfg.weight_bounds
    free = ~sys.zero_mask
    coords = np.argwhere(free)
    rng = np.random.default_rng(cfg.seed)

    def residual(W):
        return float(((forward(W, x) - t) ** 2).sum())

    best_W, best_res, best_restart = None, np.inf, 0
    trace: list[float] = []
    iters = 0
    for restart in range(cfg.restarts):
        if restart == 0:
            W = np.clip(np.where(free, sys.P, 0.0), lo, hi)
        else:
            W = np.where(free, rng.uniform(lo, hi, size=(n, m)), 0.0)
        res = residual(W)
        while True:
            if res < best_res:
                best_W, best_res, best_restart = W.copy(), res, restart
            if best_res <= cfg.tolerance or iters >= cfg.max_iters:
                break
            for k in rng.permutation(len(coords)):
                i, j = coords[k]
                W[i, j] = _line_search(W[i], j, x, t[i], lo, hi)
            iters += 1
            new = residual(W)
            stalled = new >= res
            res = new
            if res < best_res:
                best_W, best_res, best_restart = W.copy(), res, restart
            trace.append(best_res)
            if stalled:
                break
        if best_res <= cfg.tolerance or iters >= cfg.max_iters:
            break
    return FnnResult(
        weights=best_W,
        residual=best_res,
        trace=tuple(trace),
        converged=best_res <= cfg.tolerance,
        iterations=iters,
        restart=best_restart,
        outputs=forward(best_W, x),
    )


@dataclass(frozen=True, eq=False)
class TwoStageResult:
    solvable: bool
    Q: np.ndarray
    diagnosis: tuple[RowReport, ...]
    network: FnnResult | None = None


def two_stage_solve(sys: FreSystem, x, config: FnnConfig | None = None) -> TwoStageResult:
    """Exact greatest solution when one exists, otherwise fit the network.

    ``x`` is the input fed to the network in the second stage; the targets are
    the right-hand side of the system.
    """
    diag = tuple(partition_diagnose(sys))
    Q, solvable = greatest_solution(sys)
    if solvable:
        return TwoStageResult(True, Q, diag)
    net = fnn_solve(sys, x, sys.R[:, 0], config)
    return TwoStageResult(False, Q, diag, net)
