"""Crisp linear models of three small plants: a flowsheet mass balance, a
branched laminar pipe network, and a three-stage counter-current extractor.

Each builder returns a :class:`LinearSystem`; ``solve`` checks the residual
before handing back the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import SingularSystemError

__all__ = [
    "LinearSystem",
    "FlowScenario",
    "FLOW_UNKNOWNS",
    "solve_crisp",
    "build_flowsheet",
    "build_pipe_network",
    "build_extraction",
]

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LinearSystem:
    A: np.ndarray
    b: np.ndarray
    unknowns: tuple[str, ...]

    def solve(self) -> dict[str, float]:
        x = solve_crisp(self.A, self.b)
        return dict(zip(self.unknowns, x.tolist()))

    def residual(self, values) -> float:
        x = np.array([values[k] for k in self.unknowns]) if isinstance(values, dict) else values
        return float(np.abs(self.A @ np.asarray(x, dtype=float) - self.b).max())


def solve_crisp(A, b) -> np.ndarray:
    """LU solve of a square system, verified by ``||Ax - b||_inf``."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != b.size:
        raise ValueError(f"need a square system, got A {A.shape} and b {b.shape}")
    if np.linalg.matrix_rank(A) < A.shape[0]:
        raise SingularSystemError(f"matrix of size {A.shape[0]} is singular")
    x = np.linalg.solve(A, b)
    scale = max(1.0, float(np.abs(b).max(initial=0.0)), float(np.abs(A).max(initial=0.0)))
    if np.abs(A @ x - b).max(initial=0.0) > RESIDUAL_TOL * scale:
        raise SingularSystemError("solution residual too large; system is ill-conditioned")
    return x


FLOW_UNKNOWNS = ("F2", "F3", "F4", "F7", "F8")


@dataclass(frozen=True)
class FlowScenario:
    """Measured flows; the other five are estimated from node balances."""

    F1: float
    F5: float
    F6: float
    F9: float

    def __post_init__(self) -> None:
        for k in ("F1", "F5", "F6", "F9"):
            if getattr(self, k) < 0:
                raise ValueError(f"{k} must be non-negative")


def build_flowsheet(s: FlowScenario, form: Literal["matrix", "nodes"] = "matrix") -> LinearSystem:
    """Mass balance over the five units, unknowns ``(F2, F3, F4, F7, F8)``.

    ``form="matrix"`` uses the coefficient-matrix form (second row
    ``F3 - F4 = F5``); ``form="nodes"`` uses the node-equation form
    (second row ``F2 - F4 = F5``). Both share the other four rows.
    """
    if form == "matrix":
        row2 = [0, 1, -1, 0, 0]
    elif form == "nodes":
        row2 = [1, 0, -1, 0, 0]
    else:
        raise ValueError(f"unknown flowsheet form {form!r}")
    A = np.array(
        [
            [-1, 1, 0, 0, 0],
            row2,
            [0, 0, 1, -1, 0],
            [1, 0, 0, 0, 1],
            [0, 0, 0, 0, 1],
        ],
        dtype=float,
    )
    b = np.array([s.F1, s.F5, s.F6, s.F5, s.F9 - s.F6], dtype=float)
    return LinearSystem(A, b, FLOW_UNKNOWNS)


def build_pipe_network(T, T1, T2, D, D1, D2, mu, deltaP) -> LinearSystem:
    """Laminar (Poiseuille) split of one pipe into two, unknowns ``(v, v1, v2)``."""
    for name, val in (("T", T), ("T1", T1), ("T2", T2), ("D", D), ("D1", D1), ("D2", D2), ("mu", mu)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    k = 32.0 * mu * T / D**2
    k1 = 32.0 * mu * T1 / D1**2
    k2 = 32.0 * mu * T2 / D2**2
    A = np.array([[k, k1, 0.0], [k, 0.0, k2], [-(D**2), D1**2, D2**2]])
    b = np.array([deltaP, deltaP, 0.0], dtype=float)
    return LinearSystem(A, b, ("v", "v1", "v2"))


def build_extraction(Es, Rs, K, X0, Y4) -> LinearSystem:
    """Three counter-current stages with ``Y_i = K X_i``.

    Unknowns ``(X1, Y1, X2, Y2, X3, Y3)``; raffinate enters stage 1 with
    composition ``X0`` and extract enters stage 3 with ``Y4``.
    """
    for name, val in (("Es", Es), ("Rs", Rs), ("K", K)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    A = np.array(
        [
            [Rs, Es, 0, -Es, 0, 0],
            [K, -1, 0, 0, 0, 0],
            [-Rs, 0, Rs, Es, 0, -Es],
            [0, 0, K, -1, 0, 0],
            [0, 0, -Rs, 0, Rs, Es],
            [0, 0, 0, 0, K, -1],
        ],
        dtype=float,
    )
    b = np.array([Rs * X0, 0, 0, 0, Es * Y4, 0], dtype=float)
    return LinearSystem(A, b, ("X1", "Y1", "X2", "Y2", "X3", "Y3"))
