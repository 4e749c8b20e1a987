"""Fuzzy linear programming with toleranced right-hand sides.

A constraint ``a x <= b`` with tolerance ``p`` is fully satisfied up to
``b - p``, fully violated from ``b + p``, and linear in between. Its α-cut is
the crisp constraint ``a x <= (b - p) + 2p(1 - α)``, so every α gives an
ordinary LP whose optimum ``g(α)`` traces the trade-off between objective and
constraint satisfaction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError
from .lp import FEAS_TOL, solve_crisp_lp

__all__ = [
    "ParametricConstraint",
    "FlpProblem",
    "FlpSolution",
    "parametric_rhs",
    "constraint_membership",
    "solve_parametric",
    "objective_membership",
    "objective_bounds",
    "constraint_memberships",
    "decision_feasibility",
    "alpha_sweep",
    "toleranced_rows",
]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def parametric_rhs(b: float, p: float, alpha: float) -> float:
    """Right-hand side of the α-cut: ``(b - p) + 2p(1 - α)``."""
    alpha = _check_alpha(alpha)
    if p < 0:
        raise ValueError(f"tolerance must be non-negative, got {p}")
    return (b - p) + 2.0 * p * (1.0 - alpha)


def constraint_membership(ax: float, b: float, p: float) -> float:
    """Degree to which ``a x <= b`` holds given tolerance ``p``."""
    if p < 0:
        raise ValueError(f"tolerance must be non-negative, got {p}")
    if p == 0:
        return 1.0 if ax <= b else 0.0
    if ax <= b - p:
        return 1.0
    if ax >= b + p:
        return 0.0
    return (b + p - ax) / (2.0 * p)


@dataclass(frozen=True, eq=False)
class ParametricConstraint:
    """One row ``a x <= b`` (or ``= b``) with tolerance ``p``.

    ``enforce=False`` keeps the row out of the LP while still scoring it in
    the constraint memberships; use it for rows that only describe a limit.
    """

    a: np.ndarray
    b: float
    p: float = 0.0
    equality: bool = False
    enforce: bool = True
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).ravel())
        if self.p < 0:
            raise ConfigurationError(f"constraint {self.name or '?'}: tolerance must be >= 0")
        if self.equality and self.p != 0:
            raise ConfigurationError(f"constraint {self.name or '?'}: equalities cannot carry a tolerance")

    def membership(self, x) -> float:
        ax = float(self.a @ np.asarray(x, dtype=float))
        if self.equality:
            tol = FEAS_TOL * max(1.0, abs(self.b))
            return 1.0 if abs(ax - self.b) <= tol else 0.0
        return constraint_membership(ax, self.b, self.p)


@dataclass(frozen=True, eq=False)
class FlpProblem:
    """Maximise ``c x`` over ``x >= 0`` and the listed constraints."""

    c: np.ndarray
    constraints: tuple[ParametricConstraint, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        c = np.asarray(self.c, dtype=float).ravel()
        cons = tuple(self.constraints)
        for k, con in enumerate(cons):
            if con.a.size != c.size:
                raise ConfigurationError(
                    f"constraint {con.name or k}: has {con.a.size} coefficients, objective has {c.size}"
                )
        names = tuple(self.variables) or tuple(f"x{i + 1}" for i in range(c.size))
        if len(names) != c.size:
            raise ConfigurationError("one variable name per objective coefficient")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "variables", names)

    @classmethod
    def from_arrays(cls, c, A, b, p=None, equality=None, enforce=None) -> "FlpProblem":
        A = np.asarray(A, dtype=float)
        m = A.shape[0]
        p = np.zeros(m) if p is None else np.asarray(p, dtype=float)
        eq = [False] * m if equality is None else list(equality)
        en = [True] * m if enforce is None else list(enforce)
        cons = tuple(
            ParametricConstraint(A[i], float(b[i]), float(p[i]), bool(eq[i]), bool(en[i]), f"row{i + 1}")
            for i in range(m)
        )
        return cls(c, cons)

    def with_tolerance(self, index: int, p: float) -> "FlpProblem":
        cons = list(self.constraints)
        old = cons[index]
        cons[index] = ParametricConstraint(old.a, old.b, p, old.equality, old.enforce, old.name)
        return FlpProblem(self.c, tuple(cons), self.variables)

    def lp_rows(self, alpha: float) -> tuple[np.ndarray, np.ndarray]:
        """Inequality rows of the α-cut LP; equalities become two rows."""
        rows, rhs = [], []
        for con in self.constraints:
            if not con.enforce:
                continue
            if con.equality:
                rows += [con.a, -con.a]
                rhs += [con.b, -con.b]
            else:
                rows.append(con.a)
                rhs.append(parametric_rhs(con.b, con.p, alpha))
        n = self.c.size
        if not rows:
            return np.zeros((0, n)), np.zeros(0)
        return np.vstack(rows), np.array(rhs)


@dataclass(frozen=True, eq=False)
class FlpSolution:
    alpha: float
    x_star: np.ndarray
    z_star: float


def solve_parametric(prob: FlpProblem, alpha: float) -> FlpSolution:
    alpha = _check_alpha(alpha)
    A, b = prob.lp_rows(alpha)
    x, z = solve_crisp_lp(prob.c, A, b)
    return FlpSolution(alpha, x, z)


def objective_bounds(prob: FlpProblem) -> tuple[float, float]:
    """``(b0, b1) = (g(0), g(1))``: optimum of the loosest and the tightest cut."""
    return solve_parametric(prob, 0.0).z_star, solve_parametric(prob, 1.0).z_star


def objective_membership(z: float, b0: float, b1: float) -> float:
    """1 at or above ``b0``, 0 at or below ``b1``, linear in between."""
    if not b0 > b1:
        raise ConfigurationError(
            f"objective membership needs b0 > b1, got b0={b0}, b1={b1}; "
            "the objective does not respond to the tolerances"
        )
    if z >= b0:
        return 1.0
    if z <= b1:
        return 0.0
    return (z - b1) / (b0 - b1)


def constraint_memberships(x, prob: FlpProblem) -> list[float]:
    return [con.membership(x) for con in prob.constraints]


def decision_feasibility(x, prob: FlpProblem, b0: float, b1: float) -> float:
    """``min`` of the objective membership and every constraint membership.

    Any negative coordinate makes ``x`` infeasible outright.
    """
    x = np.asarray(x, dtype=float).ravel()
    if (x < -FEAS_TOL).any():
        return 0.0
    mu_z = objective_membership(float(prob.c @ x), b0, b1)
    return min([mu_z, *constraint_memberships(x, prob)])


def alpha_sweep(prob: FlpProblem, alphas: Iterable[float]) -> list[FlpSolution]:
    """One solution per α, in the order given."""
    return [solve_parametric(prob, a) for a in alphas]


def toleranced_rows(prob: FlpProblem) -> Sequence[int]:
    return [k for k, con in enumerate(prob.constraints) if con.p > 0]
