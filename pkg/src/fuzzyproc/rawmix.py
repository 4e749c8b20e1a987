"""Raw-mix proportioning for cement clinker.

The three quality moduli (LSF, SM, AM) are ratios of feeder-weighted oxide
sums. Their gradients with respect to the mix ratios form, together with a
row of ones, the sensitivity system whose solution is the feeder change ``dw``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InfeasibleError
from .fre import clamp_activation

__all__ = [
    "OXIDES",
    "LSF_WEIGHTS",
    "NORM_BANDS",
    "OxideComposition",
    "MixState",
    "ModuliVector",
    "MixSystem",
    "RefineConfig",
    "RefineResult",
    "moduli",
    "moduli_jacobian",
    "build_mix_system",
    "solve_dw",
    "project_sum_zero_box",
    "mix_error",
    "fnn_refine",
    "norm_band_flags",
]

OXIDES = ("CaO", "SiO2", "Al2O3", "Fe2O3")
LSF_WEIGHTS = (2.8, 1.2, 0.65)  # SiO2, Al2O3, Fe2O3 in the LSF denominator
NORM_BANDS = {"lsf": (1.02, 1.08), "sm": (2.35, 2.55), "am": (0.95, 1.25)}
MODULI = ("lsf", "sm", "am")


@dataclass(frozen=True, eq=False)
class OxideComposition:
    """Per-feeder oxide mass fractions; extra oxides are carried but unused."""

    cao: np.ndarray
    sio2: np.ndarray
    al2o3: np.ndarray
    fe2o3: np.ndarray
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        cols = [np.atleast_1d(np.asarray(getattr(self, k), dtype=float)) for k in ("cao", "sio2", "al2o3", "fe2o3")]
        n = cols[0].size
        if any(c.ndim != 1 or c.size != n for c in cols):
            raise ValueError("every oxide needs one value per feeder")
        extra = {k: np.atleast_1d(np.asarray(v, dtype=float)) for k, v in self.extra.items()}
        total = sum(cols) + sum(extra.values(), np.zeros(n))
        if any((c < 0).any() for c in cols) or any((v < 0).any() for v in extra.values()):
            raise ValueError("oxide fractions must be non-negative")
        if (total > 1.0 + 1e-12).any():
            raise ValueError("oxide fractions of a feeder sum to more than 1")
        for k, c in zip(("cao", "sio2", "al2o3", "fe2o3"), cols):
            object.__setattr__(self, k, c)
        object.__setattr__(self, "extra", extra)

    @classmethod
    def from_table(cls, rows: Sequence[dict], unit: str = "fraction") -> "OxideComposition":
        """Build from one mapping per feeder, e.g. ``{"CaO": 52.1, ...}`` with ``unit="percent"``."""
        if unit not in ("fraction", "percent"):
            raise ValueError(f"unit must be 'fraction' or 'percent', got {unit!r}")
        scale = 0.01 if unit == "percent" else 1.0
        cols = {ox: [scale * float(r.get(ox, 0.0)) for r in rows] for ox in OXIDES}
        others = sorted({k for r in rows for k in r} - set(OXIDES))
        extra = {k: [scale * float(r.get(k, 0.0)) for r in rows] for k in others}
        return cls(cols["CaO"], cols["SiO2"], cols["Al2O3"], cols["Fe2O3"], extra)

    @property
    def n_feeders(self) -> int:
        return self.cao.size

    def _ratios(self):
        s, a, f = LSF_WEIGHTS
        return (
            ("lsf", self.cao, s * self.sio2 + a * self.al2o3 + f * self.fe2o3),
            ("sm", self.sio2, self.al2o3 + self.fe2o3),
            ("am", self.al2o3, self.fe2o3),
        )


@dataclass(frozen=True, eq=False)
class MixState:
    w: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float).ravel()
        lo = np.broadcast_to(np.asarray(self.lower, dtype=float), w.shape).copy()
        hi = np.broadcast_to(np.asarray(self.upper, dtype=float), w.shape).copy()
        if (w < 0).any() or not w.sum() > 0:
            raise ValueError("mix ratios must be non-negative with a positive sum")
        if (lo > 0).any() or (hi < 0).any():
            raise ValueError("bounds on dw must satisfy LL <= 0 <= HL")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)


@dataclass(frozen=True)
class ModuliVector:
    lsf: float
    sm: float
    am: float

    def as_array(self) -> np.ndarray:
        return np.array([self.lsf, self.sm, self.am])


def _check_w(comp: OxideComposition, w) -> np.ndarray:
    w = np.asarray(w, dtype=float).ravel()
    if w.size != comp.n_feeders:
        raise ValueError(f"expected {comp.n_feeders} mix ratios, got {w.size}")
    return w


def moduli(comp: OxideComposition, w) -> ModuliVector:
    """LSF, SM and AM of the blended mix, all as plain ratios."""
    w = _check_w(comp, w)
    vals = {}
    for name, num, den in comp._ratios():
        d = float(den @ w)
        if d <= 0:
            raise ZeroDivisionError(f"{name.upper()} denominator is not positive")
        vals[name] = float(num @ w) / d
    return ModuliVector(**vals)


def moduli_jacobian(comp: OxideComposition, w) -> np.ndarray:
    """3 x n matrix of d{LSF, SM, AM}/dw_i by the quotient rule."""
    w = _check_w(comp, w)
    rows = []
    for name, num, den in comp._ratios():
        N, D = float(num @ w), float(den @ w)
        if D <= 0:
            raise ZeroDivisionError(f"{name.upper()} denominator is not positive")
        rows.append((num * D - N * den) / D**2)
    return np.vstack(rows)


@dataclass(frozen=True, eq=False)
class MixSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    rows: tuple[str, ...]


def build_mix_system(jac, targets, use_lsf: bool = True) -> MixSystem:
    """Stack the moduli gradients over a row of ones (``sum dw = 0``).

    ``targets`` are the required changes ``(dLSF, dSM, dAM)``, i.e. set point
    minus measured. With ``use_lsf=False`` the LSF row is dropped, as when the
    limestone arrives pre-blended.
    """
    jac = np.asarray(jac, dtype=float)
    t = np.asarray(targets, dtype=float).ravel()
    if jac.shape[0] != 3 or t.size != 3:
        raise ValueError("need three Jacobian rows and three targets")
    keep = [0, 1, 2] if use_lsf else [1, 2]
    names = tuple(MODULI[k] for k in keep) + ("sum",)
    A = np.vstack([jac[keep], np.ones(jac.shape[1])])
    b = np.concatenate([t[keep], [0.0]])
    return MixSystem(A, b, names)


def project_sum_zero_box(v, lower, upper) -> np.ndarray:
    """Euclidean projection of ``v`` onto ``{sum = 0} & [lower, upper]``.

    The projection is ``clip(v - lam, lower, upper)`` for the ``lam`` that
    zeroes the sum; the sum is piecewise linear in ``lam``, so ``lam`` is found
    exactly between consecutive breakpoints.
    """
    v = np.asarray(v, dtype=float)
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    if (lo > hi).any():
        raise InfeasibleError("a lower bound exceeds its upper bound")
    if lo.sum() > 0 or hi.sum() < 0:
        raise InfeasibleError("no point of the box has zero sum")
    if v.sum() == 0.0 and (v >= lo).all() and (v <= hi).all():
        return v.copy()

    def total(lam):
        return float(np.clip(v - lam, lo, hi).sum())

    knots = np.unique(np.concatenate([v - lo, v - hi]))
    # total() is non-increasing in lam, from sum(hi) to sum(lo)
    vals = np.array([total(k) for k in knots])
    idx = np.searchsorted(-vals, 0.0)  # first knot where total <= 0
    if idx < len(knots) and vals[idx] == 0.0:
        lam = knots[idx]
    elif idx == 0:
        lam = knots[0]
    elif idx == len(knots):
        lam = knots[-1]
    else:
        a, b = knots[idx - 1], knots[idx]
        fa, fb = vals[idx - 1], vals[idx]
        lam = a + (b - a) * fa / (fa - fb)
    out = np.clip(v - lam, lo, hi)
    # push the last rounding error into a coordinate with room to move
    err = out.sum()
    free = np.flatnonzero((out - err >= lo) & (out - err <= hi))
    if err != 0.0 and free.size:
        out[free[0]] -= err
    return out


def solve_dw(sys: MixSystem, lower, upper, rcond: float = 1e-12) -> np.ndarray:
    """Minimum-norm least-squares ``dw`` moved onto ``sum dw = 0`` within the bounds."""
    A, b = sys.matrix, sys.rhs
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    cutoff = rcond * (s.max() if s.size else 0.0)
    inv = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    dw = Vt.T @ (inv * (U.T @ b))
    lo = np.broadcast_to(np.asarray(lower, dtype=float), dw.shape)
    hi = np.broadcast_to(np.asarray(upper, dtype=float), dw.shape)
    return project_sum_zero_box(dw, lo, hi)


def mix_error(required, achieved) -> float:
    """Sum of squared differences between required and achieved moduli changes."""
    r = np.asarray(required, dtype=float).ravel()
    a = np.asarray(achieved, dtype=float).ravel()
    return float(((r - a) ** 2).sum())


def norm_band_flags(m: ModuliVector) -> dict[str, bool]:
    """Whether each modulus sits inside its usual plant band."""
    return {k: lo <= getattr(m, k) <= hi for k, (lo, hi) in NORM_BANDS.items()}


@dataclass(frozen=True)
class RefineConfig:
    max_iters: int = 100_000
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True, eq=False)
class RefineResult:
    dw: np.ndarray
    weights: np.ndarray
    error: float
    trace: tuple[float, ...]
    converged: bool
    iterations: int

    @property
    def moduli_error(self) -> float:
        return self.trace[-1] if self.trace else self.error


def fnn_refine(
    comp: OxideComposition,
    state: MixState,
    targets,
    config: RefineConfig | None = None,
    inputs=None,
) -> RefineResult:
    """Adjust network weights until the feeder change meets ``targets``.

    Feeder ``i`` gets ``dw_i = LL_i + (HL_i - LL_i) * y_i`` with
    ``y_i = f(max_j w_ij x_j)`` and the clamp activation ``f``, so every
    output stays inside its bounds. The error is the squared moduli error
    of the linearised change ``J dw`` plus ``(sum dw)^2``. Proposals are
    exact coordinate moves on one neuron at a time, visited in a seeded order,
    and accepted only when they lower the error.
    """
    cfg = config or RefineConfig()
    J = moduli_jacobian(comp, state.w)
    t = np.asarray(targets, dtype=float).ravel()
    if t.size != 3:
        raise ValueError("targets are (dLSF, dSM, dAM)")
    n = comp.n_feeders
    x = np.ones(n) if inputs is None else np.asarray(inputs, dtype=float).ravel()
    if x.size != n or (x <= 0).any():
        raise ValueError("network inputs must be positive, one per feeder")
    lo, hi = state.lower, state.upper
    span = hi - lo
    A = np.vstack([J, np.ones(n)])
    b = np.concatenate([t, [0.0]])

    # start from the weights that reproduce dw = 0
    y0 = np.divide(-lo, span, out=np.zeros(n), where=span > 0)
    W = np.minimum(y0[:, None] / x[None, :], 1.0)

    def outputs(Wm):
        return clamp_activation((Wm * x[None, :]).max(axis=1))

    def to_dw(y):
        return lo + span * y

    def err_of(dw):
        return float(((A @ dw - b) ** 2).sum())

    y = outputs(W)
    dw = to_dw(y)
    err = err_of(dw)
    trace = [err]
    rng = np.random.default_rng(cfg.seed)
    jmax = int(np.argmax(x))
    iters = 0
    while err > cfg.tolerance and iters < cfg.max_iters:
        improved = False
        for i in rng.permutation(n):
            if span[i] == 0:
                continue
            # error is quadratic in y_i: minimise exactly over [0, min(1, max attainable)]
            col = A[:, i] * span[i]
            base = A @ dw - b - col * y[i]
            denom = float(col @ col)
            if denom == 0:
                continue
            y_star = float(np.clip(-(col @ base) / denom, 0.0, min(1.0, x[jmax])))
            if y_star == y[i]:
                continue
            trial = y.copy()
            trial[i] = y_star
            new_dw = to_dw(trial)
            new_err = err_of(new_dw)
            if new_err < err:
                # realise y_star with the weights: cap the row, then set one entry
                W[i] = np.minimum(W[i], y_star / x)
                W[i, jmax] = y_star / x[jmax]
                y, dw, err = trial, new_dw, new_err
                improved = True
        iters += 1
        trace.append(err)
        if not improved:
            break
    return RefineResult(
        dw=dw,
        weights=W,
        error=err,
        trace=tuple(trace),
        converged=err <= cfg.tolerance,
        iterations=iters,
    )
