"""Neutrosophic values, relations and relational equations.

A neutrosophic value is either a grade in [0, 1] or an indeterminate ``nI``
with coefficient ``n`` in (0, 1]; ``I`` itself is ``1I``. Indeterminacy
absorbs under every t-norm and t-conorm: combining a scalar with ``nI`` gives
``nI``. When both arguments are indeterminate the coefficients are combined
with the operator's scalar formula, and a zero coefficient collapses to the
scalar 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from .errors import DomainError
from .fre import FnnConfig, FnnResult, FreSystem, fnn_solve

__all__ = [
    "NeutroValue",
    "I",
    "Kind",
    "KINDS",
    "tnorm",
    "tconorm",
    "NeutroMatrix",
    "n_compose",
    "relational_join",
    "dom",
    "ran",
    "height",
    "PropertyResult",
    "is_reflexive",
    "is_symmetric",
    "is_transitive",
    "transitive_closure",
    "fn_activation",
    "NreResult",
    "nre_solve",
    "sagittal_edges",
    "SAMPLE_RELATION",
]

Kind = Literal["standard", "algebraic", "bounded", "drastic"]
KINDS: tuple[str, ...] = ("standard", "algebraic", "bounded", "drastic")


@dataclass(frozen=True)
class NeutroValue:
    value: float
    indeterminate: bool = False

    def __post_init__(self) -> None:
        v = float(self.value)
        if self.indeterminate:
            if not 0.0 < v <= 1.0:
                raise DomainError(f"indeterminate coefficient must lie in (0, 1], got {v}")
        elif not 0.0 <= v <= 1.0:
            raise DomainError(f"grade must lie in [0, 1], got {v}")
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x: "NeutroValue | float") -> "NeutroValue":
        return x if isinstance(x, NeutroValue) else cls(float(x))

    @classmethod
    def ind(cls, coef: float = 1.0) -> "NeutroValue":
        return cls(coef, True)

    @classmethod
    def parse(cls, token: str) -> "NeutroValue":
        t = token.strip()
        m = re.fullmatch(r"([0-9]*\.?[0-9]+(?:[eE][-+]?\d+)?)?\s*\*?\s*I", t)
        if m:
            return cls(float(m.group(1)) if m.group(1) else 1.0, True)
        try:
            return cls(float(t))
        except ValueError:
            raise DomainError(f"not a neutrosophic value: {token!r}") from None

    @property
    def is_scalar(self) -> bool:
        return not self.indeterminate

    def __str__(self) -> str:
        if self.indeterminate:
            return "I" if self.value == 1.0 else f"{self.value:g}I"
        return f"{self.value:g}"


I = NeutroValue.ind(1.0)

_T_SCALAR: dict[str, Callable[[float, float], float]] = {
    "standard": min,
    "algebraic": lambda a, b: a * b,
    "bounded": lambda a, b: max(0.0, a + b - 1.0),
    "drastic": lambda a, b: a if b == 1.0 else b if a == 1.0 else 0.0,
}

_S_SCALAR: dict[str, Callable[[float, float], float]] = {
    "standard": max,
    "algebraic": lambda a, b: a + b - a * b,
    "bounded": lambda a, b: min(1.0, a + b),
    "drastic": lambda a, b: a if b == 0.0 else b if a == 0.0 else 1.0,
}


def _combine(table, kind: str, a, b) -> NeutroValue:
    try:
        f = table[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}") from None
    a, b = NeutroValue.of(a), NeutroValue.of(b)
    if a.indeterminate and b.indeterminate:
        c = min(max(f(a.value, b.value), 0.0), 1.0)
        return NeutroValue.ind(c) if c > 0.0 else NeutroValue(0.0)
    if a.indeterminate:
        return a
    if b.indeterminate:
        return b
    return NeutroValue(min(max(f(a.value, b.value), 0.0), 1.0))


def tnorm(kind: Kind, a, b) -> NeutroValue:
    """Neutrosophic intersection of two values."""
    return _combine(_T_SCALAR, kind, a, b)


def tconorm(kind: Kind, a, b) -> NeutroValue:
    """Neutrosophic union of two values."""
    return _combine(_S_SCALAR, kind, a, b)


def _fold(values: Iterable[NeutroValue], kind: str = "standard") -> NeutroValue:
    it = iter(values)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("cannot fold an empty set of values") from None
    for v in it:
        acc = tconorm(kind, acc, v)
    return acc


class NeutroMatrix:
    """Immutable grid of :class:`NeutroValue` entries."""

    __slots__ = ("_cells",)

    def __init__(self, rows: Sequence[Sequence["NeutroValue | float | str"]]):
        cells = []
        for r in rows:
            cells.append(
                tuple(NeutroValue.parse(v) if isinstance(v, str) else NeutroValue.of(v) for v in r)
            )
        if cells and len({len(r) for r in cells}) != 1:
            raise ValueError("rows of a neutrosophic matrix must have equal length")
        self._cells = tuple(cells)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._cells), len(self._cells[0]) if self._cells else 0)

    def __getitem__(self, ij: tuple[int, int]) -> NeutroValue:
        i, j = ij
        return self._cells[i][j]

    def rows(self) -> tuple[tuple[NeutroValue, ...], ...]:
        return self._cells

    def col(self, j: int) -> tuple[NeutroValue, ...]:
        return tuple(r[j] for r in self._cells)

    def transpose(self) -> "NeutroMatrix":
        n, m = self.shape
        return NeutroMatrix([self.col(j) for j in range(m)])

    @property
    def has_indeterminate(self) -> bool:
        return any(v.indeterminate for r in self._cells for v in r)

    def to_array(self) -> np.ndarray:
        """Scalar entries as floats; fails if any entry is indeterminate."""
        if self.has_indeterminate:
            raise DomainError("matrix has indeterminate entries")
        return np.array([[v.value for v in r] for r in self._cells], dtype=float).reshape(self.shape)

    @classmethod
    def from_array(cls, a) -> "NeutroMatrix":
        return cls(np.asarray(a, dtype=float).tolist())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NeutroMatrix) and self._cells == other._cells

    def __hash__(self) -> int:
        return hash(self._cells)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self._cells)
        return f"NeutroMatrix([{body}])"


def _check_conform(P: NeutroMatrix, Q: NeutroMatrix) -> None:
    if P.shape[1] != Q.shape[0]:
        raise ValueError(f"cannot compose {P.shape} with {Q.shape}")


def n_compose(P: NeutroMatrix, Q: NeutroMatrix) -> NeutroMatrix:
    """Max-min composition with indeterminate absorption."""
    _check_conform(P, Q)
    n, m = P.shape
    k = Q.shape[1]
    if m == 0:
        return NeutroMatrix([[0.0] * k for _ in range(n)])
    return NeutroMatrix(
        [
            [_fold(tnorm("standard", P[i, j], Q[j, c]) for j in range(m)) for c in range(k)]
            for i in range(n)
        ]
    )


def relational_join(P: NeutroMatrix, Q: NeutroMatrix) -> list[list[list[NeutroValue]]]:
    """Ternary relation ``R[x][y][z] = min(P[x, y], Q[y, z])``."""
    _check_conform(P, Q)
    n, m = P.shape
    k = Q.shape[1]
    return [[[tnorm("standard", P[x, y], Q[y, z]) for z in range(k)] for y in range(m)] for x in range(n)]


def _nonempty(R: NeutroMatrix) -> None:
    if 0 in R.shape:
        raise ValueError("relation is empty")


def dom(R: NeutroMatrix) -> tuple[NeutroValue, ...]:
    """Largest grade in each row."""
    _nonempty(R)
    return tuple(_fold(r) for r in R.rows())


def ran(R: NeutroMatrix) -> tuple[NeutroValue, ...]:
    """Largest grade in each column."""
    _nonempty(R)
    return tuple(_fold(R.col(j)) for j in range(R.shape[1]))


def height(R: NeutroMatrix) -> NeutroValue:
    _nonempty(R)
    return _fold(v for r in R.rows() for v in r)


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of a relation property check.

    ``holds`` is ``True``, ``False`` or ``None`` (indeterminate). ``witness``
    names an offending position ``(i, j)`` when the property fails or is
    indeterminate.
    """

    holds: bool | None
    witness: tuple[int, int] | None = None

    @property
    def status(self) -> str:
        return {True: "true", False: "false", None: "indeterminate"}[self.holds]


def _square(R: NeutroMatrix) -> int:
    n, m = R.shape
    if n != m:
        raise ValueError(f"relation must be square, got {R.shape}")
    return n


def is_reflexive(R: NeutroMatrix, epsilon: float | None = None) -> PropertyResult:
    """Every diagonal entry is the scalar 1 (or at least ``epsilon`` if given)."""
    n = _square(R)
    floor = 1.0 if epsilon is None else float(epsilon)
    if epsilon is not None and not 0.0 < floor < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    for i in range(n):
        v = R[i, i]
        if v.indeterminate or v.value < floor:
            return PropertyResult(False, (i, i))
    return PropertyResult(True)


def is_symmetric(R: NeutroMatrix) -> PropertyResult:
    n = _square(R)
    for i in range(n):
        for j in range(i + 1, n):
            if R[i, j] != R[j, i]:
                return PropertyResult(False, (i, j))
    return PropertyResult(True)


def is_transitive(R: NeutroMatrix) -> PropertyResult:
    """``R >= R o R`` entrywise; any comparison touching ``I`` is indeterminate."""
    n = _square(R)
    RR = n_compose(R, R)
    unknown = None
    for i in range(n):
        for j in range(n):
            a, b = R[i, j], RR[i, j]
            if a.indeterminate or b.indeterminate:
                unknown = unknown or (i, j)
            elif a.value < b.value:
                return PropertyResult(False, (i, j))
    return PropertyResult(None, unknown) if unknown else PropertyResult(True)


def _union(P: NeutroMatrix, Q: NeutroMatrix) -> NeutroMatrix:
    n, m = P.shape
    return NeutroMatrix([[tconorm("standard", P[i, j], Q[i, j]) for j in range(m)] for i in range(n)])


def transitive_closure(R: NeutroMatrix) -> NeutroMatrix:
    """Repeat ``R <- R u (R o R)`` until nothing changes (at most ``n`` rounds)."""
    n = _square(R)
    for _ in range(max(n, 1)):
        nxt = _union(R, n_compose(R, R))
        if nxt == R:
            return R
        R = nxt
    return R


def fn_activation(a: "NeutroValue | float", indeterminate: bool = False) -> NeutroValue:
    """Clamp a real into [0, 1]; map ``aI`` to ``aI``, ``I`` or 0.

    A raw indeterminate coefficient is passed as ``(a, indeterminate=True)``:
    ``a > 1`` saturates to ``I``, ``a <= 0`` gives the scalar 0.
    """
    if isinstance(a, NeutroValue):
        return a
    a = float(a)
    if indeterminate:
        if a <= 0.0:
            return NeutroValue(0.0)
        return I if a > 1.0 else NeutroValue.ind(a)
    return NeutroValue(min(max(a, 0.0), 1.0))


@dataclass(frozen=True, eq=False)
class NreResult:
    weights: NeutroMatrix
    outputs: tuple[NeutroValue, ...]
    residual: float
    scalar_rows: tuple[int, ...]
    indeterminate_rows: tuple[int, ...]
    network: FnnResult

    @property
    def converged(self) -> bool:
        return self.network.converged


def _row_output(row: Sequence[NeutroValue], x: np.ndarray) -> NeutroValue:
    terms = []
    for w, xj in zip(row, x):
        terms.append(fn_activation(w.value * xj, indeterminate=w.indeterminate))
    return _fold(terms) if terms else NeutroValue(0.0)


def nre_solve(
    P: NeutroMatrix,
    R: Sequence["NeutroValue | float | str"],
    x,
    config: FnnConfig | None = None,
) -> NreResult:
    """Fit ``y_i = f_N(max_j w_ij x_j)`` to ``R`` starting from ``P``.

    Indeterminate weights are kept as they are. A row whose target is
    indeterminate, or whose output is forced indeterminate by such a weight,
    is reported in ``indeterminate_rows``; the remaining rows are fitted as an
    ordinary relational equation and alone make up the residual.
    """
    n, m = P.shape
    targets = [NeutroValue.parse(r) if isinstance(r, str) else NeutroValue.of(r) for r in R]
    if len(targets) != n:
        raise ValueError(f"need {n} targets, got {len(targets)}")
    x = np.asarray(x, dtype=float).ravel()
    if x.size != m or (x < 0).any():
        raise ValueError(f"need {m} non-negative inputs")
    active_ind = [any(P[i, j].indeterminate and x[j] > 0 for j in range(m)) for i in range(n)]
    ind_rows = tuple(i for i in range(n) if targets[i].indeterminate or active_ind[i])
    scalar_rows = tuple(i for i in range(n) if i not in ind_rows)
    if not scalar_rows:
        raise DomainError("every row is indeterminate; nothing left to fit")

    Ps = np.array([[0.0 if P[i, j].indeterminate else P[i, j].value for j in range(m)] for i in scalar_rows])
    mask = np.array([[P[i, j].indeterminate or P[i, j].value == 0.0 for j in range(m)] for i in scalar_rows])
    Rs = np.array([targets[i].value for i in scalar_rows])
    net = fnn_solve(FreSystem(Ps, Rs, zero_mask=mask), x, Rs, config)

    fitted = {i: net.weights[k] for k, i in enumerate(scalar_rows)}
    rows = []
    for i in range(n):
        if i in fitted:
            rows.append([NeutroValue(float(min(max(w, 0.0), 1.0))) for w in fitted[i]])
        else:
            rows.append(list(P.rows()[i]))
    W = NeutroMatrix(rows)
    outputs = tuple(_row_output(W.rows()[i], x) for i in range(n))
    return NreResult(W, outputs, net.residual, scalar_rows, ind_rows, net)


def sagittal_edges(
    R: NeutroMatrix,
    row_labels: Sequence[str] | None = None,
    col_labels: Sequence[str] | None = None,
) -> list[str]:
    """Edge list ``"x → y : grade"`` for every nonzero or indeterminate entry."""
    n, m = R.shape
    rl = list(row_labels) if row_labels else [chr(ord("a") + i) if i < 26 else f"x{i}" for i in range(n)]
    cl = list(col_labels) if col_labels else [chr(ord("a") + j) if j < 26 else f"y{j}" for j in range(m)]
    if len(rl) != n or len(cl) != m:
        raise ValueError("one label per row and per column")
    return [
        f"{rl[i]} → {cl[j]} : {R[i, j]}"
        for i in range(n)
        for j in range(m)
        if R[i, j].indeterminate or R[i, j].value != 0.0
    ]


SAMPLE_RELATION = NeutroMatrix(
    [
        [0, I, 0.3, 0.2, 0],
        [1, 0, I, 0, 0.3],
        [I, 0.2, 0, 0, 0],
        [0, 0.6, 0, 0.3, I],
        [0, 0, 0, I, 0.2],
    ]
)
