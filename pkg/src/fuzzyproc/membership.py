"""Triangular membership functions, linguistic variables and Mamdani aggregation.

Everything here is piecewise linear, so the mean-of-maximum defuzzifier works
from breakpoints instead of sampling the output universe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, EmptyOutputError

__all__ = [
    "TriangularMF",
    "LinguisticVariable",
    "ClippedTerm",
    "Aggregate",
    "MomResult",
    "check_grade",
    "mf_grade",
    "fuzzify",
    "aggregate",
    "defuzz_mom",
]

# strengths closer than this are treated as the same level
_LEVEL_TOL = 1e-12


def check_grade(value: float, what: str = "grade") -> float:
    """Return ``value`` as float, rejecting anything outside [0, 1]."""
    value = float(value)
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise DomainError(f"{what} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class TriangularMF:
    """Triangle ``left <= peak <= right``.

    Shoulders are allowed: ``left == peak`` gives a descending ramp and
    ``peak == right`` an ascending one.
    """

    left: float
    peak: float
    right: float

    def __post_init__(self) -> None:
        for name in ("left", "peak", "right"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"triangle {name} must be finite, got {v!r}")
        if not self.left <= self.peak <= self.right:
            raise ValueError(
                f"triangle needs left <= peak <= right, got "
                f"({self.left}, {self.peak}, {self.right})"
            )
        if self.left == self.right:
            raise ValueError("degenerate triangle: left == peak == right")

    def __call__(self, x: float) -> float:
        return mf_grade(self, x)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted({self.left, self.peak, self.right}))

    def level_interval(self, level: float) -> tuple[float, float]:
        """Closed interval where the grade is at least ``level`` (0 < level <= 1)."""
        if not 0.0 < level <= 1.0:
            raise ValueError(f"level must lie in (0, 1], got {level!r}")
        lo = self.left + level * (self.peak - self.left)
        hi = self.right - level * (self.right - self.peak)
        return lo, hi


def mf_grade(mf: TriangularMF, x: float) -> float:
    """Grade of ``x`` in ``mf``; zero outside the support, one at the peak."""
    x = float(x)
    if x < mf.left or x > mf.right:
        return 0.0
    if x == mf.peak:
        return 1.0
    if x < mf.peak:
        return (x - mf.left) / (mf.peak - mf.left)
    return (mf.right - x) / (mf.right - mf.peak)


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    universe: tuple[float, float]
    terms: tuple[tuple[str, TriangularMF], ...]
    units: str = ""

    def __post_init__(self) -> None:
        lo, hi = (float(v) for v in self.universe)
        if not lo < hi:
            raise ValueError(f"{self.name}: universe must satisfy lo < hi")
        object.__setattr__(self, "universe", (lo, hi))
        terms = tuple((str(label), mf) for label, mf in self.terms)
        labels = [label for label, _ in terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"{self.name}: duplicate term labels {labels}")
        if not terms:
            raise ValueError(f"{self.name}: at least one term is required")
        for label, mf in terms:
            if mf.left < lo or mf.right > hi:
                raise ValueError(
                    f"{self.name}: term {label!r} support [{mf.left}, {mf.right}] "
                    f"leaves the universe [{lo}, {hi}]"
                )
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_mapping(
        cls,
        name: str,
        universe: Sequence[float],
        terms: Mapping[str, Sequence[float]],
        units: str = "",
    ) -> "LinguisticVariable":
        """Build from ``{label: (left, peak, right)}`` keeping insertion order."""
        return cls(
            name=name,
            universe=(universe[0], universe[1]),
            terms=tuple((label, TriangularMF(*abc)) for label, abc in terms.items()),
            units=units,
        )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def term(self, label: str) -> TriangularMF:
        for lab, mf in self.terms:
            if lab == label:
                return mf
        raise KeyError(f"{self.name} has no term {label!r}")

    def fuzzify(self, x: float) -> dict[str, float]:
        return fuzzify(self, x)


def fuzzify(var: LinguisticVariable, x: float) -> dict[str, float]:
    """Grade of every term of ``var`` at ``x``."""
    lo, hi = var.universe
    if not lo <= x <= hi:
        raise DomainError(f"{var.name}: input {x} is outside the universe [{lo}, {hi}]")
    return {label: mf_grade(mf, x) for label, mf in var.terms}


@dataclass(frozen=True)
class ClippedTerm:
    """``min(strength, mf(x))`` pointwise."""

    strength: float
    mf: TriangularMF
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "strength", check_grade(self.strength, "strength"))

    def __call__(self, x: float) -> float:
        return min(self.strength, mf_grade(self.mf, x))


@dataclass(frozen=True)
class Aggregate:
    """Pointwise maximum of clipped terms over one output universe."""

    terms: tuple[ClippedTerm, ...]
    universe: tuple[float, float] | None = None

    def __call__(self, x: float) -> float:
        return max(t(x) for t in self.terms)

    @property
    def height(self) -> float:
        return max(t.strength for t in self.terms)

    def plateaus(self) -> list[tuple[float, float]]:
        """Disjoint closed intervals where the aggregate equals its height.

        Only terms fired at the top level can reach it, and each of those does
        so on its level interval, so the maximal set is the union of those
        intervals (clipped to the universe when one is set).
        """
        h = self.height
        if h <= 0.0:
            return []
        pieces = sorted(
            t.mf.level_interval(h) for t in self.terms if abs(t.strength - h) <= _LEVEL_TOL
        )
        if self.universe is not None:
            ulo, uhi = self.universe
            pieces = [(max(a, ulo), min(b, uhi)) for a, b in pieces if b >= ulo and a <= uhi]
        merged: list[tuple[float, float]] = []
        for a, b in pieces:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        return merged

    def breakpoints(self) -> list[float]:
        pts: set[float] = set()
        for t in self.terms:
            pts.update(t.mf.breakpoints)
            if t.strength > 0:
                pts.update(t.mf.level_interval(t.strength))
        if self.universe is not None:
            pts.update(self.universe)
        return sorted(pts)


def aggregate(
    clipped: Iterable[ClippedTerm], universe: tuple[float, float] | None = None
) -> Aggregate:
    terms = tuple(clipped)
    if not terms:
        raise EmptyOutputError("no fired rules to aggregate")
    return Aggregate(terms=terms, universe=universe)


@dataclass(frozen=True)
class MomResult:
    height: float
    interval: tuple[float, float]
    midpoint: float
    plateaus: tuple[tuple[float, float], ...] = ()


def defuzz_mom(agg: Aggregate) -> MomResult:
    """Mean of maximum: midpoint of the hull of the maximal set."""
    h = agg.height
    if h <= 0.0:
        raise EmptyOutputError("aggregate has zero height; nothing to defuzzify")
    plateaus = agg.plateaus()
    lo, hi = plateaus[0][0], plateaus[-1][1]
    return MomResult(height=h, interval=(lo, hi), midpoint=(lo + hi) / 2.0, plateaus=tuple(plateaus))
