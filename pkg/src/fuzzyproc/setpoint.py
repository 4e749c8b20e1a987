"""Set-point selection by per-rule throttle averaging and center max-min.

For every candidate temperature set point two membership grades per
applicable rule are averaged into a rule throttle, the rule throttles are
combined with the locations of their throttle subsets, and the candidate with
the largest combined throttle wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ConfigurationError
from .membership import check_grade

__all__ = [
    "THROTTLE_LABELS",
    "ThrottleSubset",
    "RuleGrades",
    "SetpointCandidate",
    "SelectionResult",
    "rule_throttle",
    "centroid_combine",
    "candidate_throttle",
    "select_setpoint",
]

THROTTLE_LABELS = ("N3", "N2", "Z", "P2", "P3")


@dataclass(frozen=True)
class ThrottleSubset:
    label: str
    location: float

    def __post_init__(self) -> None:
        if self.label not in THROTTLE_LABELS:
            raise ConfigurationError(f"unknown throttle subset {self.label!r}")
        check_grade(self.location, f"location of {self.label}")


@dataclass(frozen=True)
class RuleGrades:
    distillation: float
    grade_a: float
    grade_b: float
    subset: str

    def __post_init__(self) -> None:
        check_grade(self.grade_a, "grade_a")
        check_grade(self.grade_b, "grade_b")


@dataclass(frozen=True)
class SetpointCandidate:
    """One candidate set point.

    ``locations`` and ``normalize`` override the quantization for this
    candidate only; ``throttle`` pins the combined value outright when the
    grades behind it are not available.
    """

    setpoint: float
    rules: tuple[RuleGrades, ...] = ()
    locations: Mapping[str, float] = field(default_factory=dict)
    normalize: bool | None = None
    throttle: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.throttle is None and not self.rules:
            raise ConfigurationError(
                f"candidate {self.setpoint}: needs rule grades or a pinned throttle"
            )
        if self.throttle is not None:
            check_grade(self.throttle, "pinned throttle")


@dataclass(frozen=True)
class SelectionResult:
    throttles: tuple[tuple[float, float], ...]
    chosen: float


def rule_throttle(a: float, b: float) -> float:
    """Mean of the two grades behind one rule."""
    return (a + b) / 2.0


def centroid_combine(pairs: Sequence[tuple[float, float]], normalize: bool = True) -> float:
    """Sum of grade*location, divided by the grade sum when ``normalize``."""
    if not pairs:
        raise ValueError("centroid_combine needs at least one (grade, location) pair")
    num = sum(g * loc for g, loc in pairs)
    if not normalize:
        return num
    den = sum(g for g, _ in pairs)
    if den <= 0.0:
        raise ZeroDivisionError("normalized combination with zero total grade")
    return num / den


def _quantization_map(quantization: Sequence[ThrottleSubset] | Mapping[str, float]) -> dict[str, float]:
    if isinstance(quantization, Mapping):
        return {k: float(v) for k, v in quantization.items()}
    out: dict[str, float] = {}
    for s in quantization:
        if s.label in out:
            raise ConfigurationError(f"duplicate throttle subset {s.label!r}")
        out[s.label] = s.location
    return out


def candidate_throttle(
    cand: SetpointCandidate,
    quantization: Sequence[ThrottleSubset] | Mapping[str, float],
    normalize: bool = True,
) -> float:
    if cand.throttle is not None:
        return cand.throttle
    locs = _quantization_map(quantization)
    locs.update(cand.locations)
    pairs = []
    for r in cand.rules:
        if r.subset not in locs:
            raise ConfigurationError(
                f"candidate {cand.setpoint}: throttle subset {r.subset!r} has no location"
            )
        pairs.append((rule_throttle(r.grade_a, r.grade_b), locs[r.subset]))
    norm = normalize if cand.normalize is None else cand.normalize
    return centroid_combine(pairs, normalize=norm)


def select_setpoint(
    candidates: Sequence[SetpointCandidate],
    quantization: Sequence[ThrottleSubset] | Mapping[str, float],
    normalize: bool = True,
) -> SelectionResult:
    """Pick the candidate with the largest throttle; ties go to the lower set point."""
    if not candidates:
        raise ValueError("no candidates")
    throttles = tuple(
        (c.setpoint, candidate_throttle(c, quantization, normalize)) for c in candidates
    )
    best = min(throttles, key=lambda st: (-st[1], st[0]))
    return SelectionResult(throttles=throttles, chosen=best[0])
