"""Two-input Mamdani controllers for cement kiln dust (CKD).

Two controllers are bundled: CKD percentage from alkali ratio and kiln load,
and net-CKD percentage after ESP reprocessing from temperature and gas volume.
Both use min for AND, min clipping, max aggregation and mean of maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConfigurationError, EmptyOutputError
from .membership import (
    Aggregate,
    ClippedTerm,
    LinguisticVariable,
    MomResult,
    aggregate,
    defuzz_mom,
    fuzzify,
)

__all__ = [
    "RuleTable",
    "MamdaniController",
    "FiredRule",
    "Evaluation",
    "VolatileTable",
    "alkali_ratio",
    "fire_rules",
    "evaluate",
    "infer",
    "ckd_controller",
    "reprocessing_controller",
    "CKD_RULES",
    "CKD_RULES_LISTING",
    "REPROCESS_RULES",
]


@dataclass(frozen=True)
class RuleTable:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        object.__setattr__(self, "cells", tuple(tuple(r) for r in self.cells))
        if len(self.cells) != len(self.row_labels):
            raise ConfigurationError("rule table: one row of cells per row label")
        for row in self.cells:
            if len(row) != len(self.col_labels):
                raise ConfigurationError("rule table: every row needs one cell per column")

    def consequent(self, row: str, col: str) -> str:
        return self.cells[self.row_labels.index(row)][self.col_labels.index(col)]

    @classmethod
    def from_rows(cls, rows: Mapping[str, Mapping[str, str]]) -> "RuleTable":
        row_labels = tuple(rows)
        col_labels = tuple(next(iter(rows.values())))
        cells = tuple(tuple(rows[r][c] for c in col_labels) for r in row_labels)
        return cls(row_labels, col_labels, cells)


@dataclass(frozen=True)
class MamdaniController:
    input_x: LinguisticVariable
    input_y: LinguisticVariable
    output: LinguisticVariable
    rules: RuleTable

    def __post_init__(self) -> None:
        if self.rules.row_labels != self.input_x.labels:
            raise ConfigurationError(
                f"rule rows {self.rules.row_labels} do not match the terms of "
                f"{self.input_x.name} {self.input_x.labels}"
            )
        if self.rules.col_labels != self.input_y.labels:
            raise ConfigurationError(
                f"rule columns {self.rules.col_labels} do not match the terms of "
                f"{self.input_y.name} {self.input_y.labels}"
            )
        known = set(self.output.labels)
        for row in self.rules.cells:
            for label in row:
                if label not in known:
                    raise ConfigurationError(
                        f"rule consequent {label!r} is not a term of {self.output.name}"
                    )


@dataclass(frozen=True)
class FiredRule:
    x_label: str
    y_label: str
    out_label: str
    strength: float


@dataclass(frozen=True)
class Evaluation:
    """Everything ``infer`` computes on the way to the crisp output."""

    x: float
    y: float
    grades_x: dict
    grades_y: dict
    fired: tuple[FiredRule, ...]
    aggregate: Aggregate
    result: MomResult


def fire_rules(ctrl: MamdaniController, x: float, y: float) -> list[FiredRule]:
    """Rules whose antecedents both have positive grade, in table order."""
    gx = fuzzify(ctrl.input_x, x)
    gy = fuzzify(ctrl.input_y, y)
    fired = []
    for xl in ctrl.rules.row_labels:
        for yl in ctrl.rules.col_labels:
            if gx[xl] > 0.0 and gy[yl] > 0.0:
                fired.append(FiredRule(xl, yl, ctrl.rules.consequent(xl, yl), min(gx[xl], gy[yl])))
    return fired


def infer(ctrl: MamdaniController, x: float, y: float) -> Evaluation:
    gx = fuzzify(ctrl.input_x, x)
    gy = fuzzify(ctrl.input_y, y)
    fired = fire_rules(ctrl, x, y)
    if not fired:
        raise EmptyOutputError(
            f"no rule fires for {ctrl.input_x.name}={x}, {ctrl.input_y.name}={y}"
        )
    clipped = [ClippedTerm(r.strength, ctrl.output.term(r.out_label), r.out_label) for r in fired]
    agg = aggregate(clipped, universe=ctrl.output.universe)
    return Evaluation(x, y, gx, gy, tuple(fired), agg, defuzz_mom(agg))


def evaluate(ctrl: MamdaniController, x: float, y: float) -> MomResult:
    return infer(ctrl, x, y).result


@dataclass(frozen=True)
class VolatileTable:
    """Molecular weights (g/mol) and which species form the ratio."""

    weights: Mapping[str, float]
    numerator: str
    denominators: tuple[str, ...]

    def __post_init__(self) -> None:
        for name, w in self.weights.items():
            if not w > 0:
                raise ValueError(f"molecular weight of {name} must be positive, got {w}")
        if not self.denominators:
            raise ValueError("at least one denominator species is required")
        if self.numerator in self.denominators:
            raise ValueError("numerator species cannot also be a denominator")
        missing = {self.numerator, *self.denominators} - set(self.weights)
        if missing:
            raise ValueError(f"no molecular weight for {sorted(missing)}")


def alkali_ratio(tbl: VolatileTable) -> float:
    """Sulphur/alkali ratio, e.g. SO3 / (K2O + Na2O)."""
    denom = sum(tbl.weights[s] for s in tbl.denominators)
    if denom == 0:
        raise ZeroDivisionError("denominator weights sum to zero")
    return tbl.weights[tbl.numerator] / denom


# Rows are the first input's terms, columns the second input's terms.
CKD_RULES = RuleTable(
    ("L", "M", "H"),
    ("FS", "SS", "TS"),
    (("VL", "M", "H"), ("L", "M", "H"), ("M", "H", "VH")),
)

# Nine-rule listing that accompanies the (1, 15) worked case; differs from the
# table in the H row.
CKD_RULES_LISTING = RuleTable(
    ("L", "M", "H"),
    ("FS", "SS", "TS"),
    (("VL", "M", "H"), ("L", "M", "H"), ("L", "M", "H")),
)

REPROCESS_RULES = RuleTable(
    ("L", "M", "H"),
    ("FS", "SS", "TS"),
    (("VL", "M", "H"), ("L", "M", "H"), ("M", "H", "VH")),
)


def _ramps(points: Sequence[float], labels: Sequence[str]) -> dict[str, tuple[float, float, float]]:
    # evenly overlapping triangles peaking at ``points``, shoulders at both ends
    terms = {}
    n = len(points)
    for i, (label, p) in enumerate(zip(labels, points)):
        left = points[i - 1] if i > 0 else p
        right = points[i + 1] if i < n - 1 else p
        terms[label] = (left, p, right)
    return terms


def ckd_controller(rules: RuleTable = CKD_RULES) -> MamdaniController:
    """Alkali ratio x kiln load (t) -> CKD percentage."""
    alkali = LinguisticVariable.from_mapping(
        "alkali ratio", (0.5, 1.5), _ramps((0.5, 1.0, 1.5), ("L", "M", "H"))
    )
    load = LinguisticVariable.from_mapping(
        "kiln load", (5, 25), _ramps((5, 15, 25), ("FS", "SS", "TS")), units="t"
    )
    ckd = LinguisticVariable.from_mapping(
        "CKD", (0, 40), _ramps((0, 10, 20, 30, 40), ("VL", "L", "M", "H", "VH")), units="%"
    )
    return MamdaniController(alkali, load, ckd, rules)


def reprocessing_controller(rules: RuleTable = REPROCESS_RULES) -> MamdaniController:
    """ESP temperature (degC) x gas volume (m3/min) -> net CKD percentage."""
    temp = LinguisticVariable.from_mapping(
        "temperature", (350, 450), _ramps((350, 400, 450), ("L", "M", "H")), units="degC"
    )
    gas = LinguisticVariable.from_mapping(
        "gas volume",
        (11865, 15174),
        _ramps((11865, 13020, 15174), ("FS", "SS", "TS")),
        units="m3/min",
    )
    net = LinguisticVariable.from_mapping(
        "net CKD", (0, 20), _ramps((0, 5, 10, 15, 20), ("VL", "L", "M", "H", "VH")), units="%"
    )
    return MamdaniController(temp, gas, net, rules)
