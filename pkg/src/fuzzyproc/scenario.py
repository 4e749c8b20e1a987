"""Scenario files: TOML documents describing one worked case each.

Every file carries ``schema_version``, a ``kind`` and a kind-specific payload,
plus an optional list of ``checks`` comparing named outputs with expected
values. Unknown keys are rejected so that typos cannot silently fall back to
defaults.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ScenarioError

__all__ = ["SCHEMA_VERSION", "KINDS", "Check", "Scenario", "load_scenario", "parse_scenario", "bundled_scenarios"]

SCHEMA_VERSION = 1
KINDS = ("ckd", "reprocess", "setpoint", "flowsheet", "pipe", "extraction", "rawmix", "flp", "nre")

_num = {"type": "number"}
_grade = {"type": "number", "minimum": 0, "maximum": 1}
_pos = {"type": "number", "exclusiveMinimum": 0}
_nonneg = {"type": "number", "minimum": 0}
_label = {"type": "string", "minLength": 1}
_labels = {"type": "array", "items": _label, "minItems": 1}
_seed = {"type": "integer", "minimum": 0}


def _obj(props: dict, required=(), **extra) -> dict:
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False, **extra}


def _vec(item=_num, **kw) -> dict:
    return {"type": "array", "items": item, **kw}


_check = _obj(
    {
        "key": _label,
        "expected": {"type": ["number", "string"]},
        "tolerance": _nonneg,
        "expect_erratum": {"type": "boolean"},
        "note": {"type": "string"},
    },
    required=("key", "expected"),
)

_variable = _obj(
    {
        "name": _label,
        "units": {"type": "string"},
        "universe": _vec(minItems=2, maxItems=2),
        "terms": _vec(
            _obj({"label": _label, "mf": _vec(minItems=3, maxItems=3)}, required=("label", "mf")),
            minItems=1,
        ),
    },
    required=("name", "universe", "terms"),
)

_controller = _obj(
    {
        "x": _variable,
        "y": _variable,
        "output": _variable,
        "rules": _obj(
            {"rows": _labels, "cols": _labels, "cells": _vec(_labels, minItems=1)},
            required=("rows", "cols", "cells"),
        ),
        "cases": _vec(_obj({"x": _num, "y": _num}, required=("x", "y")), minItems=1),
        "volatile": _obj(
            {
                "weights": {"type": "object", "additionalProperties": _pos, "minProperties": 2},
                "numerator": _label,
                "denominators": _labels,
            },
            required=("weights", "numerator", "denominators"),
        ),
    },
    required=("x", "y", "output", "rules", "cases"),
)

_rule_grades = _obj(
    {"distillation": _num, "a": _grade, "b": _grade, "subset": {"enum": ["N3", "N2", "Z", "P2", "P3"]}},
    required=("distillation", "a", "b", "subset"),
)
_locations = {
    "type": "object",
    "propertyNames": {"enum": ["N3", "N2", "Z", "P2", "P3"]},
    "additionalProperties": _grade,
}

_setpoint = _obj(
    {
        "product": {"type": "string"},
        "units": {"type": "string"},
        "normalize": {"type": "boolean"},
        "quantization": _locations,
        "candidates": _vec(
            _obj(
                {
                    "setpoint": _num,
                    "rules": _vec(_rule_grades),
                    "locations": _locations,
                    "normalize": {"type": "boolean"},
                    "throttle": _grade,
                },
                required=("setpoint",),
            ),
            minItems=1,
        ),
    },
    required=("quantization", "candidates"),
)

_matrix_rows = {"type": "array", "items": {"type": "string"}, "minItems": 1}

_flowsheet = _obj(
    {
        "known": _obj({"F1": _nonneg, "F5": _nonneg, "F6": _nonneg, "F9": _nonneg}, required=("F1", "F5", "F6", "F9")),
        "form": {"enum": ["matrix", "nodes"]},
        "network": _obj(
            {
                "weights": _vec(_vec(_grade, minItems=5, maxItems=5), minItems=5, maxItems=5),
                "mask": _vec(_vec({"enum": [0, 1]}, minItems=5, maxItems=5), minItems=5, maxItems=5),
                "seed": _seed,
                "tolerance": _pos,
                "max_iters": {"type": "integer", "minimum": 1},
                "restarts": {"type": "integer", "minimum": 1},
            },
            required=("weights",),
        ),
    },
    required=("known",),
)

_pipe = _obj(
    {
        "cases": _vec(
            _obj(
                {
                    "name": _label,
                    "T": _pos, "T1": _pos, "T2": _pos,
                    "D": _pos, "D1": _pos, "D2": _pos,
                    "mu": _pos, "deltaP": _num,
                },
                required=("name", "T", "T1", "T2", "D", "D1", "D2", "mu", "deltaP"),
            ),
            minItems=1,
        )
    },
    required=("cases",),
)

_extraction = _obj(
    {
        "cases": _vec(
            _obj(
                {"name": _label, "Es": _pos, "Rs": _pos, "K": _pos, "X0": _num, "Y4": _num},
                required=("name", "Es", "Rs", "K", "X0", "Y4"),
            ),
            minItems=1,
        )
    },
    required=("cases",),
)

_oxides = _obj(
    {"CaO": _nonneg, "SiO2": _nonneg, "Al2O3": _nonneg, "Fe2O3": _nonneg,
     "MgO": _nonneg, "K2O": _nonneg, "Na2O": _nonneg, "SO3": _nonneg},
    required=("CaO", "SiO2", "Al2O3", "Fe2O3"),
)
_moduli = _obj({"lsf": _pos, "sm": _pos, "am": _pos}, required=("lsf", "sm", "am"))

_rawmix = _obj(
    {
        "unit": {"enum": ["percent", "fraction"]},
        "feeders": _vec(
            _obj({"name": _label, "oxides": _oxides, "w": _nonneg, "lower": _num, "upper": _num},
                 required=("name", "oxides", "w", "lower", "upper")),
            minItems=2,
        ),
        "setpoint": _moduli,
        "measured": _moduli,
        "use_lsf": {"type": "boolean"},
        "refine": _obj(
            {"seed": _seed, "tolerance": _pos, "max_iters": {"type": "integer", "minimum": 1}},
        ),
    },
    required=("unit", "feeders", "setpoint"),
)

_flp = _obj(
    {
        "units": {"type": "string"},
        "variables": _labels,
        "objective": _vec(minItems=1),
        "constraints": _vec(
            _obj(
                {
                    "name": _label,
                    "a": _vec(minItems=1),
                    "b": _num,
                    "p": _nonneg,
                    "equality": {"type": "boolean"},
                    "enforce": {"type": "boolean"},
                },
                required=("name", "a", "b"),
            ),
            minItems=1,
        ),
        "sweeps": _vec(
            _obj(
                {
                    "tolerances": {"type": "object", "additionalProperties": _nonneg},
                    "alphas": _vec(_grade, minItems=1),
                },
                required=("alphas",),
            ),
            minItems=1,
        ),
    },
    required=("objective", "constraints", "sweeps"),
)

_nre = _obj(
    {
        "labels": _labels,
        "relation": _matrix_rows,
        "targets": {"type": "array", "items": {"type": ["number", "string"]}, "minItems": 1},
        "inputs": _vec(_nonneg, minItems=1),
        "seed": _seed,
        "tolerance": _pos,
        "max_iters": {"type": "integer", "minimum": 1},
        "restarts": {"type": "integer", "minimum": 1},
    },
    required=("relation",),
)

PAYLOADS = {
    "ckd": _controller,
    "reprocess": _controller,
    "setpoint": _setpoint,
    "flowsheet": _flowsheet,
    "pipe": _pipe,
    "extraction": _extraction,
    "rawmix": _rawmix,
    "flp": _flp,
    "nre": _nre,
}

_envelope = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"enum": list(KINDS)},
        "id": _label,
        "title": {"type": "string"},
        "source": {"type": "string"},
        "checks": _vec(_check),
        "payload": {"type": "object"},
    },
    "required": ["schema_version", "kind", "payload"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Check:
    key: str
    expected: float | str
    tolerance: float = 0.0
    expect_erratum: bool = False
    note: str = ""


@dataclass(frozen=True)
class Scenario:
    id: str
    kind: str
    payload: dict[str, Any]
    title: str = ""
    source: str = ""
    checks: tuple[Check, ...] = ()
    path: str | None = field(default=None, compare=False)


def _path_of(err: jsonschema.ValidationError) -> str:
    parts = []
    for p in err.absolute_path:
        parts.append(f"[{p}]" if isinstance(p, int) else (f".{p}" if parts else str(p)))
    return "".join(parts) or "<root>"


def _validate(doc: dict, schema: dict, prefix: str, where: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        err = errors[0]
        path = _path_of(err)
        loc = f"{prefix}.{path}" if prefix and path != "<root>" else (prefix or path)
        raise ScenarioError(f"{loc}: {err.message}", where)


def parse_scenario(text: str, where: str = "<string>", default_id: str = "scenario") -> Scenario:
    """Parse and validate scenario text; raises :class:`ScenarioError`."""
    if not text.strip():
        raise ScenarioError("empty scenario file", where)
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"parse error: {exc}", where) from None
    _validate(doc, _envelope, "", where)
    kind = doc["kind"]
    _validate(doc["payload"], PAYLOADS[kind], "payload", where)
    checks = tuple(
        Check(**{**c, "expected": c["expected"] if isinstance(c["expected"], str) else float(c["expected"])})
        for c in doc.get("checks", ())
    )
    return Scenario(
        id=doc.get("id", default_id),
        kind=kind,
        payload=doc["payload"],
        title=doc.get("title", ""),
        source=doc.get("source", ""),
        checks=checks,
        path=where,
    )


def load_scenario(path) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read file: {exc.strerror or exc}", str(p)) from None
    return parse_scenario(text, str(p), default_id=p.stem)


def bundled_scenarios() -> list[Path]:
    """Paths of the scenarios shipped with the package, sorted by name."""
    root = resources.files("fuzzyproc") / "scenarios"
    return sorted((Path(str(p)) for p in root.iterdir() if p.name.endswith(".scenario")), key=lambda p: p.name)
