"""Plain-text matrix files.

The format is a header line ``rows cols`` followed by one whitespace-separated
row per line. Entries are decimals, ``I`` or ``<coef>I``; blank lines and
``#`` comments are ignored. Matrices without indeterminate entries load as
float arrays, the rest as :class:`~fuzzyproc.neutro.NeutroMatrix`.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import ScenarioError
from .neutro import NeutroMatrix, NeutroValue

__all__ = ["parse_matrix", "format_matrix", "read_matrix", "write_matrix", "parse_rows", "matrix_from_csv"]


def _format_entry(v) -> str:
    if isinstance(v, NeutroValue):
        if v.indeterminate:
            return "I" if v.value == 1.0 else f"{v.value:.12g}I"
        v = v.value
    return f"{float(v):.12g}"


def parse_rows(lines, where: str = "matrix") -> np.ndarray | NeutroMatrix:
    """Rows of tokens (strings) into a float array or a neutrosophic matrix."""
    rows = [ln.split() if isinstance(ln, str) else [str(t) for t in ln] for ln in lines]
    if rows and len({len(r) for r in rows}) != 1:
        raise ScenarioError("rows have different lengths", where)
    try:
        vals = [[NeutroValue.parse(t) for t in r] for r in rows]
    except ValueError as exc:
        raise ScenarioError(str(exc), where) from None
    if any(v.indeterminate for r in vals for v in r):
        return NeutroMatrix(vals)
    return np.array([[v.value for v in r] for r in vals], dtype=float).reshape(len(rows), -1)


def parse_matrix(text: str, where: str = "matrix") -> np.ndarray | NeutroMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ScenarioError("empty matrix file", where)
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise ScenarioError(f"header must be 'rows cols', got {lines[0]!r}", where) from None
    body = lines[1:]
    if len(body) != n:
        raise ScenarioError(f"header promises {n} rows, found {len(body)}", where)
    out = parse_rows(body, where)
    shape = out.shape
    if n and shape != (n, m):
        raise ScenarioError(f"header promises {n}x{m}, rows give {shape[0]}x{shape[1]}", where)
    return out


def format_matrix(M) -> str:
    if isinstance(M, NeutroMatrix):
        rows = M.rows()
        n, m = M.shape
    else:
        arr = np.atleast_2d(np.asarray(M, dtype=float))
        rows = arr.tolist()
        n, m = arr.shape
    lines = [f"{n} {m}"] + [" ".join(_format_entry(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def read_matrix(path) -> np.ndarray | NeutroMatrix:
    p = Path(path)
    return parse_matrix(p.read_text(encoding="utf-8"), str(p))


def write_matrix(M, path) -> None:
    Path(path).write_text(format_matrix(M), encoding="utf-8")


def matrix_from_csv(path, skip_cols: int = 1) -> np.ndarray | NeutroMatrix:
    """Load a matrix table written by the report CSV writer (header row, label column)."""
    p = Path(path)
    with p.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ScenarioError("empty CSV", str(p))
    return parse_rows([r[skip_cols:] for r in rows[1:]], str(p))
