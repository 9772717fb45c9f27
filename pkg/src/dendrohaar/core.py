"""Data matrices, weights, CSV ingestion and range normalization."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    DuplicateLabel,
    InputError,
    NonNumericCell,
    NonRectangular,
    ZeroRangeColumn,
)


def _default_labels(k):
    return tuple(str(i + 1) for i in range(k))


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """An ``n x m`` table of finite values with row and column labels.

    ``values`` is stored as a read-only array. Integer arrays keep their
    integer dtype so that integer-preserving transforms stay exact; anything
    else is converted to float64.
    """

    values: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        if v.ndim != 2:
            raise NonRectangular(f"expected a 2-d table, got {v.ndim} dimensions")
        if v.dtype.kind not in "iu":
            v = v.astype(np.float64)
            if not np.all(np.isfinite(v)):
                raise NonNumericCell("table contains non-finite values")
        else:
            v = v.astype(np.int64)
        n, m = v.shape
        if n < 1 or m < 1:
            raise NonRectangular(f"empty table of shape {v.shape}")
        v = v.copy()
        v.setflags(write=False)
        rows = tuple(str(x) for x in self.row_labels) or _default_labels(n)
        cols = tuple(str(x) for x in self.col_labels) or _default_labels(m)
        if len(rows) != n or len(cols) != m:
            raise NonRectangular(
                f"label counts ({len(rows)}, {len(cols)}) do not match shape {v.shape}"
            )
        for kind, labels in (("row", rows), ("column", cols)):
            if len(set(labels)) != len(labels):
                dup = next(x for x in labels if labels.count(x) > 1)
                raise DuplicateLabel(f"duplicate {kind} label {dup!r}")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def cell(self, row, col):
        """Value at ``(row, col)``, where either may be an index or a label."""
        i = self.row_labels.index(row) if isinstance(row, str) else row
        j = self.col_labels.index(col) if isinstance(col, str) else col
        return self.values[i, j]

    def with_values(self, values, col_labels=None) -> "DataMatrix":
        return DataMatrix(
            values,
            self.row_labels,
            self.col_labels if col_labels is None else col_labels,
        )

    def to_csv(self, precision=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + list(self.col_labels))
        for label, row in zip(self.row_labels, self.values):
            writer.writerow([label] + [format_number(x, precision) for x in row])
        return buf.getvalue()


def format_number(x, precision=None) -> str:
    """Render a scalar; integers as-is, floats with 17 significant digits
    unless ``precision`` decimal places are requested."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if precision is not None:
        return f"{round(x, precision) + 0.0:.{precision}f}"
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return f"{x:.17g}"


def _parse_cell(text, i, j):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise NonNumericCell(f"cell ({i}, {j}) = {text!r} is not a number") from None
    if not math.isfinite(value):
        raise NonNumericCell(f"cell ({i}, {j}) = {text!r} is not finite")
    return value


def validate_matrix(
    raw: Sequence[Sequence[str]],
    row_labels: Sequence[str] | None = None,
    col_labels: Sequence[str] | None = None,
) -> DataMatrix:
    """Parse a rectangular table of strings into a :class:`DataMatrix`.

    Cells that all parse as integers produce an integer matrix.

    Raises
    ------
    NonRectangular
        If the rows have different lengths or the table is empty.
    NonNumericCell
        If a cell is not a finite number.
    DuplicateLabel
        If row or column labels repeat.
    """
    rows = [list(r) for r in raw]
    if not rows or not rows[0]:
        raise NonRectangular("empty table")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise NonRectangular(
                f"row {i} has {len(r)} cells, expected {width}"
            )
    parsed = [[_parse_cell(c, i, j) for j, c in enumerate(r)] for i, r in enumerate(rows)]
    values = np.array(parsed, dtype=np.float64)
    if all(_is_int_literal(c) for r in rows for c in r):
        values = values.astype(np.int64)
    return DataMatrix(values, tuple(row_labels or ()), tuple(col_labels or ()))


def _is_int_literal(text):
    text = str(text).strip()
    if text[:1] in "+-":
        text = text[1:]
    return text.isdigit()


def read_csv(source, row_labels: bool = True) -> DataMatrix:
    """Read a CSV table whose first row holds column labels.

    ``source`` is a path or a string of CSV text. With ``row_labels`` the
    first column holds row labels.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise NonRectangular("CSV input needs a header row and at least one data row")
    header, body = rows[0], rows[1:]
    if row_labels:
        header = header[1:]
        labels = [r[0] for r in body]
        body = [r[1:] for r in body]
    else:
        labels = None
    if any(len(r) != len(header) for r in body):
        raise NonRectangular("data rows do not match the header width")
    return validate_matrix(body, labels, [h.strip() for h in header])


def validate_weights(w, n: int) -> np.ndarray:
    """Check a mass vector: length ``n``, non-negative, positive total."""
    if w is None:
        return np.ones(n)
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n,):
        raise InputError(f"weight vector has shape {w.shape}, expected ({n},)")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise InputError("weights must be finite and non-negative")
    if not np.any(w > 0):
        raise InputError("at least one weight must be positive")
    return w


def range_normalize(mat: DataMatrix) -> DataMatrix:
    """Map every column linearly onto [0, 1]: ``(x - min) / (max - min)``.

    Raises
    ------
    ZeroRangeColumn
        For a constant column; it is never dropped silently.
    """
    x = np.asarray(mat.values, dtype=np.float64)
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    for j, s in enumerate(span):
        if s == 0:
            raise ZeroRangeColumn(mat.col_labels[j])
    out = (x - lo) / span
    # pin the extremes: (max - min) / (max - min) may round below 1
    out[x == x.max(axis=0)] = 1.0
    return mat.with_values(out)
